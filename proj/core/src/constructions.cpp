#include "uniprior/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "joint_walker.hpp"
#include "uniprior/rng.hpp"

namespace uniprior {

Seq sample_sequence(const PredictiveModel& model, std::size_t n, std::uint64_t seed,
                    std::uint64_t stream) {
  if (model.kind() != ModelKind::kMeasure)
    throw ValidationError("sample_sequence: refusing to sample from a semimeasure");
  RandomStream rng(seed, stream);
  detail::JointWalker walker(model);
  const int a = model.alphabet().size();
  Seq x;
  std::vector<double> probs(static_cast<std::size_t>(a));
  for (std::size_t t = 0; t < n; ++t) {
    for (int s = 0; s < a; ++s)
      probs[static_cast<std::size_t>(s)] = std::exp(walker.log_conditional(x, s));
    int sym = rng.next_symbol(probs);
    walker.advance(x, sym);
    x.push_back(sym);
  }
  return x;
}

GapSequenceBuilder::GapSequenceBuilder(const Rational& theta0, const Rational& theta1) {
  if (!(Rational(0) < theta0 && theta0 < theta1 && theta1 < Rational(1)))
    throw ValidationError("greedy gap sequence needs 0 < theta0 < theta1 < 1");
  /* log of integer cross products; symmetric pairs then tie exactly at S=0 */
  auto cross_log = [](const Rational& num, const Rational& den) {
    double a = to_double(boost::multiprecision::numerator(num) *
                         boost::multiprecision::denominator(den));
    double b = to_double(boost::multiprecision::denominator(num) *
                         boost::multiprecision::numerator(den));
    return std::log(a) - std::log(b);
  };
  inc1_ = cross_log(theta1, theta0);                            /* log(theta1/theta0) > 0 */
  inc0_ = cross_log(Rational(1) - theta1, Rational(1) - theta0); /* < 0 */
}

int GapSequenceBuilder::step() {
  double if_one = std::abs(s_ + inc1_);
  double if_zero = std::abs(s_ + inc0_);
  int sym = if_one < if_zero ? 1 : 0;  /* ties go to 0 */
  s_ += sym == 1 ? inc1_ : inc0_;
  seq_.push_back(sym);
  return sym;
}

Seq greedy_gap_sequence(const Rational& theta0, const Rational& theta1, std::size_t n) {
  GapSequenceBuilder b(theta0, theta1);
  for (std::size_t t = 0; t < n; ++t) b.step();
  return b.sequence();
}

Seq SequenceSource::build(std::size_t n) const {
  switch (kind) {
    case Kind::kSampled:
      if (!model) throw ValidationError("sampled source without a model");
      return sample_sequence(*model, n, seed, stream);
    case Kind::kGreedyGap:
      return greedy_gap_sequence(theta0, theta1, n);
    case Kind::kAllZeros:
      return Seq::zeros(n);
    case Kind::kLiteral:
      if (literal.size() < n) throw ValidationError("literal source shorter than n");
      return literal.prefix(n);
  }
  throw ValidationError("unknown sequence source");
}

namespace {

Mixture class_mixture(const ParamClass& cls, WeightScheme scheme) {
  auto models = cls.bernoulli_models();
  return scheme == WeightScheme::kSurrogate ? Mixture::surrogate(std::move(models))
                                            : Mixture::uniform(std::move(models));
}

/*
 * One pass along x: predictive-of-1 trace plus deficiency traces against up
 * to two reference models, all O(n * components).
 */
struct WalkOut {
  std::vector<double> predictive1;
  DeficiencyTrace def_a, def_b;
};

WalkOut walk_mixture(const Mixture& mix, const Seq& x, const PredictiveModel* ref_a,
                     const PredictiveModel* ref_b) {
  WalkOut out;
  out.predictive1.reserve(x.size());
  PosteriorState state(mix);
  detail::JointWalker wa(ref_a ? *ref_a : mix), wb(ref_b ? *ref_b : mix);

  auto record = [&](DeficiencyTrace& tr, detail::JointWalker& w, const PredictiveModel* ref) {
    if (!ref || tr.truncated) return;
    double d = state.joint().log() - w.log_joint();
    double sup = tr.running_sup.empty() ? d : std::max(tr.running_sup.back(), d);
    tr.log_ratio.push_back(d);
    tr.running_sup.push_back(sup);
  };
  record(out.def_a, wa, ref_a);
  record(out.def_b, wb, ref_b);

  for (std::size_t t = 0; t < x.size(); ++t) {
    out.predictive1.push_back(state.predictive(1).linear());
    const Seq& h = state.history();
    auto mu_step = [&](DeficiencyTrace& tr, detail::JointWalker& w, const PredictiveModel* ref) {
      if (!ref || tr.truncated) return;
      double lc = w.log_conditional(h, x[t]);
      if (std::isinf(lc) && lc < 0) {
        tr.truncated = true;
        tr.truncated_at = t + 1;
        return;
      }
      w.advance(h, x[t]);
    };
    mu_step(out.def_a, wa, ref_a);
    mu_step(out.def_b, wb, ref_b);
    state.advance(x[t]);
    record(out.def_a, wa, ref_a);
    record(out.def_b, wb, ref_b);
  }
  return out;
}

double window_start(std::size_t n) { return static_cast<double>(std::max<std::size_t>(n / 10, 1)); }

}  // namespace

GapReport gap_experiment(const ParamClass& cls, WeightScheme scheme, std::size_t n) {
  if (cls.tag() != ClassTag::kGapped)
    throw ValidationError("gap_experiment needs a gapped class");
  if (n < 10) throw ValidationError("gap_experiment horizon too short");

  GapReport report;
  report.theta0 = cls.theta0();
  report.theta1 = cls.theta1();
  report.n = n;

  GapSequenceBuilder builder(report.theta0, report.theta1);
  std::size_t ones = 0;
  for (std::size_t t = 0; t < n; ++t) {
    ones += static_cast<std::size_t>(builder.step());
    report.s_sup = std::max(report.s_sup, std::abs(builder.state()));
  }
  report.sequence = builder.sequence();
  report.s_bound = builder.bound();
  report.balance_freq = builder.balance_frequency();
  report.ones_freq = static_cast<double>(ones) / static_cast<double>(n);

  Mixture mix = class_mixture(cls, scheme);
  BernoulliModel mu0(report.theta0), mu1(report.theta1);
  WalkOut walk = walk_mixture(mix, report.sequence, &mu0, &mu1);
  report.predictive1 = std::move(walk.predictive1);
  report.def_theta0 = std::move(walk.def_a);
  report.def_theta1 = std::move(walk.def_b);

  const std::size_t start = static_cast<std::size_t>(window_start(n));
  report.pred_late_min = std::numeric_limits<double>::infinity();
  report.pred_late_max = -std::numeric_limits<double>::infinity();
  report.margin_theta0 = std::numeric_limits<double>::infinity();
  report.margin_theta1 = std::numeric_limits<double>::infinity();
  double t0 = to_double(report.theta0), t1 = to_double(report.theta1);
  for (std::size_t t = start; t <= n; ++t) {
    double p = report.predictive1[t - 1];
    report.pred_late_min = std::min(report.pred_late_min, p);
    report.pred_late_max = std::max(report.pred_late_max, p);
    report.margin_theta0 = std::min(report.margin_theta0, std::abs(p - t0));
    report.margin_theta1 = std::min(report.margin_theta1, std::abs(p - t1));
  }
  return report;
}

DenseReport dense_experiment(const ParamClass& cls, WeightScheme scheme,
                             const Rational& theta_true, std::size_t n, std::size_t paths,
                             std::uint64_t seed) {
  if (n < 10) throw ValidationError("dense_experiment horizon too short");
  if (paths == 0) throw ValidationError("dense_experiment needs at least one path");
  if (!is_probability(theta_true)) throw ValidationError("theta_true outside [0,1]");

  DenseReport report;
  report.theta_true = theta_true;
  report.theta_in_class = cls.contains(theta_true);
  report.n = n;
  report.paths = paths;
  report.mesh_spacing = cls.mesh_spacing();

  /* closest distinct atom: the competitor a dense class always supplies */
  bool found = false;
  for (const auto& t : cls.thetas()) {
    if (t == theta_true) continue;
    if (!found || abs(t - theta_true) < abs(report.theta_nearest - theta_true)) {
      report.theta_nearest = t;
      found = true;
    }
  }
  if (!found) report.theta_nearest = theta_true;

  Mixture mix = class_mixture(cls, scheme);
  BernoulliModel mu_true(theta_true);
  BernoulliModel mu_near(report.theta_nearest, "nearest(" + format_rational(report.theta_nearest) + ")");
  const std::size_t start = static_cast<std::size_t>(window_start(n));
  const double tt = to_double(theta_true);

  for (std::size_t p = 0; p < paths; ++p) {
    Seq x = sample_sequence(mu_true, n, seed, p);
    WalkOut walk = walk_mixture(mix, x, &mu_true, p == 0 ? &mu_near : nullptr);
    double dev = 0.0;
    for (std::size_t t = start; t <= n; ++t) dev += std::abs(walk.predictive1[t - 1] - tt);
    dev /= static_cast<double>(n - start + 1);
    report.last_decade_dev.push_back(dev);
    report.deficiency_sup.push_back(walk.def_a.sup());
    if (p == 0) {
      report.predictive1 = std::move(walk.predictive1);
      report.def_true = std::move(walk.def_a);
      report.def_nearest = std::move(walk.def_b);
    }
  }
  double mean = 0.0;
  for (double v : report.last_decade_dev) mean += v;
  report.mean_last_decade_dev = mean / static_cast<double>(paths);
  return report;
}

DivergenceReport divergence_example(std::size_t n) {
  if (n < 10) throw ValidationError("divergence_example horizon too short");
  DivergenceReport report;
  report.n = n;

  auto mu = std::make_shared<VanishingPairModel>(3);
  auto nu = std::make_shared<VanishingPairModel>(2);
  Mixture mix({{make_rational(1, 2), mu}, {make_rational(1, 2), nu}});

  PosteriorState state(mix);
  detail::JointWalker mu_walk(*mu);
  report.ratio.reserve(n);
  double sup = -std::numeric_limits<double>::infinity();
  auto record_def = [&] {
    double d = state.joint().log() - mu_walk.log_joint();
    sup = std::max(sup, d);
    report.def_mu.log_ratio.push_back(d);
    report.def_mu.running_sup.push_back(sup);
  };
  record_def();
  for (std::size_t t = 0; t < n; ++t) {
    const Seq& h = state.history();
    double num = state.predictive(1).linear();
    double den = mu->conditional(h, 1).linear();
    report.ratio.push_back(num / den);
    mu_walk.advance(h, 0);
    state.advance(0);
    record_def();
  }

  if (n >= 10) {
    report.growth = report.ratio[n - 1] / report.ratio[n / 10 - 1];
    if (n >= 10000) {
      report.growth_checked = true;
      report.growth_ok = report.growth >= 8.0 && report.growth <= 12.0;
    }
  }
  return report;
}

}  // namespace uniprior
