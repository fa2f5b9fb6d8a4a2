#include "uniprior/model.hpp"

#include <cmath>

namespace uniprior {

Rational PredictiveModel::conditional_exact(const Seq&, int) const {
  throw UnsupportedBackendError("model '" + name() + "' has no exact conditionals");
}

static void check_symbols(const PredictiveModel& model, const Seq& x) {
  if (!x.valid_for(model.alphabet()))
    throw ValidationError("sequence contains symbols outside the model alphabet");
}

LogProb joint(const PredictiveModel& model, const Seq& x) {
  check_symbols(model, x);
  LogProb acc = LogProb::one();
  Seq prefix;
  for (std::size_t t = 0; t < x.size(); ++t) {
    acc *= model.conditional(prefix, x[t]);
    if (acc.is_zero()) return LogProb::zero();
    prefix.push_back(x[t]);
  }
  return acc;
}

Rational joint_exact(const PredictiveModel& model, const Seq& x, int oracle_horizon) {
  check_symbols(model, x);
  if (static_cast<int>(x.size()) > oracle_horizon)
    throw ValidationError("joint_exact: string longer than the oracle horizon");
  if (!model.has_exact_conditionals())
    throw UnsupportedBackendError("joint_exact: model '" + model.name() + "' is float-only");
  Rational acc(1);
  Seq prefix;
  for (std::size_t t = 0; t < x.size(); ++t) {
    acc *= model.conditional_exact(prefix, x[t]);
    if (acc == 0) return acc;
    prefix.push_back(x[t]);
  }
  return acc;
}

BernoulliModel::BernoulliModel(Rational theta, std::string name)
    : theta_(std::move(theta)), name_(std::move(name)) {
  if (!is_probability(theta_)) throw ValidationError("Bernoulli bias must lie in [0,1]");
  if (name_.empty()) name_ = "bernoulli(" + format_rational(theta_) + ")";
  log_one_ = to_log_prob(theta_);
  log_zero_ = to_log_prob(Rational(1) - theta_);
}

LogProb BernoulliModel::conditional(const Seq&, int symbol) const {
  if (symbol < 0 || symbol > 1) throw ValidationError("Bernoulli: symbol out of alphabet");
  return symbol == 1 ? log_one_ : log_zero_;
}

Rational BernoulliModel::conditional_exact(const Seq&, int symbol) const {
  if (symbol < 0 || symbol > 1) throw ValidationError("Bernoulli: symbol out of alphabet");
  return symbol == 1 ? theta_ : Rational(1) - theta_;
}

VanishingPairModel::VanishingPairModel(int exponent, std::string name)
    : exponent_(exponent), name_(std::move(name)) {
  if (exponent < 1 || exponent > 8) throw ValidationError("vanishing exponent must be in [1,8]");
  if (name_.empty()) name_ = "vanishing(" + std::to_string(exponent) + ")";
}

LogProb VanishingPairModel::conditional(const Seq& history, int symbol) const {
  return to_log_prob(conditional_exact(history, symbol));
}

Rational VanishingPairModel::conditional_exact(const Seq& history, int symbol) const {
  if (symbol < 0 || symbol > 1) throw ValidationError("VanishingPair: symbol out of alphabet");
  /* step index t counts from 1 */
  Rational tpow = rational_pow(Rational(static_cast<long long>(history.size()) + 1),
                               static_cast<unsigned>(exponent_));
  Rational p1 = Rational(1) / (2 * tpow);
  return symbol == 1 ? p1 : Rational(1) - p1;
}

ValidationReport validate_model(const PredictiveModel& model, int horizon, Backend backend) {
  if (horizon < 0 || horizon > 24) throw ValidationError("validate_model: horizon out of range");
  if (backend == Backend::kExact && !model.has_exact_conditionals())
    throw UnsupportedBackendError("validate_model: exact backend on a float-only model");

  constexpr double kTol = 1e-12;
  ValidationReport report;
  const int a = model.alphabet().size();
  Seq h;

  auto dfs = [&](auto&& self, int depth) -> void {
    report.histories_checked++;
    double sum = 0.0;
    bool exact_ok = true;
    if (backend == Backend::kExact) {
      Rational rsum(0);
      for (int s = 0; s < a; ++s) rsum += model.conditional_exact(h, s);
      if (model.kind() == ModelKind::kMeasure ? (rsum != 1) : (rsum > 1)) exact_ok = false;
      sum = to_double(rsum);
    } else {
      for (int s = 0; s < a; ++s) sum += model.conditional(h, s).linear();
    }
    double dev = model.kind() == ModelKind::kMeasure ? std::abs(sum - 1.0)
                                                     : std::max(sum - 1.0, 0.0);
    bool ok = backend == Backend::kExact ? exact_ok : dev <= kTol;
    if (dev > report.worst_deviation || (!ok && report.passed)) {
      report.worst_deviation = std::max(dev, report.worst_deviation);
      report.worst_history = h;
    }
    if (!ok) report.passed = false;

    if (depth == horizon) return;
    for (int s = 0; s < a; ++s) {
      if (model.conditional(h, s).is_zero()) continue;  /* unreachable branch */
      h.push_back(s);
      self(self, depth + 1);
      h.pop_back();
    }
  };
  dfs(dfs, 0);
  return report;
}

}  // namespace uniprior
