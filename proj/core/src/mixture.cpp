#include "uniprior/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "uniprior/coding.hpp"

namespace uniprior {

Mixture::Mixture(std::vector<Component> components, WeightScheme scheme, std::string name)
    : components_(std::move(components)),
      scheme_(scheme),
      name_(std::move(name)),
      alphabet_(2),
      weight_sum_(0) {
  if (components_.empty()) throw ConfigError("mixture needs at least one component");
  if (components_.size() > (1u << 16)) throw ConfigError("mixture class too large");
  std::set<std::string> names;
  alphabet_ = components_.front().model->alphabet();
  all_exact_ = true;
  all_measures_ = true;
  for (const auto& c : components_) {
    if (!c.model) throw ConfigError("mixture component without a model");
    if (c.weight <= 0) throw ConfigError("mixture weights must be positive");
    if (!(c.model->alphabet() == alphabet_))
      throw ConfigError("mixture components disagree on the alphabet");
    if (!names.insert(c.model->name()).second)
      throw ConfigError("duplicate component name '" + c.model->name() + "'");
    weight_sum_ += c.weight;
    log_weights_.push_back(to_log_prob(c.weight).log());
    all_exact_ = all_exact_ && c.model->has_exact_conditionals();
    all_measures_ = all_measures_ && c.model->kind() == ModelKind::kMeasure;
  }
  if (weight_sum_ > 1) throw ConfigError("mixture weights sum above one");
}

std::vector<Rational> surrogate_weights(std::size_t count) {
  if (count == 0) throw ConfigError("surrogate weights need at least one model");
  if (count > (1u << 16)) throw ConfigError("surrogate weights: class too large");
  std::vector<Rational> w;
  w.reserve(count);
  for (std::size_t i = 0; i < count; ++i) w.push_back(dyadic(elias_gamma_length(i + 1)));
  return w;
}

Mixture Mixture::surrogate(std::vector<std::shared_ptr<const PredictiveModel>> models,
                           std::string name) {
  auto w = surrogate_weights(models.size());
  std::vector<Component> comps;
  comps.reserve(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) comps.push_back({w[i], std::move(models[i])});
  return Mixture(std::move(comps), WeightScheme::kSurrogate, std::move(name));
}

Mixture Mixture::uniform(std::vector<std::shared_ptr<const PredictiveModel>> models,
                         std::string name) {
  if (models.empty()) throw ConfigError("mixture needs at least one component");
  Rational w = Rational(1) / Rational(static_cast<long long>(models.size()));
  std::vector<Component> comps;
  comps.reserve(models.size());
  for (auto& m : models) comps.push_back({w, std::move(m)});
  return Mixture(std::move(comps), WeightScheme::kUniform, std::move(name));
}

std::optional<std::size_t> Mixture::index_of(std::string_view model_name) const {
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (components_[i].model->name() == model_name) return i;
  return std::nullopt;
}

ModelKind Mixture::kind() const {
  return (all_measures_ && weight_sum_ == 1) ? ModelKind::kMeasure : ModelKind::kSemimeasure;
}

LogProb mix_joint(const Mixture& mix, const Seq& x) {
  if (!x.valid_for(mix.alphabet()))
    throw ValidationError("sequence contains symbols outside the mixture alphabet");
  std::vector<double> terms;
  terms.reserve(mix.component_count());
  for (std::size_t i = 0; i < mix.component_count(); ++i) {
    const auto& c = mix.component(i);
    LogProb v = joint(*c.model, x);
    if (v.is_zero()) continue;
    terms.push_back(to_log_prob(c.weight).log() + v.log());
  }
  if (terms.empty()) return LogProb::zero();
  return LogProb::from_log(log_sum_exp(terms));
}

Rational mix_joint_exact(const Mixture& mix, const Seq& x, int oracle_horizon) {
  Rational acc(0);
  for (std::size_t i = 0; i < mix.component_count(); ++i) {
    const auto& c = mix.component(i);
    acc += c.weight * joint_exact(*c.model, x, oracle_horizon);
  }
  return acc;
}

LogProb Mixture::conditional(const Seq& history, int symbol) const {
  LogProb denom = mix_joint(*this, history);
  if (denom.is_zero())
    throw UndefinedConditionalError("mixture conditional on a zero-probability history");
  return mix_joint(*this, history.concat(symbol)) / denom;
}

Rational Mixture::conditional_exact(const Seq& history, int symbol) const {
  if (!all_exact_) throw UnsupportedBackendError("mixture has float-only components");
  Rational denom = mix_joint_exact(*this, history, kDefaultOracleHorizon + 1);
  if (denom == 0)
    throw UndefinedConditionalError("mixture conditional on a zero-probability history");
  return mix_joint_exact(*this, history.concat(symbol), kDefaultOracleHorizon + 1) / denom;
}

LogProb predictive(const Mixture& mix, const Seq& history, int symbol) {
  return mix.conditional(history, symbol);
}

std::vector<double> normalize_predictive(const Mixture& mix, const Seq& history) {
  const int a = mix.alphabet().size();
  std::vector<LogProb> mass(a);
  LogProb total = LogProb::zero();
  LogProb denom = mix_joint(mix, history);
  if (denom.is_zero())
    throw UndefinedConditionalError("normalize_predictive on a zero-probability history");
  for (int s = 0; s < a; ++s) {
    mass[s] = mix_joint(mix, history.concat(s));
    total += mass[s];
  }
  if (total.is_zero())
    throw UndefinedNormalizationError("normalize_predictive: no continuation has mass");
  std::vector<double> out(a);
  for (int s = 0; s < a; ++s) out[s] = mass[s].is_zero() ? 0.0 : (mass[s] / total).linear();
  return out;
}

PosteriorState::PosteriorState(const Mixture& mix)
    : mix_(&mix), log_joint_(mix.component_count(), 0.0) {}

void PosteriorState::advance(int symbol) {
  if (symbol < 0 || symbol >= mix_->alphabet().size())
    throw ValidationError("PosteriorState: symbol out of alphabet");
  for (std::size_t i = 0; i < log_joint_.size(); ++i) {
    const auto& c = mix_->component(i);
    if (std::isinf(log_joint_[i])) continue;  /* dead components stay dead */
    log_joint_[i] += c.model->conditional(history_, symbol).log();
  }
  history_.push_back(symbol);
  std::size_t t = history_.size();
  if ((t & (t - 1)) == 0) recompute();
}

void PosteriorState::recompute() {
  for (std::size_t i = 0; i < log_joint_.size(); ++i) {
    double fresh = uniprior::joint(*mix_->component(i).model, history_).log();
    if (!std::isinf(fresh) && !std::isinf(log_joint_[i]))
      max_drift_ = std::max(max_drift_, std::abs(fresh - log_joint_[i]));
    log_joint_[i] = fresh;
  }
}

LogProb PosteriorState::joint() const {
  std::vector<double> terms;
  terms.reserve(log_joint_.size());
  for (std::size_t i = 0; i < log_joint_.size(); ++i)
    if (!std::isinf(log_joint_[i]))
      terms.push_back(to_log_prob(mix_->component(i).weight).log() + log_joint_[i]);
  if (terms.empty()) return LogProb::zero();
  return LogProb::from_log(log_sum_exp(terms));
}

LogProb PosteriorState::component_joint(std::size_t i) const {
  return LogProb::from_log(log_joint_[i]);
}

LogProb PosteriorState::predictive(int symbol) const {
  LogProb denom = joint();
  if (denom.is_zero())
    throw UndefinedConditionalError("predictive on a zero-probability history");
  std::vector<double> terms;
  terms.reserve(log_joint_.size());
  for (std::size_t i = 0; i < log_joint_.size(); ++i) {
    if (std::isinf(log_joint_[i])) continue;
    LogProb step = mix_->component(i).model->conditional(history_, symbol);
    if (step.is_zero()) continue;
    terms.push_back(to_log_prob(mix_->component(i).weight).log() + log_joint_[i] + step.log());
  }
  if (terms.empty()) return LogProb::zero();
  return LogProb::from_log(log_sum_exp(terms)) / denom;
}

LogProb PosteriorState::posterior_weight(std::size_t i) const {
  LogProb denom = joint();
  if (denom.is_zero())
    throw UndefinedConditionalError("posterior weights on a zero-probability history");
  if (std::isinf(log_joint_[i])) return LogProb::zero();
  return LogProb::from_log(to_log_prob(mix_->component(i).weight).log() + log_joint_[i]) / denom;
}

std::vector<double> PosteriorState::posterior_weights() const {
  std::vector<double> out(log_joint_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = posterior_weight(i).linear();
  return out;
}

PosteriorState posterior_weights(const Mixture& mix, const Seq& history) {
  PosteriorState state(mix);
  for (std::size_t t = 0; t < history.size(); ++t) state.advance(history[t]);
  return state;
}

static DominanceReport dominance_impl(const Mixture& xi, std::span<const Component> claims,
                                      int horizon, Backend backend) {
  if (horizon < 0) throw ValidationError("dominance horizon must be nonnegative");
  if (backend == Backend::kExact && horizon > kDefaultOracleHorizon)
    throw ValidationError("dominance horizon above the exact-oracle limit");
  DominanceReport report;
  for (const auto& c : claims) report.component_names.push_back(c.model->name());
  report.component_min_slack.assign(claims.size(), std::numeric_limits<double>::infinity());
  const int a = xi.alphabet().size();
  Seq x;

  auto note = [&](std::size_t ci, double slack) {
    auto& c = claims[ci];
    if (slack < report.component_min_slack[ci]) report.component_min_slack[ci] = slack;
    if (slack < report.min_slack) {
      report.min_slack = slack;
      report.worst_string = x;
      report.worst_component = c.model->name();
    }
  };

  auto visit = [&](auto&& self, int depth) -> void {
    if (backend == Backend::kExact) {
      Rational xv = mix_joint_exact(xi, x);
      for (std::size_t ci = 0; ci < claims.size(); ++ci) {
        Rational term = claims[ci].weight * joint_exact(*claims[ci].model, x);
        report.checks++;
        if (xv < term) report.passed = false;
        if (term > 0) note(ci, to_double(Rational(xv / term)));
      }
    } else {
      LogProb xv = mix_joint(xi, x);
      for (std::size_t ci = 0; ci < claims.size(); ++ci) {
        LogProb nu = joint(*claims[ci].model, x);
        report.checks++;
        if (nu.is_zero()) continue;
        double log_slack = xv.log() - (to_log_prob(claims[ci].weight).log() + nu.log());
        if (log_slack < -1e-9) report.passed = false;  /* float path gets epsilon room */
        note(ci, std::exp(log_slack));
      }
    }
    if (depth == horizon) return;
    for (int s = 0; s < a; ++s) {
      x.push_back(s);
      self(self, depth + 1);
      x.pop_back();
    }
  };
  visit(visit, 0);
  return report;
}

DominanceReport dominance_check(const Mixture& mix, int horizon, Backend backend) {
  std::vector<Component> own;
  own.reserve(mix.component_count());
  for (std::size_t i = 0; i < mix.component_count(); ++i) own.push_back(mix.component(i));
  return dominance_impl(mix, own, horizon, backend);
}

DominanceReport dominance_check_against(const Mixture& xi, std::span<const Component> claims,
                                        int horizon, Backend backend) {
  return dominance_impl(xi, claims, horizon, backend);
}

}  // namespace uniprior
