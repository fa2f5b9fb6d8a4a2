#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uniprior/model.hpp"
#include "uniprior/rational.hpp"

namespace uniprior {

struct Component {
  Rational weight;
  std::shared_ptr<const PredictiveModel> model;
};

enum class WeightScheme { kExplicit, kSurrogate, kUniform };

/*
 * Weighted countable-class average xi(x) = sum_i w_i nu_i(x). Weights are
 * exact rationals, positive, summing to at most one; a shortfall just means
 * xi is a semimeasure even when every component is a measure.
 */
class Mixture final : public PredictiveModel {
public:
  explicit Mixture(std::vector<Component> components,
                   WeightScheme scheme = WeightScheme::kExplicit, std::string name = "xi");

  /* w_i = 2^-gamma_length(i+1): earlier models in the enumeration weigh more */
  static Mixture surrogate(std::vector<std::shared_ptr<const PredictiveModel>> models,
                           std::string name = "xi");
  static Mixture uniform(std::vector<std::shared_ptr<const PredictiveModel>> models,
                         std::string name = "xi");

  std::size_t component_count() const { return components_.size(); }
  const Component& component(std::size_t i) const { return components_[i]; }
  std::optional<std::size_t> index_of(std::string_view model_name) const;
  WeightScheme scheme() const { return scheme_; }
  const Rational& weight_sum() const { return weight_sum_; }

  /* PredictiveModel surface so mixtures drop into any diagnostic slot */
  LogProb conditional(const Seq& history, int symbol) const override;
  ModelKind kind() const override;
  const std::string& name() const override { return name_; }
  const Alphabet& alphabet() const override { return alphabet_; }
  bool has_exact_conditionals() const override { return all_exact_; }
  Rational conditional_exact(const Seq& history, int symbol) const override;

private:
  std::vector<Component> components_;
  WeightScheme scheme_;
  std::string name_;
  Alphabet alphabet_;
  Rational weight_sum_;
  std::vector<double> log_weights_;
  bool all_exact_;
  bool all_measures_;
};

/* Elias-gamma weight vector for `count` models; Kraft keeps the sum <= 1. */
std::vector<Rational> surrogate_weights(std::size_t count);

LogProb mix_joint(const Mixture& mix, const Seq& x);
Rational mix_joint_exact(const Mixture& mix, const Seq& x,
                         int oracle_horizon = kDefaultOracleHorizon);
LogProb predictive(const Mixture& mix, const Seq& history, int symbol);

/* One-step continuation mass renormalized to a proper distribution. */
std::vector<double> normalize_predictive(const Mixture& mix, const Seq& history);

/*
 * Incremental walk along a growing history. Per-component log joints are
 * extended one conditional at a time; at every power-of-two step they are
 * recomputed from scratch and snapped, so float drift cannot accumulate
 * silently (the worst drift seen is kept for inspection).
 */
class PosteriorState {
public:
  explicit PosteriorState(const Mixture& mix);

  void advance(int symbol);
  const Seq& history() const { return history_; }
  std::size_t step() const { return history_.size(); }

  LogProb joint() const;                        /* xi(history) */
  LogProb component_joint(std::size_t i) const; /* nu_i(history), weightless */
  LogProb predictive(int symbol) const;
  LogProb posterior_weight(std::size_t i) const; /* w_i nu_i(h) / xi(h) */
  std::vector<double> posterior_weights() const;
  double max_recompute_drift() const { return max_drift_; }
  const Mixture& mixture() const { return *mix_; }

private:
  void recompute();
  const Mixture* mix_;
  Seq history_;
  std::vector<double> log_joint_;  /* per component, natural log */
  double max_drift_ = 0.0;
};

/* Posterior after consuming a whole history in one call. */
PosteriorState posterior_weights(const Mixture& mix, const Seq& history);

struct DominanceReport {
  bool passed = true;
  /* smallest xi(x) / (w_i nu_i(x)) over checked strings and components */
  double min_slack = std::numeric_limits<double>::infinity();
  Seq worst_string;
  std::string worst_component;
  std::size_t checks = 0;
  std::vector<std::string> component_names;
  std::vector<double> component_min_slack;
};

/*
 * Exhaustively verifies xi(x) >= w_i nu_i(x) on every string up to the
 * horizon. The `claims` overload checks a foreign weight assignment against
 * an already-built xi, which is how a rigged mixture is caught.
 */
DominanceReport dominance_check(const Mixture& mix, int horizon,
                                Backend backend = Backend::kFloat);
DominanceReport dominance_check_against(const Mixture& xi, std::span<const Component> claims,
                                        int horizon, Backend backend = Backend::kFloat);

}  // namespace uniprior
