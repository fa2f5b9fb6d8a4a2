#pragma once

#include <memory>
#include <string>

#include "uniprior/alphabet.hpp"
#include "uniprior/log_prob.hpp"
#include "uniprior/rational.hpp"

namespace uniprior {

enum class ModelKind { kMeasure, kSemimeasure };
enum class Backend { kFloat, kExact };

/* Exact ops refuse strings longer than this unless told otherwise. */
inline constexpr int kDefaultOracleHorizon = 20;

/*
 * A model is a chain of one-step predictive distributions. Semimeasures may
 * leak mass (conditionals summing below one); measures must not. Exact
 * conditionals are optional and power the rational oracle paths.
 */
class PredictiveModel {
public:
  virtual ~PredictiveModel() = default;

  virtual LogProb conditional(const Seq& history, int symbol) const = 0;
  virtual ModelKind kind() const = 0;
  virtual const std::string& name() const = 0;
  virtual const Alphabet& alphabet() const = 0;

  virtual bool has_exact_conditionals() const { return false; }
  virtual Rational conditional_exact(const Seq& history, int symbol) const;
};

/* Product of conditionals along x; joint(epsilon) = 1. */
LogProb joint(const PredictiveModel& model, const Seq& x);
Rational joint_exact(const PredictiveModel& model, const Seq& x,
                     int oracle_horizon = kDefaultOracleHorizon);

/* Coin with exact rational bias. */
class BernoulliModel final : public PredictiveModel {
public:
  explicit BernoulliModel(Rational theta, std::string name = "");

  LogProb conditional(const Seq& history, int symbol) const override;
  ModelKind kind() const override { return ModelKind::kMeasure; }
  const std::string& name() const override { return name_; }
  const Alphabet& alphabet() const override { return alphabet_; }
  bool has_exact_conditionals() const override { return true; }
  Rational conditional_exact(const Seq& history, int symbol) const override;

  const Rational& theta() const { return theta_; }

private:
  Rational theta_;
  std::string name_;
  Alphabet alphabet_{2};
  LogProb log_one_, log_zero_;
};

/*
 * Binary measure whose chance of a 1 at step t is t^-exponent / 2. With
 * exponent >= 2 the all-zero tail keeps positive mass, so 000... is a
 * typical sequence; two different exponents give mixtures whose predictive
 * ratio against the true component grows without bound along it.
 */
class VanishingPairModel final : public PredictiveModel {
public:
  explicit VanishingPairModel(int exponent, std::string name = "");

  LogProb conditional(const Seq& history, int symbol) const override;
  ModelKind kind() const override { return ModelKind::kMeasure; }
  const std::string& name() const override { return name_; }
  const Alphabet& alphabet() const override { return alphabet_; }
  bool has_exact_conditionals() const override { return true; }
  Rational conditional_exact(const Seq& history, int symbol) const override;

  int exponent() const { return exponent_; }

private:
  int exponent_;
  std::string name_;
  Alphabet alphabet_{2};
};

struct ValidationReport {
  bool passed = true;
  double worst_deviation = 0.0;  /* measure: |sum-1|; semimeasure: max(sum-1, 0) */
  Seq worst_history;
  std::size_t histories_checked = 0;
};

/*
 * Walks every positive-probability history up to the horizon and checks the
 * one-step sums: == 1 for measures, <= 1 for semimeasures (tolerance 1e-12,
 * exact backend checks exactly when the model supports it).
 */
ValidationReport validate_model(const PredictiveModel& model, int horizon,
                                Backend backend = Backend::kFloat);

}  // namespace uniprior
