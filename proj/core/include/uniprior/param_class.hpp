#pragma once

#include <memory>
#include <vector>

#include "uniprior/model.hpp"
#include "uniprior/rational.hpp"

namespace uniprior {

enum class ClassTag { kDense, kGapped, kCustom };

/*
 * Finite set of coin biases indexing a Bernoulli family. "Dense" enumerates
 * every reduced p/q with q <= Q in order of increasing denominator, so
 * simpler biases come first and earn larger surrogate weights; the mesh gets
 * arbitrarily fine as Q grows but any fixed Q leaves gaps of width up to 1/Q
 * (a truncation the experiment reports call out). "Gapped" classes must keep
 * the open interval between their two endpoints empty.
 */
class ParamClass {
public:
  static ParamClass dense(int max_denominator);
  static ParamClass gapped(const Rational& theta0, const Rational& theta1);
  /* dense truncation with the open interval (theta0, theta1) removed */
  static ParamClass gapped_dense(int max_denominator, const Rational& theta0,
                                 const Rational& theta1);
  static ParamClass custom(std::vector<Rational> thetas);

  ClassTag tag() const { return tag_; }
  const std::vector<Rational>& thetas() const { return thetas_; }
  std::size_t size() const { return thetas_.size(); }
  const Rational& theta0() const;
  const Rational& theta1() const;
  bool contains(const Rational& theta) const;

  /* dense truncation caveat, quantified: widest gap between adjacent biases */
  double mesh_spacing() const;

  std::vector<std::shared_ptr<const PredictiveModel>> bernoulli_models() const;

private:
  ParamClass(ClassTag tag, std::vector<Rational> thetas);
  ClassTag tag_;
  std::vector<Rational> thetas_;
  Rational gap_theta0_, gap_theta1_;
  bool has_gap_ = false;
};

}  // namespace uniprior
