#include "uniprior/param_class.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace uniprior {

ParamClass::ParamClass(ClassTag tag, std::vector<Rational> thetas)
    : tag_(tag), thetas_(std::move(thetas)) {
  if (thetas_.empty()) throw ValidationError("parameter class must be nonempty");
  std::set<Rational> seen;
  for (const auto& t : thetas_) {
    if (!is_probability(t)) throw ValidationError("class bias outside [0,1]");
    if (!seen.insert(t).second) throw ValidationError("duplicate bias in parameter class");
  }
}

static std::vector<Rational> farey(int max_denominator) {
  if (max_denominator < 1 || max_denominator > 64)
    throw ValidationError("dense class denominator bound must be in [1, 64]");
  std::vector<Rational> out;
  for (int q = 1; q <= max_denominator; ++q)
    for (int p = 0; p <= q; ++p)
      if (std::gcd(p, q) == 1) out.push_back(make_rational(p, q));
  return out;  /* (denominator, numerator) order: 0, 1, 1/2, 1/3, 2/3, 1/4, ... */
}

ParamClass ParamClass::dense(int max_denominator) {
  return ParamClass(ClassTag::kDense, farey(max_denominator));
}

ParamClass ParamClass::gapped(const Rational& theta0, const Rational& theta1) {
  if (!(Rational(0) < theta0 && theta0 < theta1 && theta1 < Rational(1)))
    throw ValidationError("gapped class needs 0 < theta0 < theta1 < 1");
  ParamClass c(ClassTag::kGapped, {theta0, theta1});
  c.gap_theta0_ = theta0;
  c.gap_theta1_ = theta1;
  c.has_gap_ = true;
  return c;
}

ParamClass ParamClass::gapped_dense(int max_denominator, const Rational& theta0,
                                    const Rational& theta1) {
  if (!(Rational(0) < theta0 && theta0 < theta1 && theta1 < Rational(1)))
    throw ValidationError("gapped class needs 0 < theta0 < theta1 < 1");
  std::vector<Rational> atoms;
  for (const auto& t : farey(max_denominator))
    if (t <= theta0 || t >= theta1) atoms.push_back(t);
  for (const auto& endpoint : {theta0, theta1})
    if (std::find(atoms.begin(), atoms.end(), endpoint) == atoms.end())
      atoms.push_back(endpoint);
  ParamClass c(ClassTag::kGapped, std::move(atoms));
  c.gap_theta0_ = theta0;
  c.gap_theta1_ = theta1;
  c.has_gap_ = true;
  /* the defining invariant: nothing of the class lies strictly inside the gap */
  for (const auto& t : c.thetas_)
    if (t > theta0 && t < theta1) throw ValidationError("gapped class has an interior bias");
  return c;
}

ParamClass ParamClass::custom(std::vector<Rational> thetas) {
  return ParamClass(ClassTag::kCustom, std::move(thetas));
}

const Rational& ParamClass::theta0() const {
  if (!has_gap_) throw ValidationError("class has no gap endpoints");
  return gap_theta0_;
}

const Rational& ParamClass::theta1() const {
  if (!has_gap_) throw ValidationError("class has no gap endpoints");
  return gap_theta1_;
}

bool ParamClass::contains(const Rational& theta) const {
  return std::find(thetas_.begin(), thetas_.end(), theta) != thetas_.end();
}

double ParamClass::mesh_spacing() const {
  std::vector<Rational> sorted = thetas_;
  std::sort(sorted.begin(), sorted.end());
  Rational widest(0);
  for (std::size_t i = 1; i < sorted.size(); ++i)
    widest = std::max(widest, Rational(sorted[i] - sorted[i - 1]));
  return to_double(widest);
}

std::vector<std::shared_ptr<const PredictiveModel>> ParamClass::bernoulli_models() const {
  std::vector<std::shared_ptr<const PredictiveModel>> models;
  models.reserve(thetas_.size());
  for (const auto& t : thetas_) models.push_back(std::make_shared<BernoulliModel>(t));
  return models;
}

}  // namespace uniprior
