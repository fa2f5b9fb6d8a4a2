#include <doctest.h>

#include <cmath>

#include "uniprior/model.hpp"

using namespace uniprior;

TEST_SUITE("measure_core") {

TEST_CASE("sequence parsing and prefix structure") {
  Seq x = Seq::parse("0101");
  CHECK(x.size() == 4);
  CHECK(x[0] == 0);
  CHECK(x[1] == 1);
  CHECK(x.str() == "0101");
  CHECK(Seq::parse("").empty());
  CHECK(Seq::zeros(3).str() == "000");

  Seq p = x.prefix(2);
  CHECK(p.str() == "01");
  CHECK(p.is_prefix_of(x));
  CHECK(x.is_prefix_of(x));
  CHECK_FALSE(x.is_prefix_of(p));
  CHECK(p.concat(0).str() == "010");

  Alphabet binary(2);
  CHECK(x.valid_for(binary));
  Seq bad;
  bad.push_back(3);
  CHECK_FALSE(bad.valid_for(binary));
}

TEST_CASE("bernoulli conditionals, float and exact") {
  BernoulliModel coin(make_rational(1, 4));
  Seq any = Seq::parse("0110");
  CHECK(coin.conditional(any, 1).linear() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(coin.conditional(any, 0).linear() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(coin.has_exact_conditionals());
  CHECK(coin.conditional_exact(any, 1) == make_rational(1, 4));
  CHECK(coin.conditional_exact(any, 0) == make_rational(3, 4));
  CHECK(coin.kind() == ModelKind::kMeasure);
  CHECK(coin.name() == "bernoulli(1/4)");

  CHECK_THROWS_AS(BernoulliModel(make_rational(5, 4)), ValidationError);
  CHECK_THROWS_AS(BernoulliModel(make_rational(-1, 4)), ValidationError);
}

TEST_CASE("joint probability of a fair coin string") {
  BernoulliModel fair(make_rational(1, 2));
  CHECK(joint(fair, Seq::parse("101")).linear() == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(joint(fair, Seq{}).log() == 0.0);
  CHECK(joint_exact(fair, Seq::parse("101")) == make_rational(1, 8));
}

TEST_CASE("joint of a biased coin, exact oracle value") {
  BernoulliModel coin(make_rational(1, 4));
  /* P(10) = 1/4 * 3/4 */
  CHECK(joint_exact(coin, Seq::parse("10")) == make_rational(3, 16));
  CHECK(joint(coin, Seq::parse("10")).linear() == doctest::Approx(3.0 / 16).epsilon(1e-15));
}

TEST_CASE("deterministic coins put zero mass on the other symbol") {
  BernoulliModel ones(Rational(1));
  CHECK(joint(ones, Seq::parse("111")).log() == 0.0);
  CHECK(joint(ones, Seq::parse("110")).is_zero());
  CHECK(joint_exact(ones, Seq::parse("110")) == 0);
}

TEST_CASE("exact joints refuse strings beyond the oracle horizon") {
  BernoulliModel fair(make_rational(1, 2));
  Seq long_x = Seq::zeros(kDefaultOracleHorizon + 1);
  CHECK_THROWS_AS(joint_exact(fair, long_x), ValidationError);
  CHECK_NOTHROW(joint_exact(fair, long_x, kDefaultOracleHorizon + 1));
}

TEST_CASE("vanishing-bias conditionals depend on time only") {
  VanishingPairModel m(3);
  /* P(1 at step t) = t^-3 / 2 */
  CHECK(m.conditional_exact(Seq{}, 1) == make_rational(1, 2));
  CHECK(m.conditional_exact(Seq::parse("0"), 1) == make_rational(1, 16));
  CHECK(m.conditional_exact(Seq::parse("1"), 1) == make_rational(1, 16));
  CHECK(m.conditional_exact(Seq::parse("00"), 1) == make_rational(1, 54));
  /* P(000) = (1/2)(15/16)(53/54) */
  CHECK(joint_exact(m, Seq::parse("000")) ==
        make_rational(1, 2) * make_rational(15, 16) * make_rational(53, 54));
  CHECK_THROWS_AS(VanishingPairModel(0), ValidationError);
  CHECK_THROWS_AS(VanishingPairModel(9), ValidationError);
}

TEST_CASE("validation passes measures on both backends") {
  BernoulliModel coin(make_rational(1, 3));
  auto rf = validate_model(coin, 6, Backend::kFloat);
  CHECK(rf.passed);
  CHECK(rf.worst_deviation <= 1e-12);
  auto re = validate_model(coin, 6, Backend::kExact);
  CHECK(re.passed);
  CHECK(re.worst_deviation == 0.0);
  CHECK(re.histories_checked > 0);

  VanishingPairModel vp(2);
  CHECK(validate_model(vp, 6, Backend::kExact).passed);
}

TEST_CASE("validation flags a broken model") {
  /* leaks mass on purpose: conditionals sum to 1.02 */
  struct Broken final : PredictiveModel {
    Alphabet a{2};
    std::string n = "broken";
    LogProb conditional(const Seq&, int symbol) const override {
      return LogProb::from_linear(symbol == 0 ? 0.51 : 0.51);
    }
    ModelKind kind() const override { return ModelKind::kMeasure; }
    const std::string& name() const override { return n; }
    const Alphabet& alphabet() const override { return a; }
  };
  Broken b;
  auto report = validate_model(b, 3, Backend::kFloat);
  CHECK_FALSE(report.passed);
  CHECK(report.worst_deviation == doctest::Approx(0.02).epsilon(1e-9));
}

TEST_CASE("measures with unit sums pass as semimeasures too") {
  /* a strict semimeasure: loses 1/10 of the mass every step */
  struct Leaky final : PredictiveModel {
    Alphabet a{2};
    std::string n = "leaky";
    LogProb conditional(const Seq&, int) const override { return LogProb::from_linear(0.45); }
    ModelKind kind() const override { return ModelKind::kSemimeasure; }
    const std::string& name() const override { return n; }
    const Alphabet& alphabet() const override { return a; }
  };
  Leaky l;
  CHECK(validate_model(l, 4, Backend::kFloat).passed);
}

}  // TEST_SUITE
