#include <doctest.h>

#include <cmath>
#include <memory>

#include "uniprior/diagnostics.hpp"
#include "uniprior/param_class.hpp"

using namespace uniprior;

namespace {

std::shared_ptr<const BernoulliModel> coin(long num, long den) {
  return std::make_shared<BernoulliModel>(make_rational(num, den));
}

/* {(1/2, B(1/4)), (1/2, B(1/2))}, the worked example used throughout */
Mixture quarter_half() {
  return Mixture({{make_rational(1, 2), coin(1, 4)}, {make_rational(1, 2), coin(1, 2)}});
}

ExpectationJob job_for(const Mixture& mix, std::shared_ptr<const PredictiveModel> mu,
                       int horizon, Functional f = Functional::kHellinger) {
  ExpectationJob job;
  job.functional = f;
  job.mixture = &mix;
  job.mu = std::move(mu);
  job.horizon = horizon;
  return job;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("one-step hellinger term, worked value") {
  auto mix = quarter_half();
  auto mu = coin(1, 2);
  /* xi predicts (5/8, 3/8) at the empty history, mu predicts (1/2, 1/2) */
  double h = hellinger_term(mix, *mu, Seq{});
  CHECK(h == doctest::Approx(0.015940607465666525).epsilon(1e-14));
  /* symmetric in its arguments */
  CHECK(hellinger_term(*mu, mix, Seq{}) == doctest::Approx(h).epsilon(1e-15));

  struct Trit final : PredictiveModel {
    Alphabet a{3};
    std::string n = "trit";
    LogProb conditional(const Seq&, int) const override {
      return LogProb::from_linear(1.0 / 3.0);
    }
    ModelKind kind() const override { return ModelKind::kMeasure; }
    const std::string& name() const override { return n; }
    const Alphabet& alphabet() const override { return a; }
  };
  Trit trit;
  CHECK_THROWS_AS(hellinger_term(mix, trit, Seq{}), ValidationError);
}

TEST_CASE("exact expected hellinger sum at horizon three") {
  auto mix = quarter_half();
  auto report = exact_expected_sum(job_for(mix, coin(1, 2), 3));
  REQUIRE(report.per_step.size() == 3);
  CHECK(report.per_step[0] == doctest::Approx(0.015940607465666525).epsilon(1e-12));
  CHECK(report.per_step[1] == doctest::Approx(0.015085084728433135).epsilon(1e-12));
  CHECK(report.per_step[2] == doctest::Approx(0.014239607638214087).epsilon(1e-12));
  CHECK(report.value == doctest::Approx(0.04526529983231375).epsilon(1e-12));
  CHECK(report.bound == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  REQUIRE(report.cumulative.size() == 3);
  CHECK(report.cumulative.back() == doctest::Approx(report.value).epsilon(1e-15));
  CHECK(report.cumulative[0] <= report.cumulative[1]);
  CHECK(report.cumulative[1] <= report.cumulative[2]);
}

TEST_CASE("squared-difference sum, single step") {
  auto mix = quarter_half();
  auto report = squared_diff_sum(job_for(mix, coin(1, 2), 1));
  /* (5/8 - 1/2)^2 + (3/8 - 1/2)^2 = 1/32 */
  CHECK(report.value == doctest::Approx(1.0 / 32).epsilon(1e-14));
  CHECK(report.bound == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-15));

  /* pointwise (p - q)^2 <= 4 (sqrt p - sqrt q)^2, so the sums nest too */
  auto hell = exact_expected_sum(job_for(mix, coin(1, 2), 6));
  auto sq = squared_diff_sum(job_for(mix, coin(1, 2), 6));
  CHECK(sq.value <= 4.0 * hell.value + 1e-12);
}

TEST_CASE("ratio form never exceeds hellinger, equal under full support") {
  auto mix = quarter_half();
  auto hell = exact_expected_sum(job_for(mix, coin(1, 2), 6, Functional::kHellinger));
  auto ratio = exact_expected_sum(job_for(mix, coin(1, 2), 6, Functional::kRatioForm));
  CHECK(ratio.value <= hell.value + 1e-12);
  /* mu has full support, so the mu-null hellinger contribution is empty */
  CHECK(ratio.value == doctest::Approx(hell.value).epsilon(1e-12));

  /* a deterministic mu drops the off-path symbol from the ratio form */
  Mixture det({{make_rational(1, 2), coin(1, 1)}, {make_rational(1, 2), coin(1, 2)}});
  auto hell_det = exact_expected_sum(job_for(det, coin(1, 1), 6, Functional::kHellinger));
  auto ratio_det = exact_expected_sum(job_for(det, coin(1, 1), 6, Functional::kRatioForm));
  CHECK(ratio_det.value < hell_det.value - 1e-6);
}

TEST_CASE("entropy bound holds for every component of a small class") {
  ParamClass cls = ParamClass::dense(2); /* {0, 1, 1/2} */
  Mixture mix = Mixture::surrogate(cls.bernoulli_models());
  for (std::size_t i = 0; i < mix.component_count(); ++i) {
    const auto& comp = mix.component(i);
    for (auto f : {Functional::kHellinger, Functional::kRatioForm}) {
      auto report = exact_expected_sum(job_for(mix, comp.model, 8, f));
      CHECK(report.bound ==
            doctest::Approx(-to_log_prob(comp.weight).log()).epsilon(1e-15));
      CHECK(report.value <= report.bound + 1e-12);
    }
  }
}

TEST_CASE("deficiency trace on a short string, exact landmarks") {
  auto mix = quarter_half();
  auto mu = coin(1, 2);
  auto trace = deficiency_trace(mix, *mu, Seq::parse("11"));
  REQUIRE(trace.log_ratio.size() == 3);
  CHECK_FALSE(trace.truncated);
  CHECK(trace.log_ratio[0] == doctest::Approx(0.0).epsilon(1e-15));
  /* xi(1) = 3/8 against mu(1) = 1/2, xi(11) = 5/32 against 1/4 */
  CHECK(trace.log_ratio[1] == doctest::Approx(std::log(3.0 / 4)).epsilon(1e-14));
  CHECK(trace.log_ratio[2] == doctest::Approx(std::log(5.0 / 8)).epsilon(1e-14));
  CHECK(trace.sup() == doctest::Approx(0.0).epsilon(1e-15));
  REQUIRE(trace.running_sup.size() == 3);
  CHECK(trace.running_sup[1] == doctest::Approx(0.0).epsilon(1e-15));
  /* mixture components never fall below their weight floor */
  for (double d : trace.log_ratio) CHECK(d >= std::log(0.5) - 1e-12);
}

TEST_CASE("deficiency telescopes into the per-step ratios") {
  auto mix = quarter_half();
  auto mu = coin(1, 2);
  Seq x = Seq::parse("110100101");
  auto trace = deficiency_trace(mix, *mu, x);
  auto ratios = ratio_trace(mix, *mu, x);
  REQUIRE(ratios.size() == x.size());
  double prod = 1.0;
  for (std::size_t m = 0; m < x.size(); ++m) {
    prod *= ratios[m];
    CHECK(std::exp(trace.log_ratio[m + 1] - trace.log_ratio[0]) ==
          doctest::Approx(prod).epsilon(1e-12));
  }
}

TEST_CASE("trace truncates at the first mu-null step") {
  auto mix = quarter_half();
  auto ones = coin(1, 1);
  auto trace = deficiency_trace(mix, *ones, Seq::parse("10"));
  CHECK(trace.truncated);
  CHECK(trace.truncated_at == 2);
  CHECK(trace.log_ratio.size() == 2);
  CHECK(trace.running_sup.size() == 2);
  CHECK_THROWS_AS(ratio_trace(mix, *ones, Seq::parse("10")), UndefinedConditionalError);
}

TEST_CASE("ratio trace on the worked example") {
  auto mix = quarter_half();
  auto mu = coin(1, 2);
  auto ratios = ratio_trace(mix, *mu, Seq::parse("11"));
  REQUIRE(ratios.size() == 2);
  CHECK(ratios[0] == doctest::Approx(3.0 / 4).epsilon(1e-14));
  /* xi(1|1) = 5/12 against 1/2 */
  CHECK(ratios[1] == doctest::Approx(5.0 / 6).epsilon(1e-14));
}

TEST_CASE("monte carlo estimate brackets the exact sum") {
  auto mix = quarter_half();
  auto exact = exact_expected_sum(job_for(mix, coin(1, 2), 10));

  auto job = job_for(mix, coin(1, 2), 10);
  job.mode = ExpectationMode::kMonteCarlo;
  job.seed = 5;
  job.samples = 512;
  auto mc = mc_expected_sum(job);
  CHECK(mc.std_error > 0.0);
  CHECK(std::abs(mc.estimate - exact.value) <= 4.0 * mc.std_error);
  CHECK(mc.bound == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  /* the first term is history-free, so averaging changes nothing */
  REQUIRE(mc.per_step_mean.size() == 10);
  CHECK(mc.per_step_mean[0] == doctest::Approx(exact.per_step[0]).epsilon(1e-12));
}

TEST_CASE("monte carlo reduction is independent of the thread count") {
  auto mix = quarter_half();
  auto job = job_for(mix, coin(1, 2), 8);
  job.mode = ExpectationMode::kMonteCarlo;
  job.seed = 11;
  job.samples = 300; /* a ragged final chunk on purpose */
  auto one = mc_expected_sum(job, 1);
  auto four = mc_expected_sum(job, 4);
  CHECK(one.estimate == four.estimate);
  CHECK(one.std_error == four.std_error);
  REQUIRE(one.per_step_mean.size() == four.per_step_mean.size());
  for (std::size_t t = 0; t < one.per_step_mean.size(); ++t)
    CHECK(one.per_step_mean[t] == four.per_step_mean[t]);

  job.seed = 12;
  auto other = mc_expected_sum(job, 1);
  CHECK(other.estimate != one.estimate);
}

TEST_CASE("expectation jobs reject bad setups") {
  auto mix = quarter_half();

  /* mu must actually be a component */
  CHECK_THROWS_AS(exact_expected_sum(job_for(mix, coin(1, 3), 4)), ConfigError);

  auto job = job_for(mix, coin(1, 2), 25);
  try {
    exact_expected_sum(job);
    FAIL("horizon 25 should exceed the exact enumeration budget");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("Monte Carlo") != std::string::npos);
  }

  CHECK_THROWS_AS(exact_expected_sum(job_for(mix, coin(1, 2), 0)), ConfigError);

  auto mc = job_for(mix, coin(1, 2), 4);
  mc.mode = ExpectationMode::kMonteCarlo;
  mc.samples = 0;
  CHECK_THROWS_AS(mc_expected_sum(mc), ConfigError);

  ExpectationJob empty;
  CHECK_THROWS_AS(exact_expected_sum(empty), ConfigError);
}

TEST_CASE("sampling refuses a semimeasure reference") {
  struct Leaky final : PredictiveModel {
    Alphabet a{2};
    std::string n = "leaky";
    LogProb conditional(const Seq&, int) const override { return LogProb::from_linear(0.45); }
    ModelKind kind() const override { return ModelKind::kSemimeasure; }
    const std::string& name() const override { return n; }
    const Alphabet& alphabet() const override { return a; }
  };
  auto leaky = std::make_shared<Leaky>();
  Mixture mix({{make_rational(1, 4), leaky}, {make_rational(1, 4), coin(1, 2)}});
  auto job = job_for(mix, leaky, 4);
  job.mode = ExpectationMode::kMonteCarlo;
  CHECK_THROWS_AS(mc_expected_sum(job), ValidationError);
}

}  // TEST_SUITE
