#include <doctest.h>

#include <cmath>
#include <vector>

#include "uniprior/log_prob.hpp"

using namespace uniprior;

TEST_SUITE("log_prob") {

TEST_CASE("construction and special values") {
  CHECK(LogProb::zero().is_zero());
  CHECK(LogProb::one().log() == 0.0);
  CHECK(LogProb::one().linear() == 1.0);
  CHECK(LogProb().is_zero());
  CHECK(LogProb::from_linear(0.0).is_zero());
  CHECK(LogProb::from_linear(0.25).linear() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(LogProb::from_linear(-0.1), ValidationError);
  CHECK_THROWS_AS(LogProb::from_linear(std::nan("")), ValidationError);
}

TEST_CASE("multiplication adds logs and zero annihilates") {
  auto half = LogProb::from_linear(0.5);
  CHECK((half * half).log() == doctest::Approx(std::log(0.25)).epsilon(1e-15));
  CHECK((half * LogProb::zero()).is_zero());
  CHECK((LogProb::zero() * half).is_zero());
  auto p = half;
  p *= half;
  CHECK(p.linear() == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("division and the zero divisor") {
  auto q = LogProb::from_linear(0.125) / LogProb::from_linear(0.5);
  CHECK(q.linear() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK((LogProb::zero() / LogProb::from_linear(0.5)).is_zero());
  CHECK_THROWS_AS(LogProb::one() / LogProb::zero(), UndefinedConditionalError);
}

TEST_CASE("addition is log-sum-exp") {
  auto a = LogProb::from_linear(0.375);
  auto b = LogProb::from_linear(0.625);
  CHECK((a + b).log() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK((a + LogProb::zero()).log() == a.log());
  CHECK((LogProb::zero() + b).log() == b.log());

  /* magnitudes that would underflow in linear space survive in log space */
  auto tiny = LogProb::from_log(-800.0);
  auto sum = tiny + tiny;
  CHECK(sum.log() == doctest::Approx(-800.0 + std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("ordering follows the log") {
  CHECK(LogProb::from_linear(0.25) < LogProb::from_linear(0.5));
  CHECK(LogProb::from_linear(0.5) >= LogProb::from_linear(0.5));
  CHECK(LogProb::zero() < LogProb::from_linear(1e-300));
}

TEST_CASE("log_sum_exp over spans") {
  std::vector<double> logs{std::log(0.1), std::log(0.2), std::log(0.3)};
  CHECK(log_sum_exp(logs) == doctest::Approx(std::log(0.6)).epsilon(1e-14));
  std::vector<double> empty;
  CHECK(std::isinf(log_sum_exp(empty)));
  /* extreme spread must not overflow */
  std::vector<double> spread{-1000.0, 0.0};
  CHECK(log_sum_exp(spread) == doctest::Approx(0.0).epsilon(1e-15));
}

}  // TEST_SUITE
