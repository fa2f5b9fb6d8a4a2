#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "uniprior/mixture.hpp"

namespace uniprior {

/*
 * Per-step prediction distances between a predictor xi and a reference mu.
 * kHellinger:   sum_a (sqrt(xi(a|h)) - sqrt(mu(a|h)))^2
 * kSquaredDiff: sum_a (xi(a|h) - mu(a|h))^2
 * kRatioForm:   E_a~mu (sqrt(xi(a|h)/mu(a|h)) - 1)^2
 * Summed over time and averaged over mu-histories, the Hellinger and ratio
 * forms stay below ln(1/w_mu); the squared difference stays below four times
 * that (a looser envelope that follows from (sqrt a + sqrt b)^2 <= 4).
 */
enum class Functional { kHellinger, kSquaredDiff, kRatioForm };
enum class ExpectationMode { kExact, kMonteCarlo };

double hellinger_term(const PredictiveModel& xi, const PredictiveModel& mu, const Seq& history);

struct ExpectationJob {
  Functional functional = Functional::kHellinger;
  const Mixture* mixture = nullptr;                /* the predictor xi */
  std::shared_ptr<const PredictiveModel> mu;       /* must name a mixture component */
  int horizon = 10;
  ExpectationMode mode = ExpectationMode::kExact;
  std::uint64_t seed = 1;                          /* Monte Carlo only */
  std::size_t samples = 1000;
};

struct ExpectedSumReport {
  double value = 0.0;
  double bound = 0.0;
  std::vector<double> per_step;    /* E[f_t], t = 1..horizon */
  std::vector<double> cumulative;
};

/*
 * Full-tree expectation under mu, exact enumeration. Refuses jobs beyond
 * alphabet^horizon = 2^24 leaves and throws logic_error if the computed sum
 * breaches its entropy bound, since that cannot happen in a correct build.
 */
ExpectedSumReport exact_expected_sum(const ExpectationJob& job);

struct McReport {
  double estimate = 0.0;
  double std_error = 0.0;
  std::vector<double> per_step_mean;
  double bound = 0.0;
};

/*
 * Monte Carlo version: `samples` paths drawn from mu, each on its own
 * counter-based stream keyed by (seed, sample index), reduced in fixed
 * index order. Thread count changes wall time, never the estimate.
 */
McReport mc_expected_sum(const ExpectationJob& job, int threads = 1);

/* Hellinger job rewritten for the squared-difference functional, bound 4 ln(1/w). */
ExpectedSumReport squared_diff_sum(const ExpectationJob& job);

/*
 * d_m = log xi(x_1:m) - log mu(x_1:m) for m = 0..n. sup_m d_m <= log c is
 * the operational "x looks mu-random to xi at level c"; for components of
 * a mixture d_m >= log w_mu always. Hits a mu-null prefix -> truncated.
 */
struct DeficiencyTrace {
  std::vector<double> log_ratio;    /* index m, starting at m = 0 */
  std::vector<double> running_sup;
  bool truncated = false;
  std::size_t truncated_at = 0;
  double sup() const { return running_sup.empty() ? 0.0 : running_sup.back(); }
};

DeficiencyTrace deficiency_trace(const PredictiveModel& xi, const PredictiveModel& mu,
                                 const Seq& x);

/* Per-step conditional ratios xi(x_t|x_<t) / mu(x_t|x_<t), linear domain. */
std::vector<double> ratio_trace(const PredictiveModel& xi, const PredictiveModel& mu,
                                const Seq& x);

}  // namespace uniprior
