#include "uniprior/diagnostics.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "joint_walker.hpp"
#include "uniprior/rng.hpp"

namespace uniprior {

namespace {

double functional_term(Functional f, std::span<const double> xi_cond,
                       std::span<const double> mu_cond) {
  double acc = 0.0;
  for (std::size_t a = 0; a < xi_cond.size(); ++a) {
    switch (f) {
      case Functional::kHellinger: {
        double d = std::sqrt(xi_cond[a]) - std::sqrt(mu_cond[a]);
        acc += d * d;
        break;
      }
      case Functional::kSquaredDiff: {
        double d = xi_cond[a] - mu_cond[a];
        acc += d * d;
        break;
      }
      case Functional::kRatioForm: {
        /* mu-expectation over the next symbol is folded in here */
        if (mu_cond[a] <= 0.0) break;
        double d = std::sqrt(xi_cond[a] / mu_cond[a]) - 1.0;
        acc += mu_cond[a] * d * d;
        break;
      }
    }
  }
  return acc;
}

double job_bound(const ExpectationJob& job) {
  if (!job.mixture) throw ConfigError("expectation job without a mixture");
  if (!job.mu) throw ConfigError("expectation job without a reference measure");
  auto idx = job.mixture->index_of(job.mu->name());
  if (!idx)
    throw ConfigError("reference model '" + job.mu->name() + "' is not a mixture component");
  double lw = to_log_prob(job.mixture->component(*idx).weight).log();
  double bound = -lw;
  if (job.functional == Functional::kSquaredDiff) bound *= 4.0;
  return bound;
}

/* one-step conditionals of xi (via walker) and mu at the walker's history */
void step_conditionals(const detail::JointWalker& xi_walker, const PredictiveModel& mu,
                       const Seq& h, int a, std::vector<double>& xi_cond,
                       std::vector<double>& mu_cond) {
  xi_cond.resize(a);
  mu_cond.resize(a);
  for (int s = 0; s < a; ++s) {
    xi_cond[s] = std::exp(xi_walker.log_conditional(h, s));
    mu_cond[s] = mu.conditional(h, s).linear();
  }
}

}  // namespace

double hellinger_term(const PredictiveModel& xi, const PredictiveModel& mu, const Seq& history) {
  const int a = xi.alphabet().size();
  if (!(mu.alphabet() == xi.alphabet()))
    throw ValidationError("hellinger_term: alphabet mismatch");
  double acc = 0.0;
  for (int s = 0; s < a; ++s) {
    double d = std::sqrt(xi.conditional(history, s).linear()) -
               std::sqrt(mu.conditional(history, s).linear());
    acc += d * d;
  }
  return acc;
}

ExpectedSumReport exact_expected_sum(const ExpectationJob& job) {
  double bound = job_bound(job);
  const int a = job.mixture->alphabet().size();
  if (job.horizon < 1) throw ConfigError("expectation horizon must be >= 1");
  double leaves = std::pow(static_cast<double>(a), job.horizon);
  if (leaves > static_cast<double>(1u << 24))
    throw ConfigError("exact expectation too large; use the Monte Carlo mode");

  ExpectedSumReport report;
  report.bound = bound;
  report.per_step.assign(static_cast<std::size_t>(job.horizon), 0.0);

  detail::JointWalker xi_walker(*job.mixture);
  const PredictiveModel& mu = *job.mu;
  Seq h;
  std::vector<double> xi_cond, mu_cond;

  auto dfs = [&](auto&& self, int depth, double mu_mass) -> void {
    step_conditionals(xi_walker, mu, h, a, xi_cond, mu_cond);
    report.per_step[static_cast<std::size_t>(depth)] +=
        mu_mass * functional_term(job.functional, xi_cond, mu_cond);
    if (depth + 1 == job.horizon) return;
    auto snap = xi_walker.save();
    for (int s = 0; s < a; ++s) {
      double child_mass = mu_mass * mu_cond[static_cast<std::size_t>(s)];
      if (child_mass <= 0.0) continue;  /* restricted to mu-reachable histories */
      xi_walker.advance(h, s);
      h.push_back(s);
      self(self, depth + 1, child_mass);
      h.pop_back();
      xi_walker.restore(snap);
    }
  };
  dfs(dfs, 0, 1.0);

  report.cumulative.resize(report.per_step.size());
  double acc = 0.0;
  for (std::size_t t = 0; t < report.per_step.size(); ++t) {
    acc += report.per_step[t];
    report.cumulative[t] = acc;
  }
  report.value = acc;
  if (report.value > bound + 1e-9)
    throw std::logic_error("expected distance sum breached its entropy bound");
  return report;
}

ExpectedSumReport squared_diff_sum(const ExpectationJob& job) {
  ExpectationJob j = job;
  j.functional = Functional::kSquaredDiff;
  return exact_expected_sum(j);
}

McReport mc_expected_sum(const ExpectationJob& job, int threads) {
  double bound = job_bound(job);
  if (job.horizon < 1) throw ConfigError("expectation horizon must be >= 1");
  if (job.samples == 0) throw ConfigError("Monte Carlo needs at least one sample");
  if (job.mu->kind() != ModelKind::kMeasure)
    throw ValidationError("cannot sample paths from a semimeasure");
  const int a = job.mixture->alphabet().size();
  const std::size_t n = static_cast<std::size_t>(job.horizon);

  /* fixed 64-sample chunks keep the reduction order independent of threads */
  constexpr std::size_t kChunk = 64;
  const std::size_t chunks = (job.samples + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> chunk_per_step(chunks);
  std::vector<std::vector<double>> chunk_path_sums(chunks);

  auto run_chunk = [&](std::size_t ci) {
    std::vector<double> per_step(n, 0.0);
    std::vector<double> path_sums;
    std::vector<double> xi_cond, mu_cond;
    const std::size_t begin = ci * kChunk;
    const std::size_t end = std::min(begin + kChunk, job.samples);
    for (std::size_t j = begin; j < end; ++j) {
      RandomStream rng(job.seed, j);
      detail::JointWalker xi_walker(*job.mixture);
      Seq h;
      double path = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        step_conditionals(xi_walker, *job.mu, h, a, xi_cond, mu_cond);
        double term;
        if (job.functional == Functional::kRatioForm) {
          int sym = rng.next_symbol(mu_cond);
          double d = std::sqrt(xi_cond[static_cast<std::size_t>(sym)] /
                               mu_cond[static_cast<std::size_t>(sym)]) -
                     1.0;
          term = d * d;
          xi_walker.advance(h, sym);
          h.push_back(sym);
          per_step[t] += term;
          path += term;
          continue;
        }
        term = functional_term(job.functional, xi_cond, mu_cond);
        per_step[t] += term;
        path += term;
        int sym = rng.next_symbol(mu_cond);
        xi_walker.advance(h, sym);
        h.push_back(sym);
      }
      path_sums.push_back(path);
    }
    chunk_per_step[ci] = std::move(per_step);
    chunk_path_sums[ci] = std::move(path_sums);
  };

  if (threads <= 1) {
    for (std::size_t ci = 0; ci < chunks; ++ci) run_chunk(ci);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (std::size_t ci = next.fetch_add(1); ci < chunks; ci = next.fetch_add(1))
          run_chunk(ci);
      });
    for (auto& th : pool) th.join();
  }

  McReport report;
  report.bound = bound;
  report.per_step_mean.assign(n, 0.0);
  std::vector<double> path_sums;
  path_sums.reserve(job.samples);
  for (std::size_t ci = 0; ci < chunks; ++ci) {
    for (std::size_t t = 0; t < n; ++t) report.per_step_mean[t] += chunk_per_step[ci][t];
    for (double v : chunk_path_sums[ci]) path_sums.push_back(v);
  }
  for (std::size_t t = 0; t < n; ++t)
    report.per_step_mean[t] /= static_cast<double>(job.samples);

  double mean = 0.0;
  for (double v : path_sums) mean += v;
  mean /= static_cast<double>(path_sums.size());
  double var = 0.0;
  for (double v : path_sums) var += (v - mean) * (v - mean);
  report.estimate = mean;
  report.std_error = path_sums.size() > 1
                         ? std::sqrt(var / (static_cast<double>(path_sums.size()) - 1.0) /
                                     static_cast<double>(path_sums.size()))
                         : 0.0;
  return report;
}

DeficiencyTrace deficiency_trace(const PredictiveModel& xi, const PredictiveModel& mu,
                                 const Seq& x) {
  DeficiencyTrace trace;
  detail::JointWalker xw(xi), mw(mu);
  Seq h;
  double sup = -std::numeric_limits<double>::infinity();
  auto record = [&](double d) {
    sup = std::max(sup, d);
    trace.log_ratio.push_back(d);
    trace.running_sup.push_back(sup);
  };
  record(xw.log_joint() - mw.log_joint());  /* m = 0 */
  for (std::size_t m = 0; m < x.size(); ++m) {
    double mu_step = mw.log_conditional(h, x[m]);
    if (std::isinf(mu_step) && mu_step < 0) {
      trace.truncated = true;
      trace.truncated_at = m + 1;
      return trace;
    }
    xw.advance(h, x[m]);
    mw.advance(h, x[m]);
    h.push_back(x[m]);
    record(xw.log_joint() - mw.log_joint());
  }
  return trace;
}

std::vector<double> ratio_trace(const PredictiveModel& xi, const PredictiveModel& mu,
                                const Seq& x) {
  std::vector<double> out;
  out.reserve(x.size());
  detail::JointWalker xw(xi), mw(mu);
  Seq h;
  for (std::size_t t = 0; t < x.size(); ++t) {
    double lx = xw.log_conditional(h, x[t]);
    double lm = mw.log_conditional(h, x[t]);
    if (std::isinf(lm) && lm < 0)
      throw UndefinedConditionalError("ratio_trace: mu-null step at t=" + std::to_string(t + 1));
    out.push_back(std::exp(lx - lm));
    xw.advance(h, x[t]);
    mw.advance(h, x[t]);
    h.push_back(x[t]);
  }
  return out;
}

}  // namespace uniprior
