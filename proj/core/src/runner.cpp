#include "uniprior/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

#include "uniprior/constructions.hpp"
#include "uniprior/errors.hpp"
#include "uniprior/staged_approx.hpp"

namespace uniprior {

namespace {

namespace fs = std::filesystem;

constexpr int kDominanceHorizonCap = 16;
constexpr std::size_t kExactEnumerationCap = 24;

struct Ctx {
  const ExperimentConfig& cfg;
  fs::path dir;
  std::ostream& log;
  std::vector<std::string> files;
  std::vector<SummaryLine> lines;

  void note(const std::string& msg) {
    if (!cfg.quiet) log << "note: " << msg << "\n";
  }
  std::ofstream open(const std::string& name) {
    /* created on first write, so a refused config leaves no directory behind */
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
    fs::path p = dir / name;
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot write " + p.string());
    files.push_back(p.string());
    return out;
  }
  void line(std::string check, bool passed, double value, double bound) {
    lines.push_back({std::move(check), passed, value, bound});
  }
};

Mixture build_mixture(const ParamClass& cls, WeightScheme scheme) {
  auto models = cls.bernoulli_models();
  return scheme == WeightScheme::kSurrogate ? Mixture::surrogate(std::move(models))
                                            : Mixture::uniform(std::move(models));
}

/* exact atom lookup; converge experiments need the true coin inside the class */
std::size_t true_index(const ParamClass& cls, const Rational& theta) {
  const auto& ts = cls.thetas();
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] == theta) return i;
  throw ConfigError("class.theta_true = " + format_rational(theta) +
                    " is not a class atom; add it or pick one from the class");
}

double mean_range(const std::vector<double>& v, std::size_t begin, std::size_t count) {
  double s = 0.0;
  for (std::size_t i = begin; i < begin + count; ++i) s += v[i];
  return s / static_cast<double>(count);
}

/* early vs late decile of the per-step expectations: summable -> collapse.
   Only meaningful once the posterior has had room to settle, hence the
   horizon gate; short-horizon runs can legitimately hold their level. */
void decile_line(Ctx& ctx, const std::vector<double>& per_step) {
  const std::size_t n = per_step.size();
  if (n < 100) {
    ctx.note("per-step decile comparison needs n >= 100, skipped");
    return;
  }
  const std::size_t k = n / 10;
  double early = mean_range(per_step, 0, k);
  double late = mean_range(per_step, n - k, k);
  ctx.line("late-decile-terms-collapse", late <= early / 10 + 1e-15, late, early / 10);
}

void run_dominance(Ctx& ctx) {
  const auto& cfg = ctx.cfg;
  if (cfg.n > kDominanceHorizonCap)
    throw ConfigError("dominance enumerates every string to depth n; n is capped at " +
                      std::to_string(kDominanceHorizonCap) + ", got " + std::to_string(cfg.n));
  ParamClass cls = cfg.build_class();
  Mixture mix = build_mixture(cls, cfg.weights);
  DominanceReport report = dominance_check(mix, static_cast<int>(cfg.n), cfg.backend);

  auto csv = ctx.open("dominance.csv");
  CsvWriter w(csv, {"check", "status", "slack"});
  for (std::size_t i = 0; i < report.component_names.size(); ++i) {
    bool ok = report.component_min_slack[i] >= 1.0 - 1e-9;
    w.row({report.component_names[i], ok ? "pass" : "fail",
           format_double17(report.component_min_slack[i])});
  }
  ctx.line("dominance-min-slack", report.passed, report.min_slack, 1.0);
  ctx.note("checked " + std::to_string(report.checks) + " (string, component) pairs; tightest at '" +
           report.worst_string.str() + "' vs " + report.worst_component);
}

void write_converge_csv(Ctx& ctx, const std::vector<double>& per_step, double bound) {
  auto csv = ctx.open(experiment_name(ctx.cfg.experiment) + ".csv");
  CsvWriter w(csv, {"t", "hellinger_term", "cumulative", "bound"});
  double cum = 0.0;
  for (std::size_t t = 0; t < per_step.size(); ++t) {
    cum += per_step[t];
    w.row_numeric({static_cast<double>(t + 1), per_step[t], cum, bound});
  }
}

void run_converge_exact(Ctx& ctx) {
  const auto& cfg = ctx.cfg;
  if (cfg.n > kExactEnumerationCap)
    throw ConfigError("exact expectation enumerates 2^n histories; n is capped at " +
                      std::to_string(kExactEnumerationCap) +
                      ", got " + std::to_string(cfg.n) + " (use converge-mc for long horizons)");
  ParamClass cls = cfg.build_class();
  Mixture mix = build_mixture(cls, cfg.weights);
  std::size_t idx = true_index(cls, cfg.theta_true);

  ExpectationJob job;
  job.mixture = &mix;
  job.mu = mix.component(idx).model;
  job.horizon = static_cast<int>(cfg.n);
  job.mode = ExpectationMode::kExact;

  job.functional = Functional::kHellinger;
  ExpectedSumReport hell = exact_expected_sum(job);
  job.functional = Functional::kRatioForm;
  ExpectedSumReport ratio = exact_expected_sum(job);

  write_converge_csv(ctx, hell.per_step, hell.bound);
  ctx.line("hellinger-sum-within-entropy-bound", hell.value <= hell.bound + 1e-9, hell.value,
           hell.bound);
  ctx.line("ratio-form-below-hellinger", ratio.value <= hell.value + 1e-9, ratio.value,
           hell.value);
}

void run_converge_mc(Ctx& ctx) {
  const auto& cfg = ctx.cfg;
  ParamClass cls = cfg.build_class();
  Mixture mix = build_mixture(cls, cfg.weights);
  std::size_t idx = true_index(cls, cfg.theta_true);

  ExpectationJob job;
  job.functional = Functional::kHellinger;
  job.mixture = &mix;
  job.mu = mix.component(idx).model;
  job.horizon = static_cast<int>(cfg.n);
  job.mode = ExpectationMode::kMonteCarlo;
  job.seed = cfg.seed;
  job.samples = cfg.samples;

  int threads = static_cast<int>(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
  McReport report = mc_expected_sum(job, threads);

  write_converge_csv(ctx, report.per_step_mean, report.bound);
  ctx.line("mc-hellinger-sum-within-entropy-bound", report.estimate <= report.bound,
           report.estimate, report.bound);
  decile_line(ctx, report.per_step_mean);
  ctx.note("estimate " + format_double17(report.estimate) + " +- " +
           format_double17(report.std_error) + " from " + std::to_string(cfg.samples) +
           " paths on " + std::to_string(threads) + " threads");
}

void run_gap(Ctx& ctx) {
  const auto& cfg = ctx.cfg;
  if (cfg.class_tag != ClassTag::kGapped)
    throw ConfigError("the gap experiment needs class.tag = gapped");
  ParamClass cls = cfg.build_class();
  GapReport report = gap_experiment(cls, cfg.weights, cfg.n);

  auto csv = ctx.open("gap.csv");
  CsvWriter w(csv, {"t", "predictive_1", "deficiency_theta0", "deficiency_theta1"});
  for (std::size_t t = 1; t <= report.n; ++t)
    w.row_numeric({static_cast<double>(t), report.predictive1[t - 1],
                   report.def_theta0.log_ratio[t], report.def_theta1.log_ratio[t]});

  ctx.line("llr-within-band", report.s_sup <= report.s_bound + 1e-9, report.s_sup,
           report.s_bound);
  ctx.line("ones-frequency-near-balance-point",
           std::abs(report.ones_freq - report.balance_freq) <=
               0.01 + 2.0 / std::sqrt(static_cast<double>(report.n)),
           report.ones_freq, report.balance_freq);

  const double gap = to_double(report.theta1) - to_double(report.theta0);
  ctx.line("late-predictive-avoids-theta0", report.margin_theta0 >= gap / 16,
           report.margin_theta0, gap / 16);
  ctx.line("late-predictive-avoids-theta1", report.margin_theta1 >= gap / 16,
           report.margin_theta1, gap / 16);

  if (cls.size() == 2) {
    /* two atoms: xi/nu_theta0 = w0 + w1 e^S exactly, so the measured band
       on S turns into an exact band on both deficiencies; the tolerance
       grows with n because both sides accumulate their own float drift */
    const double tol = 1e-9 + 1e-12 * static_cast<double>(report.n);
    Mixture mix = build_mixture(cls, cfg.weights);
    double w0 = to_double(mix.component(0).weight);
    double w1 = to_double(mix.component(1).weight);
    double band0 = std::log(w0 + w1 * std::exp(report.s_sup));
    double band1 = std::log(w0 * std::exp(report.s_sup) + w1);
    ctx.line("deficiency-theta0-within-band", report.def_theta0.sup() <= band0 + tol,
             report.def_theta0.sup(), band0);
    ctx.line("deficiency-theta1-within-band", report.def_theta1.sup() <= band1 + tol,
             report.def_theta1.sup(), band1);
  } else {
    ctx.note("deficiency band check needs the bare two-point class (class.q = 0), skipped");
  }
  ctx.note("ones frequency " + format_double17(report.ones_freq) + ", balance point " +
           format_double17(report.balance_freq) + ", late predictive in [" +
           format_double17(report.pred_late_min) + ", " + format_double17(report.pred_late_max) +
           "]");
}

void run_dense(Ctx& ctx) {
  const auto& cfg = ctx.cfg;
  ParamClass cls = cfg.build_class();
  if (cfg.samples == 0) throw ConfigError("dense experiment needs samples >= 1");
  DenseReport report =
      dense_experiment(cls, cfg.weights, cfg.theta_true, cfg.n, cfg.samples, cfg.seed);

  auto csv = ctx.open("dense.csv");
  /* columns: deficiency vs the data coin, then vs the nearest other atom */
  CsvWriter w(csv, {"t", "predictive_1", "deficiency_theta0", "deficiency_theta1"});
  std::size_t rows = report.predictive1.size();
  for (std::size_t t = 1; t <= rows; ++t)
    w.row_numeric({static_cast<double>(t), report.predictive1[t - 1],
                   report.def_true.log_ratio[t], report.def_nearest.log_ratio[t]});

  if (report.theta_in_class) {
    double dev_bound = 0.02 + 1.0 / std::sqrt(static_cast<double>(cfg.n));
    ctx.line("mean-late-deviation-small", report.mean_last_decade_dev <= dev_bound,
             report.mean_last_decade_dev, dev_bound);

    double worst_sup = *std::max_element(report.deficiency_sup.begin(),
                                         report.deficiency_sup.end());
    /* sup of xi/mu across paths: P(sup >= c) <= 1/c per path, so a shared
       20x-per-path budget fails with probability at most 5 percent */
    double ville = std::log(20.0 * static_cast<double>(report.paths));
    ctx.line("deficiency-sup-within-ville-band", worst_sup <= ville, worst_sup, ville);

    Mixture mix = build_mixture(cls, cfg.weights);
    double floor = std::log(to_double(mix.component(true_index(cls, cfg.theta_true)).weight));
    double worst_floor = *std::min_element(report.def_true.log_ratio.begin(),
                                           report.def_true.log_ratio.end());
    ctx.line("first-path-deficiency-above-weight-floor", worst_floor >= floor - 1e-9,
             worst_floor, floor);
  } else {
    double dist = std::abs(to_double(report.theta_true) - to_double(report.theta_nearest));
    ctx.line("theta-outside-class-noted", true, dist, report.mesh_spacing);
    ctx.note("true coin " + format_rational(report.theta_true) +
             " is not a class atom; nearest is " + format_rational(report.theta_nearest) +
             " and the widest mesh gap is " + format_double17(report.mesh_spacing) +
             ", so no convergence level is asserted");
  }
  ctx.note("mean last-decade deviation " + format_double17(report.mean_last_decade_dev) +
           " over " + std::to_string(report.paths) + " paths");
}

void run_diverge(Ctx& ctx) {
  const auto& cfg = ctx.cfg;
  if (cfg.n < 10) throw ConfigError("diverge needs n >= 10");
  DivergenceReport report = divergence_example(cfg.n);

  auto csv = ctx.open("diverge.csv");
  CsvWriter w(csv, {"t", "ratio"});
  for (std::size_t t = 1; t <= report.n; ++t)
    w.row_numeric({static_cast<double>(t), report.ratio[t - 1]});

  ctx.line("first-ratio-exactly-one", std::abs(report.ratio[0] - 1.0) <= 1e-12, report.ratio[0],
           1.0);
  if (report.growth_checked) {
    ctx.line("ratio-decade-growth-near-linear", report.growth_ok, report.growth, 10.0);
  } else {
    ctx.note("decade growth check needs n >= 10000, skipped");
  }
  ctx.line("deficiency-never-positive", report.def_mu.sup() <= 1e-9, report.def_mu.sup(), 0.0);
  double floor = std::log(0.5);
  double worst = *std::min_element(report.def_mu.log_ratio.begin(),
                                   report.def_mu.log_ratio.end());
  ctx.line("deficiency-above-weight-floor", worst >= floor - 1e-9, worst, floor);
}

/* lexicographic sort puts a prefix right before its first extension */
std::size_t prefix_violations(const std::vector<EnumeratedProgram>& programs) {
  std::vector<std::vector<std::uint8_t>> codes;
  codes.reserve(programs.size());
  for (const auto& p : programs) codes.push_back(p.bits);
  std::sort(codes.begin(), codes.end());
  std::size_t bad = 0;
  for (std::size_t i = 0; i + 1 < codes.size(); ++i) {
    const auto& a = codes[i];
    const auto& b = codes[i + 1];
    if (a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin())) ++bad;
  }
  return bad;
}

std::vector<Seq> probe_strings(int max_len) {
  std::vector<Seq> probes{Seq{}};
  for (int k = 1; k <= max_len; ++k) {
    for (std::uint64_t j = 0; j < (1ull << k); ++j) {
      Seq s;
      for (int b = k - 1; b >= 0; --b) s.push_back(static_cast<int>((j >> b) & 1));
      probes.push_back(std::move(s));
    }
  }
  return probes;
}

void run_solomonoff(Ctx& ctx) {
  const auto& cfg = ctx.cfg;
  auto machine = std::make_shared<ProgramFamilyMachine>();

  std::vector<int> ls{std::min(8, cfg.machine_bits), std::min(12, cfg.machine_bits),
                      cfg.machine_bits};
  std::vector<std::size_t> ts{std::min<std::size_t>(100, cfg.machine_steps),
                              std::min<std::size_t>(1000, cfg.machine_steps),
                              cfg.machine_steps};
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<std::vector<std::shared_ptr<StagedApprox>>> grid(ls.size());
  for (std::size_t li = 0; li < ls.size(); ++li)
    for (std::size_t ti = 0; ti < ts.size(); ++ti)
      grid[li].push_back(std::make_shared<StagedApprox>(machine, ls[li], ts[ti]));
  std::shared_ptr<StagedApprox> main_approx = grid.back().back();

  {
    auto listing = ctx.open("programs.txt");
    main_approx->dump_listing(listing);
  }

  Rational kraft = main_approx->kraft_sum();
  ctx.line("kraft-sum-at-most-one", kraft <= 1, to_double(kraft), 1.0);

  std::size_t bad = prefix_violations(main_approx->programs());
  ctx.line("complete-programs-prefix-free", bad == 0, static_cast<double>(bad), 0.0);

  auto semi = machine_semimeasure(main_approx);
  int h = static_cast<int>(std::min<std::size_t>(cfg.n, 8));
  ValidationReport val = validate_model(*semi, h, Backend::kExact);
  ctx.line("approximation-is-a-semimeasure", val.passed, val.worst_deviation, 0.0);

  auto probes = probe_strings(5);
  std::size_t monotone_bad = 0;
  for (std::size_t li = 0; li < ls.size(); ++li) {
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
      for (const auto& x : probes) {
        Rational v = grid[li][ti]->value_exact(x);
        if (li + 1 < ls.size() && grid[li + 1][ti]->value_exact(x) < v) ++monotone_bad;
        if (ti + 1 < ts.size() && grid[li][ti + 1]->value_exact(x) < v) ++monotone_bad;
      }
    }
  }
  ctx.line("value-monotone-in-budgets", monotone_bad == 0, static_cast<double>(monotone_bad),
           0.0);

  if (ls.size() > 1 || ts.size() > 1) {
    bool witness = false;
    for (const auto& x : probes)
      if (grid.front().front()->value_exact(x) < main_approx->value_exact(x)) {
        witness = true;
        ctx.note("budget growth witness: value('" + x.str() + "') rose from " +
                 format_double17(to_double(grid.front().front()->value_exact(x))) + " to " +
                 format_double17(to_double(main_approx->value_exact(x))));
        break;
      }
    ctx.line("budget-growth-strict-witness", witness, witness ? 1.0 : 0.0, 1.0);
  } else {
    ctx.note("budget grid is a single point, strict growth witness skipped");
  }

  /* every short literal's own program mass is a certified lower bound */
  std::vector<std::pair<Seq, std::size_t>> literals;
  for (int k = 1; literals.size() < 20 && k <= 16; ++k) {
    std::size_t cost = 1 + elias_gamma_length(static_cast<std::uint64_t>(k) + 1) +
                       static_cast<std::size_t>(k);
    if (cost > static_cast<std::size_t>(cfg.machine_bits)) break;
    if (static_cast<std::size_t>(k) > cfg.machine_steps ||
        static_cast<std::size_t>(k) > main_approx->max_query_len())
      break;
    for (std::uint64_t j = 0; j < (1ull << k) && literals.size() < 20; ++j) {
      Seq s;
      for (int b = k - 1; b >= 0; --b) s.push_back(static_cast<int>((j >> b) & 1));
      literals.emplace_back(std::move(s), cost);
    }
  }
  if (literals.empty()) {
    ctx.note("machine.bits too small to fit any literal program, dominance check skipped");
  } else {
    bool ok = true;
    double min_slack = std::numeric_limits<double>::infinity();
    for (const auto& [s, cost] : literals) {
      Rational v = main_approx->value_exact(s);
      Rational mass = dyadic(cost);
      if (v < mass) ok = false;
      min_slack = std::min(min_slack, to_double(Rational(v / mass)));
    }
    ctx.line("dominates-literal-programs", ok, min_slack, 1.0);
    ctx.note("checked " + std::to_string(literals.size()) + " literal programs");
  }

  auto csv = ctx.open("solomonoff.csv");
  CsvWriter w(csv, {"check", "status", "slack"});
  for (const auto& l : ctx.lines)
    w.row({l.check, l.passed ? "pass" : "fail", format_double17(l.value)});
  ctx.note("enumerated " + std::to_string(main_approx->programs().size()) +
           " complete programs at L=" + std::to_string(cfg.machine_bits) +
           ", T=" + std::to_string(cfg.machine_steps));
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  fs::path dir(cfg.out_dir);
  Ctx ctx{cfg, dir, log, {}, {}};
  switch (cfg.experiment) {
    case ExperimentKind::kDominance: run_dominance(ctx); break;
    case ExperimentKind::kConvergeExact: run_converge_exact(ctx); break;
    case ExperimentKind::kConvergeMc: run_converge_mc(ctx); break;
    case ExperimentKind::kGap: run_gap(ctx); break;
    case ExperimentKind::kDense: run_dense(ctx); break;
    case ExperimentKind::kDiverge: run_diverge(ctx); break;
    case ExperimentKind::kSolomonoffInvariants: run_solomonoff(ctx); break;
  }

  {
    auto sf = ctx.open("summary.txt");
    write_summary(sf, ctx.lines);
  }

  RunOutcome out;
  out.summary = ctx.lines;
  out.files_written = ctx.files;
  out.exit_code = std::all_of(ctx.lines.begin(), ctx.lines.end(),
                              [](const SummaryLine& l) { return l.passed; })
                      ? 0
                      : 1;
  if (!cfg.quiet) {
    for (const auto& l : ctx.lines)
      log << (l.passed ? "[pass] " : "[fail] ") << l.check << " value=" << format_double17(l.value)
          << " bound=" << format_double17(l.bound) << "\n";
    log << "wrote:";
    for (const auto& f : ctx.files) log << " " << f;
    log << "\n";
  }
  return out;
}

}  // namespace uniprior
