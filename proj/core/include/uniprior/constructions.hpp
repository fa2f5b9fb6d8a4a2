#pragma once

#include <cstdint>
#include <memory>

#include "uniprior/diagnostics.hpp"
#include "uniprior/param_class.hpp"

namespace uniprior {

/* Draws x_t ~ model(.|x_<t) on counter-based stream (seed, stream). */
Seq sample_sequence(const PredictiveModel& model, std::size_t n, std::uint64_t seed,
                    std::uint64_t stream = 0);

/*
 * Adversarial sequence for a two-bias class {theta0, theta1}: each step
 * emits the symbol that pulls the log likelihood ratio
 * S_t = log mu_theta1(x_1:t) - log mu_theta0(x_1:t) closest to zero (ties
 * emit 0). S stays inside [-max(inc1,-inc0), +max(inc1,-inc0)], so the
 * posterior never settles on either bias and the mixture predictive
 * oscillates between them forever; ones run at frequency
 * p* = -inc0 / (inc1 - inc0), strictly inside the gap.
 */
class GapSequenceBuilder {
public:
  GapSequenceBuilder(const Rational& theta0, const Rational& theta1);

  int step();  /* append one greedy symbol, return it */
  double state() const { return s_; }
  double inc1() const { return inc1_; }
  double inc0() const { return inc0_; }
  double bound() const { return std::max(inc1_, -inc0_); }
  double balance_frequency() const { return -inc0_ / (inc1_ - inc0_); }
  const Seq& sequence() const { return seq_; }

private:
  double s_ = 0.0;
  double inc1_, inc0_;
  Seq seq_;
};

Seq greedy_gap_sequence(const Rational& theta0, const Rational& theta1, std::size_t n);

/* Value-semantic recipe for a sequence; rebuilding gives identical bytes. */
struct SequenceSource {
  enum class Kind { kSampled, kGreedyGap, kAllZeros, kLiteral };
  Kind kind = Kind::kAllZeros;
  std::shared_ptr<const PredictiveModel> model;  /* kSampled */
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  Rational theta0, theta1;                       /* kGreedyGap */
  Seq literal;                                   /* kLiteral */

  Seq build(std::size_t n) const;
};

struct GapReport {
  Rational theta0, theta1;
  std::size_t n = 0;
  Seq sequence;
  double s_sup = 0.0;        /* max |S_t| along the run */
  double s_bound = 0.0;      /* max(inc1, -inc0) */
  double balance_freq = 0.0;
  double ones_freq = 0.0;
  std::vector<double> predictive1;  /* xi(1 | x_<t), t = 1..n */
  DeficiencyTrace def_theta0, def_theta1;
  /* window t in [n/10, n]: the tail where a dense class would have settled */
  double pred_late_min = 0.0, pred_late_max = 0.0;
  double margin_theta0 = 0.0, margin_theta1 = 0.0;  /* min |pred - theta_i| on the window */
};

/* Runs the greedy sequence against a mixture over the gapped class itself. */
GapReport gap_experiment(const ParamClass& cls, WeightScheme scheme, std::size_t n);

struct DenseReport {
  Rational theta_true;
  bool theta_in_class = true;  /* false -> truncation warning, nothing asserted */
  std::size_t n = 0, paths = 0;
  std::vector<double> deficiency_sup;    /* per path, vs the true coin */
  std::vector<double> last_decade_dev;   /* per path, mean |pred - theta| on [n/10, n] */
  double mean_last_decade_dev = 0.0;
  Rational theta_nearest;                /* closest other atom, for contrast */
  double mesh_spacing = 0.0;
  /* first path, for the CSV trace */
  std::vector<double> predictive1;
  DeficiencyTrace def_true, def_nearest;
};

/* Coin paths from theta_true scored by a mixture over the class. */
DenseReport dense_experiment(const ParamClass& cls, WeightScheme scheme,
                             const Rational& theta_true, std::size_t n, std::size_t paths,
                             std::uint64_t seed = 1);

struct DivergenceReport {
  std::size_t n = 0;
  /* r_t = xi(1 | 0^{t-1}) / mu(1 | 0^{t-1}): grows like t even though the
     all-zero sequence is perfectly mu-typical */
  std::vector<double> ratio;
  DeficiencyTrace def_mu;
  double growth = 0.0;  /* ratio(n) / ratio(n/10) */
  bool growth_checked = false;
  bool growth_ok = false;  /* in [8,12]; only claimed for n >= 1e4 */
};

/*
 * Two vanishing-bias measures (exponents 3 and 2), equal weights. The
 * mixture keeps betting on 1s far longer than the true component would, so
 * the off-sequence predictive ratio diverges while the deficiency along the
 * same sequence stays bounded: off-sequence ratios can blow up even on a
 * mu-random input.
 */
DivergenceReport divergence_example(std::size_t n);

}  // namespace uniprior
