#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "uniprior/errors.hpp"

namespace uniprior {

/*
 * Probability kept as its natural logarithm so products over long horizons
 * do not underflow. Zero probability is -inf. Addition is log-sum-exp.
 */
class LogProb {
public:
  LogProb() : log_(-std::numeric_limits<double>::infinity()) {}

  static LogProb zero() { return LogProb(); }
  static LogProb one() { return from_log(0.0); }

  static LogProb from_log(double lg) {
    LogProb p;
    p.log_ = lg;
    return p;
  }

  static LogProb from_linear(double v) {
    if (std::isnan(v) || v < 0.0)
      throw ValidationError("LogProb::from_linear: negative or NaN input");
    return from_log(v == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(v));
  }

  double log() const { return log_; }
  double linear() const { return std::exp(log_); }
  bool is_zero() const { return std::isinf(log_) && log_ < 0.0; }

  LogProb operator*(LogProb o) const {
    if (is_zero() || o.is_zero()) return zero();
    return from_log(log_ + o.log_);
  }
  LogProb& operator*=(LogProb o) { return *this = *this * o; }

  LogProb operator/(LogProb o) const {
    if (o.is_zero()) throw UndefinedConditionalError("LogProb: division by zero probability");
    if (is_zero()) return zero();
    return from_log(log_ - o.log_);
  }
  LogProb& operator/=(LogProb o) { return *this = *this / o; }

  LogProb operator+(LogProb o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    double hi = log_, lo = o.log_;
    if (hi < lo) std::swap(hi, lo);
    return from_log(hi + std::log1p(std::exp(lo - hi)));
  }
  LogProb& operator+=(LogProb o) { return *this = *this + o; }

  bool operator==(const LogProb& o) const = default;
  bool operator<(LogProb o) const { return log_ < o.log_; }
  bool operator<=(LogProb o) const { return log_ <= o.log_; }
  bool operator>(LogProb o) const { return log_ > o.log_; }
  bool operator>=(LogProb o) const { return log_ >= o.log_; }

private:
  double log_;
};

/* Stable log(sum(exp(v))) over raw log values; empty input gives -inf. */
inline double log_sum_exp(std::span<const double> logs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : logs)
    if (v > hi) hi = v;
  if (std::isinf(hi) && hi < 0.0) return hi;
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - hi);
  return hi + std::log(acc);
}

}  // namespace uniprior
