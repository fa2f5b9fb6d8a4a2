#pragma once

#include <cmath>
#include <vector>

#include "uniprior/mixture.hpp"

namespace uniprior::detail {

/*
 * Incremental log joint of one model along a growing history. Mixtures get
 * the per-component treatment so a length-n walk costs O(n * components)
 * instead of the O(n^2) a naive conditional chain would.
 */
class JointWalker {
public:
  explicit JointWalker(const PredictiveModel& model) : model_(&model) {
    mix_ = dynamic_cast<const Mixture*>(&model);
    if (mix_) {
      log_joint_comp_.assign(mix_->component_count(), 0.0);
      log_w_.reserve(mix_->component_count());
      for (std::size_t i = 0; i < mix_->component_count(); ++i)
        log_w_.push_back(to_log_prob(mix_->component(i).weight).log());
    }
  }

  /* log of the one-step conditional at `history` (the walker's current prefix) */
  double log_conditional(const Seq& history, int symbol) const {
    if (!mix_) return model_->conditional(history, symbol).log();
    double denom = mixture_log_joint();
    if (std::isinf(denom)) return -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    terms.reserve(log_joint_comp_.size());
    for (std::size_t i = 0; i < log_joint_comp_.size(); ++i) {
      if (std::isinf(log_joint_comp_[i])) continue;
      double step = mix_->component(i).model->conditional(history, symbol).log();
      if (std::isinf(step)) continue;
      terms.push_back(log_w_[i] + log_joint_comp_[i] + step);
    }
    if (terms.empty()) return -std::numeric_limits<double>::infinity();
    return log_sum_exp(terms) - denom;
  }

  void advance(const Seq& history, int symbol) {
    if (!mix_) {
      log_joint_ += model_->conditional(history, symbol).log();
      return;
    }
    for (std::size_t i = 0; i < log_joint_comp_.size(); ++i) {
      if (std::isinf(log_joint_comp_[i])) continue;
      log_joint_comp_[i] += mix_->component(i).model->conditional(history, symbol).log();
    }
  }

  double log_joint() const { return mix_ ? mixture_log_joint() : log_joint_; }

  /* snapshot / restore let tree walks branch without re-walking prefixes */
  std::vector<double> save() const {
    if (mix_) return log_joint_comp_;
    return {log_joint_};
  }
  void restore(const std::vector<double>& snap) {
    if (mix_)
      log_joint_comp_ = snap;
    else
      log_joint_ = snap[0];
  }

private:
  double mixture_log_joint() const {
    std::vector<double> terms;
    terms.reserve(log_joint_comp_.size());
    for (std::size_t i = 0; i < log_joint_comp_.size(); ++i)
      if (!std::isinf(log_joint_comp_[i])) terms.push_back(log_w_[i] + log_joint_comp_[i]);
    if (terms.empty()) return -std::numeric_limits<double>::infinity();
    return log_sum_exp(terms);
  }

  const PredictiveModel* model_;
  const Mixture* mix_ = nullptr;
  double log_joint_ = 0.0;
  std::vector<double> log_joint_comp_;
  std::vector<double> log_w_;
};

}  // namespace uniprior::detail
