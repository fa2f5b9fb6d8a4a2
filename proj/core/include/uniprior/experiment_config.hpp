#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uniprior/mixture.hpp"
#include "uniprior/param_class.hpp"

namespace uniprior {

enum class ExperimentKind {
  kDominance,
  kConvergeExact,
  kConvergeMc,
  kGap,
  kDense,
  kDiverge,
  kSolomonoffInvariants,
};

std::string experiment_name(ExperimentKind kind);
ExperimentKind parse_experiment(std::string_view name);

/*
 * Flat `key = value` file, # comments, every field defaulted, unknown keys
 * rejected. serialize() is canonical, so parse(serialize(c)) == c and
 * serializing twice is byte-stable.
 */
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kDominance;
  ClassTag class_tag = ClassTag::kDense;
  int class_q = 8;                       /* dense mesh bound; 0 = bare endpoints for gapped */
  Rational theta0 = make_rational(1, 4); /* gap endpoints */
  Rational theta1 = make_rational(1, 2);
  std::vector<Rational> custom_thetas;
  Rational theta_true = make_rational(1, 3);
  WeightScheme weights = WeightScheme::kSurrogate;
  std::size_t n = 10000;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  Backend backend = Backend::kFloat;
  std::string out_dir = "out";
  bool quiet = false;
  int machine_bits = 16;
  std::size_t machine_steps = 10000;

  static ExperimentConfig defaults() { return {}; }
  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig parse_file(const std::string& path);
  void apply_override(std::string_view key, std::string_view value);
  std::string serialize() const;

  ParamClass build_class() const;
  bool operator==(const ExperimentConfig&) const = default;
};

}  // namespace uniprior
