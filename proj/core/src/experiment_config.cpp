#include "uniprior/experiment_config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "uniprior/errors.hpp"

namespace uniprior {

namespace {

struct ExperimentNames {
  ExperimentKind kind;
  std::string_view name;
};

constexpr std::array<ExperimentNames, 7> kExperiments{{
    {ExperimentKind::kDominance, "dominance"},
    {ExperimentKind::kConvergeExact, "converge-exact"},
    {ExperimentKind::kConvergeMc, "converge-mc"},
    {ExperimentKind::kGap, "gap"},
    {ExperimentKind::kDense, "dense"},
    {ExperimentKind::kDiverge, "diverge"},
    {ExperimentKind::kSolomonoffInvariants, "solomonoff-invariants"},
}};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_bool(std::string_view key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("bad boolean for " + std::string(key) + ": " + v);
}

std::uint64_t parse_u64(std::string_view key, const std::string& v) {
  try {
    std::size_t pos = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    auto out = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing junk");
    return out;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + std::string(key) + ": " + v);
  }
}

Rational parse_theta(std::string_view key, const std::string& v) {
  try {
    return parse_rational(v);
  } catch (const ValidationError& e) {
    throw ConfigError("bad rational for " + std::string(key) + ": " + e.what());
  }
}

std::vector<Rational> parse_theta_list(const std::string& v) {
  std::vector<Rational> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = trim(item);
    if (t.empty()) throw ConfigError("empty entry in class.thetas");
    out.push_back(parse_theta("class.thetas", t));
  }
  return out;
}

std::string format_theta_list(const std::vector<Rational>& thetas) {
  std::string out;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (i) out += ",";
    out += format_rational(thetas[i]);
  }
  return out;
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
  for (const auto& e : kExperiments)
    if (e.kind == kind) return std::string(e.name);
  throw std::logic_error("unmapped experiment kind");
}

ExperimentKind parse_experiment(std::string_view name) {
  for (const auto& e : kExperiments)
    if (e.name == name) return e.kind;
  std::string known;
  for (const auto& e : kExperiments) {
    if (!known.empty()) known += ", ";
    known += e.name;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "' (known: " + known + ")");
}

void ExperimentConfig::apply_override(std::string_view key, std::string_view raw) {
  const std::string value = trim(raw);
  if (key == "experiment") {
    experiment = parse_experiment(value);
  } else if (key == "class.tag") {
    if (value == "dense")
      class_tag = ClassTag::kDense;
    else if (value == "gapped")
      class_tag = ClassTag::kGapped;
    else if (value == "custom")
      class_tag = ClassTag::kCustom;
    else
      throw ConfigError("unknown class.tag '" + value + "' (known: dense, gapped, custom)");
  } else if (key == "class.q") {
    auto q = parse_u64(key, value);
    if (q > 64) throw ConfigError("class.q too large: " + value);
    class_q = static_cast<int>(q);
  } else if (key == "class.theta0") {
    theta0 = parse_theta(key, value);
  } else if (key == "class.theta1") {
    theta1 = parse_theta(key, value);
  } else if (key == "class.thetas") {
    custom_thetas = parse_theta_list(value);
  } else if (key == "class.theta_true") {
    theta_true = parse_theta(key, value);
  } else if (key == "weights") {
    if (value == "surrogate")
      weights = WeightScheme::kSurrogate;
    else if (value == "uniform")
      weights = WeightScheme::kUniform;
    else
      throw ConfigError("unknown weights '" + value + "' (known: surrogate, uniform)");
  } else if (key == "n") {
    n = parse_u64(key, value);
  } else if (key == "seed") {
    seed = parse_u64(key, value);
  } else if (key == "samples") {
    samples = parse_u64(key, value);
  } else if (key == "backend") {
    if (value == "float")
      backend = Backend::kFloat;
    else if (value == "exact")
      backend = Backend::kExact;
    else
      throw ConfigError("unknown backend '" + value + "' (known: float, exact)");
  } else if (key == "out") {
    if (value.empty()) throw ConfigError("out must be nonempty");
    out_dir = value;
  } else if (key == "quiet") {
    quiet = parse_bool(key, value);
  } else if (key == "machine.bits") {
    auto b = parse_u64(key, value);
    if (b > 24) throw ConfigError("machine.bits capped at 24, got " + value);
    machine_bits = static_cast<int>(b);
  } else if (key == "machine.steps") {
    auto s = parse_u64(key, value);
    if (s > 1000000) throw ConfigError("machine.steps capped at 1000000, got " + value);
    machine_steps = s;
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto stripped = trim(line);
    if (stripped.empty()) continue;
    auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    auto key = trim(stripped.substr(0, eq));
    auto value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    try {
      cfg.apply_override(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse(in);
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  out << "experiment = " << experiment_name(experiment) << "\n";
  out << "class.tag = "
      << (class_tag == ClassTag::kDense    ? "dense"
          : class_tag == ClassTag::kGapped ? "gapped"
                                           : "custom")
      << "\n";
  out << "class.q = " << class_q << "\n";
  out << "class.theta0 = " << format_rational(theta0) << "\n";
  out << "class.theta1 = " << format_rational(theta1) << "\n";
  if (!custom_thetas.empty()) out << "class.thetas = " << format_theta_list(custom_thetas) << "\n";
  out << "class.theta_true = " << format_rational(theta_true) << "\n";
  out << "weights = " << (weights == WeightScheme::kSurrogate ? "surrogate" : "uniform") << "\n";
  out << "n = " << n << "\n";
  out << "seed = " << seed << "\n";
  out << "samples = " << samples << "\n";
  out << "backend = " << (backend == Backend::kFloat ? "float" : "exact") << "\n";
  out << "out = " << out_dir << "\n";
  out << "quiet = " << (quiet ? "true" : "false") << "\n";
  out << "machine.bits = " << machine_bits << "\n";
  out << "machine.steps = " << machine_steps << "\n";
  return out.str();
}

ParamClass ExperimentConfig::build_class() const {
  switch (class_tag) {
    case ClassTag::kDense:
      if (class_q < 1) throw ConfigError("class.q must be >= 1 for the dense class");
      return ParamClass::dense(class_q);
    case ClassTag::kGapped:
      if (class_q == 0) return ParamClass::gapped(theta0, theta1);
      return ParamClass::gapped_dense(class_q, theta0, theta1);
    case ClassTag::kCustom:
      if (custom_thetas.empty()) throw ConfigError("class.thetas required for the custom class");
      return ParamClass::custom(custom_thetas);
  }
  throw std::logic_error("unmapped class tag");
}

}  // namespace uniprior
