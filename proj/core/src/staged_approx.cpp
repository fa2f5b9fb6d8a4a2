#include "uniprior/staged_approx.hpp"

#include <deque>
#include <ostream>

namespace uniprior {

StagedApprox::StagedApprox(std::shared_ptr<const MonotoneMachine> machine, int bit_budget,
                           std::size_t step_budget, std::size_t max_query_len)
    : machine_(std::move(machine)),
      bit_budget_(bit_budget),
      step_budget_(step_budget),
      max_query_(max_query_len) {
  if (!machine_) throw ValidationError("StagedApprox without a machine");
  if (bit_budget_ < 0 || bit_budget_ > 24)
    throw ValidationError("program bit budget must be in [0, 24]");
  if (step_budget_ < 1 || step_budget_ > 1000000)
    throw ValidationError("step budget must be in [1, 1e6]");
  const std::size_t emit_cap = std::min(step_budget_, max_query_);

  std::deque<std::vector<std::uint8_t>> frontier;
  frontier.push_back({});
  while (!frontier.empty()) {
    std::vector<std::uint8_t> bits = std::move(frontier.front());
    frontier.pop_front();
    RunResult r = run_budgeted(*machine_, bits, emit_cap);
    if (r.status == RunStatus::kNeedsMoreProgram) {
      if (static_cast<int>(bits.size()) < bit_budget_) {
        for (std::uint8_t b : {0, 1}) {
          auto child = bits;
          child.push_back(b);
          frontier.push_back(std::move(child));
        }
      }
      continue;
    }
    ProgramInfo info = machine_->describe(bits);
    programs_.push_back(EnumeratedProgram{std::move(bits), info.family, std::move(info.payload),
                                          std::move(r.output),
                                          r.status == RunStatus::kHalted});
  }
}

bool StagedApprox::matches(const EnumeratedProgram& p, const Seq& x) const {
  return x.size() <= p.output.size() && x.is_prefix_of(p.output);
}

Rational StagedApprox::value_exact(const Seq& x) const {
  if (!x.valid_for(machine_->output_alphabet()))
    throw ValidationError("query outside the machine output alphabet");
  if (x.size() > max_query_)
    throw ValidationError("query longer than the configured output cap");
  if (x.empty()) return Rational(1);  /* the root read-prefix matches everything */
  Rational acc(0);
  for (const auto& p : programs_)
    if (matches(p, x)) acc += dyadic(static_cast<unsigned>(p.bits.size()));
  return acc;
}

LogProb StagedApprox::value(const Seq& x) const { return to_log_prob(value_exact(x)); }

std::vector<const EnumeratedProgram*> StagedApprox::contributors(const Seq& x) const {
  std::vector<const EnumeratedProgram*> out;
  for (const auto& p : programs_)
    if (matches(p, x)) out.push_back(&p);
  return out;
}

Rational StagedApprox::kraft_sum() const {
  Rational acc(0);
  for (const auto& p : programs_) acc += dyadic(static_cast<unsigned>(p.bits.size()));
  return acc;
}

void StagedApprox::dump_listing(std::ostream& os) const {
  auto bits_str = [](const std::vector<std::uint8_t>& bits) {
    if (bits.empty()) return std::string("-");
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
  };
  for (const auto& p : programs_) {
    std::string out = p.output.empty() ? "-" : p.output.prefix(32).str();
    os << p.family << '\t' << bits_str(p.payload) << '\t' << p.bits.size() << '\t' << out
       << '\n';
  }
}

LogProb lower_approx(const StagedApprox& approx, const Seq& x) { return approx.value(x); }

namespace {

class MachineSemimeasure final : public PredictiveModel {
public:
  explicit MachineSemimeasure(std::shared_ptr<const StagedApprox> approx)
      : approx_(std::move(approx)),
        name_("machine(L=" + std::to_string(approx_->bit_budget()) +
              ",T=" + std::to_string(approx_->step_budget()) + ")") {}

  LogProb conditional(const Seq& history, int symbol) const override {
    return to_log_prob(conditional_exact(history, symbol));
  }
  ModelKind kind() const override { return ModelKind::kSemimeasure; }
  const std::string& name() const override { return name_; }
  const Alphabet& alphabet() const override { return approx_->machine().output_alphabet(); }
  bool has_exact_conditionals() const override { return true; }
  Rational conditional_exact(const Seq& history, int symbol) const override {
    Rational denom = approx_->value_exact(history);
    if (denom == 0)
      throw UndefinedConditionalError("machine semimeasure: zero-mass history");
    return approx_->value_exact(history.concat(symbol)) / denom;
  }

private:
  std::shared_ptr<const StagedApprox> approx_;
  std::string name_;
};

class NormalizedMachine final : public PredictiveModel {
public:
  explicit NormalizedMachine(std::shared_ptr<const StagedApprox> approx)
      : approx_(std::move(approx)),
        name_("machine-normalized(L=" + std::to_string(approx_->bit_budget()) +
              ",T=" + std::to_string(approx_->step_budget()) + ")") {}

  LogProb conditional(const Seq& history, int symbol) const override {
    return to_log_prob(conditional_exact(history, symbol));
  }
  ModelKind kind() const override { return ModelKind::kMeasure; }
  const std::string& name() const override { return name_; }
  const Alphabet& alphabet() const override { return approx_->machine().output_alphabet(); }
  bool has_exact_conditionals() const override { return true; }
  Rational conditional_exact(const Seq& history, int symbol) const override {
    Rational total(0);
    for (int s = 0; s < alphabet().size(); ++s)
      total += approx_->value_exact(history.concat(s));
    if (total == 0)
      throw UndefinedNormalizationError("normalized machine: no continuation has mass");
    return approx_->value_exact(history.concat(symbol)) / total;
  }

private:
  std::shared_ptr<const StagedApprox> approx_;
  std::string name_;
};

}  // namespace

std::shared_ptr<const PredictiveModel> machine_semimeasure(
    std::shared_ptr<const StagedApprox> approx) {
  return std::make_shared<MachineSemimeasure>(std::move(approx));
}

std::shared_ptr<const PredictiveModel> normalize_machine(
    std::shared_ptr<const StagedApprox> approx) {
  return std::make_shared<NormalizedMachine>(std::move(approx));
}

}  // namespace uniprior
