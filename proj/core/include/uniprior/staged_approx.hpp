#pragma once

#include <iosfwd>
#include <memory>

#include "uniprior/machine.hpp"
#include "uniprior/model.hpp"

namespace uniprior {

struct EnumeratedProgram {
  std::vector<std::uint8_t> bits;
  std::uint64_t family = 0;
  std::vector<std::uint8_t> payload;
  Seq output;          /* first min(T, query cap) symbols; full output if halted */
  bool halted = false;
};

/*
 * Budgeted lower approximation of the universal mixture over a monotone
 * machine. The program tree is explored breadth first: a node that consumed
 * every bit and asked for more is split into its two children (up to depth
 * L); a node that stopped reading is a complete program and a leaf. The
 * value of x sums 2^-len over complete programs whose budgeted output
 * extends x; each such program is the minimal read-prefix of its whole
 * subtree, so the counted set is an antichain and its Kraft sum is an exact
 * dyadic rational at most one. The empty string is matched by the root
 * before any bit is read, giving value(eps) = 1 exactly. Values never
 * decrease when either budget grows, and never exceed the true machine sum.
 */
class StagedApprox {
public:
  StagedApprox(std::shared_ptr<const MonotoneMachine> machine, int bit_budget,
               std::size_t step_budget, std::size_t max_query_len = 64);

  Rational value_exact(const Seq& x) const;
  LogProb value(const Seq& x) const;

  const std::vector<EnumeratedProgram>& programs() const { return programs_; }
  std::vector<const EnumeratedProgram*> contributors(const Seq& x) const;
  Rational kraft_sum() const;

  int bit_budget() const { return bit_budget_; }
  std::size_t step_budget() const { return step_budget_; }
  std::size_t max_query_len() const { return max_query_; }
  const MonotoneMachine& machine() const { return *machine_; }

  /* audit listing, one complete program per line:
     family <TAB> payload bits <TAB> code length <TAB> output prefix */
  void dump_listing(std::ostream& os) const;

private:
  bool matches(const EnumeratedProgram& p, const Seq& x) const;
  std::shared_ptr<const MonotoneMachine> machine_;
  int bit_budget_;
  std::size_t step_budget_;
  std::size_t max_query_;
  std::vector<EnumeratedProgram> programs_;
};

LogProb lower_approx(const StagedApprox& approx, const Seq& x);

/* Conditionals value(xa)/value(x): the raw, mass-leaking semimeasure. */
std::shared_ptr<const PredictiveModel> machine_semimeasure(
    std::shared_ptr<const StagedApprox> approx);

/* Conditionals renormalized over the next symbol: a proper measure. */
std::shared_ptr<const PredictiveModel> normalize_machine(
    std::shared_ptr<const StagedApprox> approx);

}  // namespace uniprior
