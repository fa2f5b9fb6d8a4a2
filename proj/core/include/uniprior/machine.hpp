#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "uniprior/alphabet.hpp"
#include "uniprior/coding.hpp"

namespace uniprior {

enum class RunStatus {
  kHalted,           /* finished; output is final */
  kOngoing,          /* out of output budget, will emit more but never read again */
  kNeedsMoreProgram, /* consumed every provided bit and asked for another */
};

struct RunResult {
  Seq output;
  std::size_t bits_read = 0;
  RunStatus status = RunStatus::kHalted;
};

struct ProgramInfo {
  std::uint64_t family = 0;
  std::vector<std::uint8_t> payload;
};

/*
 * Program-driven generator. Reading bits never costs budget; `max_output`
 * caps emitted symbols, so a rerun with a larger budget extends the output
 * and never retracts it. kHalted and kOngoing both mean the program is
 * complete: the machine has stopped reading, and no extension of the bit
 * string is a different program.
 */
class MonotoneMachine {
public:
  virtual ~MonotoneMachine() = default;
  virtual RunResult run(BitSource& bits, std::size_t max_output) const = 0;
  virtual const Alphabet& output_alphabet() const = 0;
  virtual ProgramInfo describe(const std::vector<std::uint8_t>& program) const;
};

RunResult run_budgeted(const MonotoneMachine& machine, const std::vector<std::uint8_t>& program,
                       std::size_t max_output);

/*
 * Programs are a gamma-coded family index followed by a family payload:
 *   1  print a literal block-coded string, then halt
 *   2  repeat a literal block-coded string forever (empty is malformed)
 *   3  autonomous automaton over <= 4 states: 2 bits state count, then per
 *      state an output symbol and a next-state field; runs forever
 * Anything malformed, including unknown family indices, halts with empty
 * output, so every complete bit string is a program and the set of complete
 * programs is prefix free. Extra families can be registered at indices >= 4.
 */
class ProgramFamilyMachine final : public MonotoneMachine {
public:
  struct FamilyResult {
    Seq output;
    RunStatus status = RunStatus::kHalted;
  };
  using FamilyRunner =
      std::function<FamilyResult(BitSource&, std::size_t max_output, const Alphabet&)>;

  explicit ProgramFamilyMachine(Alphabet output_alphabet = Alphabet(2));

  RunResult run(BitSource& bits, std::size_t max_output) const override;
  const Alphabet& output_alphabet() const override { return alphabet_; }
  ProgramInfo describe(const std::vector<std::uint8_t>& program) const override;

  /* family-1 / family-2 encoders, used for audits and dominance checks */
  std::vector<std::uint8_t> literal_program(const Seq& s) const;
  std::vector<std::uint8_t> repeat_program(const Seq& s) const;

  void register_family(std::uint64_t index, FamilyRunner runner);

private:
  Alphabet alphabet_;
  std::map<std::uint64_t, FamilyRunner> extra_families_;
};

}  // namespace uniprior
