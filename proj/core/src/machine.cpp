#include "uniprior/machine.hpp"

namespace uniprior {

ProgramInfo MonotoneMachine::describe(const std::vector<std::uint8_t>& program) const {
  return ProgramInfo{0, program};
}

RunResult run_budgeted(const MonotoneMachine& machine, const std::vector<std::uint8_t>& program,
                       std::size_t max_output) {
  BitSource src(program);
  return machine.run(src, max_output);
}

ProgramFamilyMachine::ProgramFamilyMachine(Alphabet output_alphabet)
    : alphabet_(output_alphabet) {}

void ProgramFamilyMachine::register_family(std::uint64_t index, FamilyRunner runner) {
  if (index < 4) throw ValidationError("family indices 1..3 are built in");
  if (!runner) throw ValidationError("null family runner");
  extra_families_[index] = std::move(runner);
}

namespace {

unsigned symbol_bits(const Alphabet& a) {
  unsigned bits = 0;
  while ((1u << bits) < static_cast<unsigned>(a.size())) ++bits;
  return bits;  /* 0 would need size 1; alphabet floor is 2 */
}

/* block code: gamma(len + 1), then len fixed-width symbols */
enum class LiteralDecode { kOk, kNeedsMore, kMalformed };

LiteralDecode decode_literal(BitSource& src, const Alphabet& a, Seq& out) {
  auto len_code = elias_gamma_decode(src);
  if (!len_code) return LiteralDecode::kNeedsMore;
  std::uint64_t len = *len_code - 1;
  unsigned width = symbol_bits(a);
  for (std::uint64_t i = 0; i < len; ++i) {
    unsigned sym = 0;
    for (unsigned b = 0; b < width; ++b) {
      auto bit = src.next();
      if (!bit) return LiteralDecode::kNeedsMore;
      sym = (sym << 1) | static_cast<unsigned>(*bit);
    }
    if (sym >= static_cast<unsigned>(a.size())) return LiteralDecode::kMalformed;
    out.push_back(static_cast<int>(sym));
  }
  return LiteralDecode::kOk;
}

void encode_literal(const Seq& s, const Alphabet& a, std::vector<std::uint8_t>& out) {
  if (!s.valid_for(a)) throw ValidationError("literal outside the output alphabet");
  elias_gamma_encode(s.size() + 1, out);
  unsigned width = symbol_bits(a);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (unsigned b = width; b-- > 0;)
      out.push_back(static_cast<std::uint8_t>((static_cast<unsigned>(s[i]) >> b) & 1u));
}

}  // namespace

RunResult ProgramFamilyMachine::run(BitSource& bits, std::size_t max_output) const {
  auto finish = [&](Seq output, RunStatus status) {
    return RunResult{std::move(output), bits.consumed(), status};
  };
  auto family = elias_gamma_decode(bits);
  if (!family) return finish({}, RunStatus::kNeedsMoreProgram);

  switch (*family) {
    case 1: {  /* print literal, halt */
      Seq lit;
      switch (decode_literal(bits, alphabet_, lit)) {
        case LiteralDecode::kNeedsMore:
          return finish({}, RunStatus::kNeedsMoreProgram);
        case LiteralDecode::kMalformed:
          return finish({}, RunStatus::kHalted);
        case LiteralDecode::kOk:
          break;
      }
      if (lit.size() <= max_output) return finish(std::move(lit), RunStatus::kHalted);
      return finish(lit.prefix(max_output), RunStatus::kOngoing);
    }
    case 2: {  /* repeat literal forever */
      Seq lit;
      switch (decode_literal(bits, alphabet_, lit)) {
        case LiteralDecode::kNeedsMore:
          return finish({}, RunStatus::kNeedsMoreProgram);
        case LiteralDecode::kMalformed:
          return finish({}, RunStatus::kHalted);
        case LiteralDecode::kOk:
          break;
      }
      if (lit.empty()) return finish({}, RunStatus::kHalted);  /* nothing to repeat */
      Seq out;
      for (std::size_t i = 0; i < max_output; ++i) out.push_back(lit[i % lit.size()]);
      return finish(std::move(out), RunStatus::kOngoing);
    }
    case 3: {  /* autonomous automaton, <= 4 states */
      unsigned stateCount = 0;
      for (int b = 0; b < 2; ++b) {
        auto bit = bits.next();
        if (!bit) return finish({}, RunStatus::kNeedsMoreProgram);
        stateCount = (stateCount << 1) | static_cast<unsigned>(*bit);
      }
      stateCount += 1;
      unsigned next_width = stateCount <= 1 ? 0 : (stateCount <= 2 ? 1 : 2);
      unsigned width = symbol_bits(alphabet_);
      std::vector<int> emit(stateCount);
      std::vector<unsigned> next(stateCount);
      for (unsigned s = 0; s < stateCount; ++s) {
        unsigned sym = 0;
        for (unsigned b = 0; b < width; ++b) {
          auto bit = bits.next();
          if (!bit) return finish({}, RunStatus::kNeedsMoreProgram);
          sym = (sym << 1) | static_cast<unsigned>(*bit);
        }
        if (sym >= static_cast<unsigned>(alphabet_.size()))
          return finish({}, RunStatus::kHalted);
        emit[s] = static_cast<int>(sym);
        unsigned nx = 0;
        for (unsigned b = 0; b < next_width; ++b) {
          auto bit = bits.next();
          if (!bit) return finish({}, RunStatus::kNeedsMoreProgram);
          nx = (nx << 1) | static_cast<unsigned>(*bit);
        }
        if (nx >= stateCount) return finish({}, RunStatus::kHalted);  /* dangling edge */
        next[s] = nx;
      }
      Seq out;
      unsigned state = 0;
      for (std::size_t i = 0; i < max_output; ++i) {
        out.push_back(emit[state]);
        state = next[state];
      }
      return finish(std::move(out), RunStatus::kOngoing);
    }
    default: {
      auto it = extra_families_.find(*family);
      if (it == extra_families_.end()) return finish({}, RunStatus::kHalted);  /* unknown: no-op */
      FamilyResult r = it->second(bits, max_output, alphabet_);
      return finish(std::move(r.output), r.status);
    }
  }
}

ProgramInfo ProgramFamilyMachine::describe(const std::vector<std::uint8_t>& program) const {
  BitSource src(program);
  auto family = elias_gamma_decode(src);
  if (!family) return ProgramInfo{0, program};
  ProgramInfo info;
  info.family = *family;
  info.payload.assign(program.begin() + static_cast<std::ptrdiff_t>(src.consumed()),
                      program.end());
  return info;
}

std::vector<std::uint8_t> ProgramFamilyMachine::literal_program(const Seq& s) const {
  std::vector<std::uint8_t> out;
  elias_gamma_encode(1, out);
  encode_literal(s, alphabet_, out);
  return out;
}

std::vector<std::uint8_t> ProgramFamilyMachine::repeat_program(const Seq& s) const {
  if (s.empty()) throw ValidationError("repeat program needs a nonempty literal");
  std::vector<std::uint8_t> out;
  elias_gamma_encode(2, out);
  encode_literal(s, alphabet_, out);
  return out;
}

}  // namespace uniprior
