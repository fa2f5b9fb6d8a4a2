#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "uniprior/errors.hpp"

namespace uniprior {

/* Elias gamma code: floor(log2 n) zeros, then n in binary. Prefix free over n >= 1. */
inline unsigned elias_gamma_length(std::uint64_t n) {
  if (n == 0) throw ValidationError("elias gamma undefined for 0");
  unsigned bits = 0;
  while (n >> bits != 1) ++bits;  /* bits = floor(log2 n) */
  return 2 * bits + 1;
}

inline void elias_gamma_encode(std::uint64_t n, std::vector<std::uint8_t>& out) {
  if (n == 0) throw ValidationError("elias gamma undefined for 0");
  unsigned bits = 0;
  while (n >> bits != 1) ++bits;
  for (unsigned i = 0; i < bits; ++i) out.push_back(0);
  for (unsigned i = 0; i <= bits; ++i) out.push_back(static_cast<std::uint8_t>((n >> (bits - i)) & 1u));
}

/*
 * Pull-based bit reader for machine runs. nullopt from next() means the
 * provided program prefix is exhausted (the machine wants more bits).
 */
class BitSource {
public:
  explicit BitSource(const std::vector<std::uint8_t>& bits) : bits_(&bits) {}

  std::optional<int> next() {
    if (pos_ >= bits_->size()) return std::nullopt;
    return (*bits_)[pos_++];
  }
  std::size_t consumed() const { return pos_; }

private:
  const std::vector<std::uint8_t>* bits_;
  std::size_t pos_ = 0;
};

/* Decodes one gamma codeword; nullopt if the source ran out mid-code. */
inline std::optional<std::uint64_t> elias_gamma_decode(BitSource& src) {
  unsigned zeros = 0;
  while (true) {
    auto b = src.next();
    if (!b) return std::nullopt;
    if (*b == 1) break;
    if (++zeros > 63) throw ValidationError("elias gamma: codeword too long");
  }
  std::uint64_t value = 1;
  for (unsigned i = 0; i < zeros; ++i) {
    auto b = src.next();
    if (!b) return std::nullopt;
    value = (value << 1) | static_cast<std::uint64_t>(*b);
  }
  return value;
}

}  // namespace uniprior
