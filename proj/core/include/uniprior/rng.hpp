#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "uniprior/errors.hpp"

namespace uniprior {

/*
 * Philox4x64-10 counter-based generator. Pure function of (counter, key),
 * so sample i of stream s is reproducible regardless of evaluation order
 * or thread count. Matches the reference implementation bit for bit
 * (checked against frozen vectors in the tests).
 */
struct Philox4x64 {
  static constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
  static constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

  static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> ctr,
                                            std::array<std::uint64_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      if (round != 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      using u128 = unsigned __int128;
      u128 p0 = static_cast<u128>(kMul0) * ctr[0];
      u128 p1 = static_cast<u128>(kMul1) * ctr[2];
      std::array<std::uint64_t, 4> next = {
          static_cast<std::uint64_t>(p1 >> 64) ^ ctr[1] ^ key[0],
          static_cast<std::uint64_t>(p1),
          static_cast<std::uint64_t>(p0 >> 64) ^ ctr[3] ^ key[1],
          static_cast<std::uint64_t>(p0),
      };
      ctr = next;
    }
    return ctr;
  }
};

/*
 * One logical random stream: key = (seed, stream id), counter walks 0,1,2,...
 * Streams with distinct ids never collide, which is what makes Monte Carlo
 * estimates identical across serial and parallel schedules.
 */
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) : key_{seed, stream} {}

  std::uint64_t next_u64() {
    if (pos_ == 4) {
      buf_ = Philox4x64::block({counter_++, 0, 0, 0}, key_);
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  /* uniform in [0,1) with 53 random bits */
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /* inverse-cdf draw from a linear-domain distribution */
  int next_symbol(std::span<const double> probs) {
    double u = next_unit();
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) return static_cast<int>(i);
    }
    /* rounding leftovers land on the last symbol with positive mass */
    for (std::size_t i = probs.size(); i-- > 0;)
      if (probs[i] > 0.0) return static_cast<int>(i);
    throw ValidationError("next_symbol: all-zero distribution");
  }

private:
  std::array<std::uint64_t, 2> key_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 4> buf_{};
  int pos_ = 4;
};

}  // namespace uniprior
