#include <doctest.h>

#include <cmath>

#include "uniprior/coding.hpp"
#include "uniprior/rational.hpp"

using namespace uniprior;

TEST_SUITE("rational_coding") {

TEST_CASE("make and parse rationals") {
  CHECK(make_rational(1, 2) == Rational(1) / 2);
  CHECK(make_rational(2, 4) == make_rational(1, 2));  /* canonical form */
  CHECK_THROWS_AS(make_rational(1, 0), ValidationError);

  CHECK(parse_rational("3/16") == make_rational(3, 16));
  CHECK(parse_rational("2") == Rational(2));
  CHECK(parse_rational("0") == Rational(0));
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
  CHECK_THROWS_AS(parse_rational(""), ValidationError);
}

TEST_CASE("format round-trips") {
  for (const char* s : {"0", "1", "1/2", "3/16", "7/12"}) {
    CHECK(format_rational(parse_rational(s)) == s);
  }
}

TEST_CASE("probability range and conversion helpers") {
  CHECK(is_probability(make_rational(1, 3)));
  CHECK(is_probability(Rational(0)));
  CHECK(is_probability(Rational(1)));
  CHECK_FALSE(is_probability(make_rational(-1, 2)));
  CHECK_FALSE(is_probability(make_rational(3, 2)));

  CHECK(to_double(make_rational(1, 4)) == 0.25);
  CHECK(to_log_prob(make_rational(1, 4)).log() == doctest::Approx(std::log(0.25)).epsilon(1e-15));
  CHECK(to_log_prob(Rational(0)).is_zero());
  CHECK_THROWS_AS(to_log_prob(make_rational(-1, 2)), ValidationError);
}

TEST_CASE("dyadic and integer powers") {
  CHECK(dyadic(0) == Rational(1));
  CHECK(dyadic(5) == make_rational(1, 32));
  CHECK(rational_pow(make_rational(1, 2), 10) == make_rational(1, 1024));
  CHECK(rational_pow(make_rational(2, 3), 0) == Rational(1));
  CHECK(rational_pow(make_rational(2, 3), 3) == make_rational(8, 27));
}

TEST_CASE("elias gamma lengths") {
  CHECK(elias_gamma_length(1) == 1);
  CHECK(elias_gamma_length(2) == 3);
  CHECK(elias_gamma_length(3) == 3);
  CHECK(elias_gamma_length(4) == 5);
  CHECK(elias_gamma_length(7) == 5);
  CHECK(elias_gamma_length(8) == 7);
  CHECK_THROWS_AS(elias_gamma_length(0), ValidationError);
}

TEST_CASE("elias gamma encode/decode round-trip") {
  for (std::uint64_t n : {1ull, 2ull, 3ull, 4ull, 17ull, 255ull, 1000ull}) {
    std::vector<std::uint8_t> bits;
    elias_gamma_encode(n, bits);
    CHECK(bits.size() == elias_gamma_length(n));
    BitSource src(bits);
    auto back = elias_gamma_decode(src);
    REQUIRE(back.has_value());
    CHECK(*back == n);
    CHECK(src.consumed() == bits.size());
  }
}

TEST_CASE("known codewords") {
  std::vector<std::uint8_t> bits;
  elias_gamma_encode(1, bits);
  CHECK(bits == std::vector<std::uint8_t>{1});
  bits.clear();
  elias_gamma_encode(2, bits);
  CHECK(bits == std::vector<std::uint8_t>{0, 1, 0});
  bits.clear();
  elias_gamma_encode(5, bits);
  CHECK(bits == std::vector<std::uint8_t>{0, 0, 1, 0, 1});
}

TEST_CASE("decode reports exhaustion instead of inventing bits") {
  std::vector<std::uint8_t> bits{0, 1};  /* gamma(2..3) cut short */
  BitSource src(bits);
  CHECK_FALSE(elias_gamma_decode(src).has_value());

  std::vector<std::uint8_t> empty;
  BitSource src2(empty);
  CHECK_FALSE(elias_gamma_decode(src2).has_value());
}

TEST_CASE("codewords are prefix free over small n") {
  std::vector<std::vector<std::uint8_t>> codes;
  for (std::uint64_t n = 1; n <= 64; ++n) {
    std::vector<std::uint8_t> bits;
    elias_gamma_encode(n, bits);
    codes.push_back(std::move(bits));
  }
  for (std::size_t i = 0; i < codes.size(); ++i)
    for (std::size_t j = 0; j < codes.size(); ++j) {
      if (i == j) continue;
      bool prefix = codes[i].size() <= codes[j].size() &&
                    std::equal(codes[i].begin(), codes[i].end(), codes[j].begin());
      CHECK_FALSE(prefix);
    }
}

}  // TEST_SUITE
