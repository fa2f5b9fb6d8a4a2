#include "uniprior/rational.hpp"

#include <sstream>

namespace uniprior {

Rational parse_rational(std::string_view text) {
  auto bad = [&] { return ValidationError("cannot parse rational: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

Rational rational_pow(const Rational& base, unsigned exp) {
  Rational acc(1);
  Rational b = base;
  while (exp) {
    if (exp & 1u) acc *= b;
    b *= b;
    exp >>= 1u;
  }
  return acc;
}

}  // namespace uniprior
