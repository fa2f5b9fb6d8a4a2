#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uniprior/errors.hpp"

namespace uniprior {

class Alphabet {
public:
  explicit Alphabet(int size = 2) : size_(size) {
    if (size < 2 || size > 256) throw ValidationError("alphabet size must be in [2, 256]");
  }
  int size() const { return size_; }
  bool operator==(const Alphabet&) const = default;

private:
  int size_;
};

/* Finite symbol string; symbols are small integers indexed into an alphabet. */
class Seq {
public:
  Seq() = default;
  explicit Seq(std::vector<std::uint8_t> syms) : syms_(std::move(syms)) {}

  /* "0110" style digit strings, symbols 0..9 */
  static Seq parse(std::string_view digits) {
    Seq s;
    s.syms_.reserve(digits.size());
    for (char c : digits) {
      if (c < '0' || c > '9') throw ValidationError("Seq::parse: non-digit symbol");
      s.syms_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return s;
  }

  static Seq zeros(std::size_t n) {
    Seq s;
    s.syms_.assign(n, 0);
    return s;
  }

  std::size_t size() const { return syms_.size(); }
  bool empty() const { return syms_.empty(); }
  int operator[](std::size_t i) const { return syms_[i]; }

  void push_back(int symbol) {
    if (symbol < 0 || symbol > 255) throw ValidationError("Seq: symbol out of range");
    syms_.push_back(static_cast<std::uint8_t>(symbol));
  }
  void pop_back() { syms_.pop_back(); }

  Seq prefix(std::size_t n) const {
    return Seq(std::vector<std::uint8_t>(syms_.begin(), syms_.begin() + std::min(n, syms_.size())));
  }

  Seq concat(int symbol) const {
    Seq s = *this;
    s.push_back(symbol);
    return s;
  }

  bool is_prefix_of(const Seq& other) const {
    if (size() > other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
      if (syms_[i] != other.syms_[i]) return false;
    return true;
  }

  bool valid_for(const Alphabet& a) const {
    for (auto s : syms_)
      if (s >= a.size()) return false;
    return true;
  }

  std::string str() const {
    std::string out;
    out.reserve(syms_.size());
    for (auto s : syms_) out.push_back(static_cast<char>('0' + s));
    return out;
  }

  auto begin() const { return syms_.begin(); }
  auto end() const { return syms_.end(); }
  bool operator==(const Seq&) const = default;
  bool operator<(const Seq& o) const { return syms_ < o.syms_; }

private:
  std::vector<std::uint8_t> syms_;
};

}  // namespace uniprior
