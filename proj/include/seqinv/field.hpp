#pragma once

/**
 * @file field.hpp
 * @brief Prime-field scalars and base-p digit strings.
 *
 * Everything downstream (series, automata, counting) works with residues
 * stored as `std::uint32_t` in [0, p) together with a `Prime`.  The bound
 * p < 2^16 keeps every product inside 32 bits, so intermediate arithmetic
 * never needs more than a 64-bit accumulator.
 */

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "seqinv/error.hpp"

namespace seqinv {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

class Prime {
 public:
  static constexpr u32 kLimit = 1u << 16;

  explicit Prime(u32 p) : p_(p) {
    if (p < 2 || p >= kLimit) throw Error("prime out of range: " + std::to_string(p));
    for (u32 d = 2; d * d <= p; ++d)
      if (p % d == 0) throw Error("not a prime: " + std::to_string(p));
  }

  u32 value() const { return p_; }
  operator u32() const { return p_; }

  friend bool operator==(Prime a, Prime b) { return a.p_ == b.p_; }

 private:
  u32 p_;
};

// Raw residue helpers shared by the vector kernels in series.hpp.
namespace fp {

inline u32 reduce(std::int64_t x, u32 p) {
  x %= static_cast<std::int64_t>(p);
  return static_cast<u32>(x < 0 ? x + p : x);
}
inline u32 add(u32 a, u32 b, u32 p) { u32 s = a + b; return s >= p ? s - p : s; }
inline u32 sub(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }
inline u32 neg(u32 a, u32 p) { return a == 0 ? 0 : p - a; }
inline u32 mul(u32 a, u32 b, u32 p) { return static_cast<u32>(static_cast<u64>(a) * b % p); }

inline u32 pow(u32 a, u64 e, u32 p) {
  u64 r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

inline u32 inv(u32 a, u32 p) {
  if (a % p == 0) throw Error("non-invertible");
  return pow(a, p - 2, p);
}

}  // namespace fp

class FieldElement {
 public:
  FieldElement(std::int64_t v, Prime p) : v_(fp::reduce(v, p)), p_(p) {}

  u32 value() const { return v_; }
  Prime modulus() const { return p_; }

  FieldElement operator+(FieldElement o) const { check(o); return raw(fp::add(v_, o.v_, p_)); }
  FieldElement operator-(FieldElement o) const { check(o); return raw(fp::sub(v_, o.v_, p_)); }
  FieldElement operator*(FieldElement o) const { check(o); return raw(fp::mul(v_, o.v_, p_)); }
  FieldElement operator-() const { return raw(fp::neg(v_, p_)); }
  FieldElement inv() const { return raw(fp::inv(v_, p_)); }
  FieldElement pow(u64 e) const { return raw(fp::pow(v_, e, p_)); }
  FieldElement operator/(FieldElement o) const { check(o); return *this * o.inv(); }

  friend bool operator==(FieldElement a, FieldElement b) { return a.p_ == b.p_ && a.v_ == b.v_; }
  friend std::ostream& operator<<(std::ostream& os, FieldElement a) { return os << a.v_; }

 private:
  FieldElement raw(u32 v) const { FieldElement r(0, p_); r.v_ = v; return r; }
  void check(FieldElement o) const {
    if (!(o.p_ == p_)) throw Error("modulus mismatch");
  }

  u32 v_;
  Prime p_;
};

/// Digits of a natural number, least significant first.  `base` is the
/// alphabet size: a prime for the kernel machines, p^j after recoding.
struct DigitString {
  std::vector<u32> digits;
  u32 base = 2;

  std::size_t size() const { return digits.size(); }
  bool empty() const { return digits.empty(); }
  bool canonical() const { return digits.empty() || digits.back() != 0; }

  /// Reading order (LSD first), e.g. "12" for the word 1 then 2.
  std::string str() const {
    std::string s;
    for (u32 d : digits) {
      if (base <= 10) s += static_cast<char>('0' + d);
      else { if (!s.empty()) s += ','; s += std::to_string(d); }
    }
    return s;
  }

  friend bool operator==(const DigitString&, const DigitString&) = default;
};

inline DigitString digits_lsd(u64 n, u32 base) {
  if (base < 2) throw Error("base must be at least 2");
  DigitString d{{}, base};
  while (n) {
    d.digits.push_back(static_cast<u32>(n % base));
    n /= base;
  }
  return d;
}

/// Pads (or keeps) to exactly `width` digits; throws if n needs more.
inline DigitString digits_lsd_padded(u64 n, u32 base, std::size_t width) {
  DigitString d = digits_lsd(n, base);
  if (d.size() > width) throw Error("value does not fit the requested digit width");
  d.digits.resize(width, 0);
  return d;
}

inline u64 value_lsd(const DigitString& d) {
  u64 v = 0;
  for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
    if (*it >= d.base) throw Error("digit out of range");
    v = v * d.base + *it;
  }
  return v;
}

/// Parses a word written in reading order ("1111001"); digits 0-9 only.
inline DigitString parse_word(const std::string& s, u32 base) {
  DigitString d{{}, base};
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw Error("bad digit in word: " + s);
    u32 v = static_cast<u32>(ch - '0');
    if (v >= base) throw Error("digit out of range in word: " + s);
    d.digits.push_back(v);
  }
  return d;
}

inline FieldElement digit_sum(u64 n, Prime p) {
  u64 s = 0;
  for (; n; n /= p) s += n % p;
  return FieldElement(static_cast<std::int64_t>(s % p), p);
}

}  // namespace seqinv
