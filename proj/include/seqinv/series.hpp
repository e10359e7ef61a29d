#pragma once

/**
 * @file series.hpp
 * @brief Truncated power series over F_p and bivariate polynomials P(X, Y).
 *
 * A PowerSeries is known modulo X^order; every binary operation truncates to
 * the smaller order of its operands.  Multiplication goes through the NTT
 * convolution in ntt.hpp.  Powers Y^j are evaluated with the Frobenius
 * identity f^p = f(X^p), which holds for any series over the prime field.
 *
 * Root lifting (newton_root) follows the valuation form of Hensel's lemma:
 * with e = v(P'(y)) and r = v(P(y)), a seed y with r > 2e pins down a unique
 * root Y* with Y* = y mod X^(r-e), and each update y -= P(y)/P'(y) takes
 * precision m to 2m - e.  For e = 0 this is the usual doubling.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqinv/error.hpp"
#include "seqinv/field.hpp"
#include "seqinv/ntt.hpp"

namespace seqinv {

class PowerSeries {
 public:
  PowerSeries(Prime p, std::size_t order) : p_(p), c_(order, 0) {}

  PowerSeries(Prime p, std::vector<u32> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= p_;
  }

  static PowerSeries from_signed(Prime p, std::span<const std::int64_t> coeffs) {
    PowerSeries s(p, coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) s.c_[i] = fp::reduce(coeffs[i], p);
    return s;
  }

  /// coeff * X^exp known modulo X^order.
  static PowerSeries monomial(Prime p, std::size_t exp, u32 coeff, std::size_t order) {
    PowerSeries s(p, order);
    if (exp < order) s.c_[exp] = coeff % p;
    return s;
  }

  Prime modulus() const { return p_; }
  std::size_t order() const { return c_.size(); }
  const std::vector<u32>& coeffs() const { return c_; }
  std::vector<u32>& coeffs() { return c_; }
  u32 operator[](std::size_t i) const { return c_.at(i); }
  u32& operator[](std::size_t i) { return c_.at(i); }

  /// Index of the first nonzero coefficient, or order() when none is known.
  std::size_t valuation() const {
    auto it = std::find_if(c_.begin(), c_.end(), [](u32 v) { return v != 0; });
    return static_cast<std::size_t>(it - c_.begin());
  }
  bool is_zero() const { return valuation() == order(); }

  PowerSeries truncated(std::size_t n) const {
    if (n > order()) throw Error("cannot extend a truncated series");
    return PowerSeries(p_, std::vector<u32>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  /// Zero-extends; only meaningful when the caller knows the tail (polynomials).
  PowerSeries padded(std::size_t n) const {
    PowerSeries s = *this;
    s.c_.resize(n, 0);
    return s;
  }

  PowerSeries operator+(const PowerSeries& o) const { return zip(o, fp::add); }
  PowerSeries operator-(const PowerSeries& o) const { return zip(o, fp::sub); }
  PowerSeries operator-() const {
    PowerSeries r = *this;
    for (auto& v : r.c_) v = fp::neg(v, p_);
    return r;
  }
  PowerSeries operator*(const PowerSeries& o) const {
    same_field(o);
    std::size_t n = std::min(order(), o.order());
    return PowerSeries(p_, ntt::multiply(c_, o.c_, p_, n));
  }
  PowerSeries scaled(u32 k) const {
    PowerSeries r = *this;
    for (auto& v : r.c_) v = fp::mul(v, k % p_, p_);
    return r;
  }

  /// Reference product (quadratic), independent of the transform path.
  PowerSeries mul_schoolbook(const PowerSeries& o) const {
    same_field(o);
    std::size_t n = std::min(order(), o.order());
    return PowerSeries(p_, ntt::multiply_schoolbook(c_, o.c_, p_, n));
  }

  /// f(X) -> f(X^k); the result is known modulo X^(k * order).
  PowerSeries substitute_power(std::size_t k) const {
    if (k == 0) throw Error("substitution exponent must be positive");
    PowerSeries r(p_, order() * k);
    for (std::size_t i = 0; i < order(); ++i) r.c_[i * k] = c_[i];
    return r;
  }

  /// Multiplicative inverse, requires an invertible constant term.
  PowerSeries inverse() const {
    if (order() == 0) return *this;
    if (c_[0] == 0) throw Error("non-invertible");
    std::vector<u32> g{fp::inv(c_[0], p_)};
    const std::span<const u32> f(c_);
    for (std::size_t n = 1; n < order();) {
      n = std::min(2 * n, order());
      // g <- g (2 - f g)
      auto fg = ntt::multiply(f.first(n), g, p_, n);
      for (auto& v : fg) v = fp::neg(v, p_);
      fg[0] = fp::add(fg[0], 2 % p_, p_);
      g = ntt::multiply(g, fg, p_, n);
    }
    return PowerSeries(p_, std::move(g));
  }

  /// Drops the first k coefficients (division by X^k); they must be zero.
  PowerSeries shifted_down(std::size_t k) const {
    for (std::size_t i = 0; i < std::min(k, order()); ++i)
      if (c_[i] != 0) throw Error("series not divisible by X^" + std::to_string(k));
    if (k >= order()) return PowerSeries(p_, std::size_t{0});
    return PowerSeries(p_, std::vector<u32>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

 private:
  void same_field(const PowerSeries& o) const {
    if (!(o.p_ == p_)) throw Error("modulus mismatch");
  }
  PowerSeries zip(const PowerSeries& o, u32 (*op)(u32, u32, u32)) const {
    same_field(o);
    std::size_t n = std::min(order(), o.order());
    PowerSeries r(p_, n);
    for (std::size_t i = 0; i < n; ++i) r.c_[i] = op(c_[i], o.c_[i], p_);
    return r;
  }

  Prime p_;
  std::vector<u32> c_;
};

/// The identity series X known modulo X^order.
inline PowerSeries series_x(Prime p, std::size_t order) { return PowerSeries::monomial(p, 1, 1, order); }

/// f^e over the prime field, using f^(p^i) = f(X^(p^i)) for each base-p digit of e.
inline PowerSeries power(const PowerSeries& f, u64 e) {
  const Prime p = f.modulus();
  const std::size_t n = f.order();
  PowerSeries result = PowerSeries::monomial(p, 0, 1, n);
  bool have = false;
  u64 stride = 1;  // p^i, frozen once it reaches n (f(X^stride) is then just f[0])
  while (e) {
    u32 digit = static_cast<u32>(e % p);
    e /= p;
    if (digit) {
      PowerSeries frob(p, n);
      for (std::size_t i = 0; i * stride < n; ++i) frob[i * stride] = f[i];
      for (u32 k = 0; k < digit; ++k) {
        result = have ? result * frob : frob;
        have = true;
      }
    }
    if (stride < n) stride *= p;
  }
  return result;
}

/// Polynomial P(X, Y) = sum a_ij X^i Y^j over F_p with only nonzero entries stored.
class BivariatePoly {
 public:
  using Key = std::pair<u32, u32>;  // (power of X, power of Y)

  explicit BivariatePoly(Prime p) : p_(p) {}

  static BivariatePoly constant(Prime p, std::int64_t c) { return term(p, 0, 0, c); }
  static BivariatePoly x(Prime p) { return term(p, 1, 0, 1); }
  static BivariatePoly y(Prime p) { return term(p, 0, 1, 1); }
  static BivariatePoly term(Prime p, u32 i, u32 j, std::int64_t c) {
    BivariatePoly b(p);
    b.set(i, j, fp::reduce(c, p));
    return b;
  }

  Prime modulus() const { return p_; }
  const std::map<Key, u32>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  u32 coeff(u32 i, u32 j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? 0 : it->second;
  }
  void set(u32 i, u32 j, u32 v) {
    v %= p_;
    if (v) t_[{i, j}] = v;
    else t_.erase({i, j});
  }

  u32 degree_y() const {
    u32 d = 0;
    for (const auto& [k, v] : t_) d = std::max(d, k.second);
    return d;
  }

  BivariatePoly operator+(const BivariatePoly& o) const {
    same_field(o);
    BivariatePoly r = *this;
    for (const auto& [k, v] : o.t_) r.set(k.first, k.second, fp::add(r.coeff(k.first, k.second), v, p_));
    return r;
  }
  BivariatePoly operator-() const {
    BivariatePoly r(p_);
    for (const auto& [k, v] : t_) r.set(k.first, k.second, fp::neg(v, p_));
    return r;
  }
  BivariatePoly operator-(const BivariatePoly& o) const { return *this + (-o); }
  BivariatePoly operator*(const BivariatePoly& o) const {
    same_field(o);
    BivariatePoly r(p_);
    for (const auto& [a, va] : t_)
      for (const auto& [b, vb] : o.t_) {
        u32 i = a.first + b.first, j = a.second + b.second;
        r.set(i, j, fp::add(r.coeff(i, j), fp::mul(va, vb, p_), p_));
      }
    return r;
  }
  BivariatePoly pow(u32 e) const {
    BivariatePoly r = constant(p_, 1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  /// dP/dY with coefficients reduced in F_p, so (p+1) Y^p becomes Y^p.
  BivariatePoly derivative_y() const {
    BivariatePoly r(p_);
    for (const auto& [k, v] : t_)
      if (k.second > 0) r.set(k.first, k.second - 1, fp::mul(v, k.second % p_, p_));
    return r;
  }

  /// Coefficient of Y^j as a sparse polynomial in X: (power, coefficient) pairs.
  std::vector<std::pair<u32, u32>> x_poly(u32 j) const {
    std::vector<std::pair<u32, u32>> r;
    for (const auto& [k, v] : t_)
      if (k.second == j) r.emplace_back(k.first, v);
    return r;
  }

  /// Human-readable form, e.g. "X^2*Y^5 + Y^5 + X".
  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
      const auto& [k, v] = *it;
      if (!s.empty()) s += " + ";
      std::string mono;
      auto var = [&](const char* name, u32 e) {
        if (!e) return;
        if (!mono.empty()) mono += '*';
        mono += name;
        if (e > 1) mono += "^" + std::to_string(e);
      };
      var("X", k.first);
      var("Y", k.second);
      if (v != 1 || mono.empty()) mono = std::to_string(v) + (mono.empty() ? "" : "*" + mono);
      s += mono;
    }
    return s;
  }

  friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) {
    return a.p_ == b.p_ && a.t_ == b.t_;
  }

 private:
  void same_field(const BivariatePoly& o) const {
    if (!(o.p_ == p_)) throw Error("modulus mismatch");
  }

  Prime p_;
  std::map<Key, u32> t_;
};

namespace detail {

// sum_j a_j(X) f^j mod X^n, with f known to at least n terms (zero padded).
inline PowerSeries evaluate_at(const BivariatePoly& P, const PowerSeries& f, std::size_t n) {
  const Prime p = P.modulus();
  PowerSeries y = f.order() >= n ? f.truncated(n) : f.padded(n);
  std::vector<u32> acc(n, 0);
  std::map<u32, std::vector<std::pair<u32, u32>>> by_power;
  for (const auto& [k, v] : P.terms()) by_power[k.second].emplace_back(k.first, v);
  for (const auto& [j, xs] : by_power) {
    PowerSeries yj = j == 0 ? PowerSeries::monomial(p, 0, 1, n) : power(y, j);
    for (auto [xi, coeff] : xs)
      for (std::size_t t = 0; t + xi < n; ++t)
        if (yj[t]) acc[t + xi] = fp::add(acc[t + xi], fp::mul(coeff, yj[t], p), p);
  }
  return PowerSeries(p, std::move(acc));
}

}  // namespace detail

/// P(X, f) truncated to f's order.
inline PowerSeries residual(const BivariatePoly& P, const PowerSeries& f) {
  if (!(P.modulus() == f.modulus())) throw Error("modulus mismatch");
  return detail::evaluate_at(P, f, f.order());
}

/// f(g(X)) mod X^N with N = min orders; g(0) must vanish.
/// Baby-step giant-step: f = sum_k F_k(g) * (g^B)^k with chunks F_k of B terms.
inline PowerSeries compose(const PowerSeries& f, const PowerSeries& g) {
  if (!(f.modulus() == g.modulus())) throw Error("modulus mismatch");
  const std::size_t n = std::min(f.order(), g.order());
  const Prime p = f.modulus();
  if (n == 0) return PowerSeries(p, std::size_t{0});
  if (g[0] != 0) throw Error("composition undefined");
  const PowerSeries gt = g.truncated(n);

  std::size_t b = 1;
  while (b * b < n) ++b;
  std::vector<PowerSeries> baby;  // g^0 .. g^(b-1)
  baby.push_back(PowerSeries::monomial(p, 0, 1, n));
  for (std::size_t t = 1; t < b; ++t) baby.push_back(baby.back() * gt);
  const PowerSeries giant = baby.back() * gt;  // g^b

  const std::size_t chunks = (n + b - 1) / b;
  PowerSeries acc(p, n);
  for (std::size_t k = chunks; k-- > 0;) {
    std::vector<u64> chunk(n, 0);
    for (std::size_t t = 0; t < b && k * b + t < n; ++t) {
      u32 coeff = f[k * b + t];
      if (!coeff) continue;
      const auto& pw = baby[t].coeffs();
      for (std::size_t i = t; i < n; ++i) chunk[i] += static_cast<u64>(coeff) * pw[i];
    }
    PowerSeries fk(p, n);
    for (std::size_t i = 0; i < n; ++i) fk[i] = static_cast<u32>(chunk[i] % p);
    acc = acc * giant + fk;
  }
  return acc;
}

/// Horner composition with schoolbook products; reference for tests.
inline PowerSeries compose_reference(const PowerSeries& f, const PowerSeries& g) {
  const std::size_t n = std::min(f.order(), g.order());
  const Prime p = f.modulus();
  if (n > 0 && g[0] != 0) throw Error("composition undefined");
  PowerSeries acc(p, n);
  for (std::size_t i = n; i-- > 0;) {
    acc = acc.mul_schoolbook(g.truncated(n));
    acc[0] = fp::add(acc[0], f[i], p);
  }
  return acc;
}

namespace detail {

// Bit-packed schoolbook over F_2 for the reference inversion.
inline std::vector<u32> comp_inverse_gf2(const PowerSeries& f) {
  const std::size_t n = f.order();
  const std::size_t words = (n + 63) / 64;
  auto get = [](const std::vector<u64>& v, std::size_t i) { return (v[i >> 6] >> (i & 63)) & 1u; };
  std::vector<u64> fb(words, 0), pw(words, 0), acc(words, 0);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i)
    if (f[i]) {
      fb[i >> 6] |= u64{1} << (i & 63);
      support.push_back(i);
    }
  pw = fb;
  std::vector<u32> g(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    u32 gi = ((i == 1) ? 1u : 0u) ^ static_cast<u32>(get(acc, i));
    g[i] = gi;  // f_1 = 1 over F_2
    if (gi)
      for (std::size_t w = 0; w < words; ++w) acc[w] ^= pw[w];
    if (i + 1 >= n) break;
    // pw <- pw * f, only bits >= i+1 can be nonzero
    std::vector<u64> next(words, 0);
    const std::size_t lo_word = i >> 6;
    for (std::size_t s : support) {
      if (s + i >= n) break;
      const std::size_t ws = s >> 6, bs = s & 63;
      for (std::size_t w = lo_word; w + ws < words; ++w) {
        u64 v = pw[w];
        if (!v) continue;
        next[w + ws] ^= v << bs;
        if (bs && w + ws + 1 < words) next[w + ws + 1] ^= v >> (64 - bs);
      }
    }
    if (n & 63) next[words - 1] &= (u64{1} << (n & 63)) - 1;
    pw.swap(next);
  }
  return g;
}

}  // namespace detail

/// Compositional inverse G with f(G) = G(f) = X, solved degree by degree from
/// G(f) = sum g_i f^i = X using explicit powers of f.  Cubic in the order
/// (bit-packed over F_2); this is the reference route, not the fast one.
inline PowerSeries comp_inverse_ref(const PowerSeries& f) {
  const std::size_t n = f.order();
  const Prime p = f.modulus();
  if (n < 2 || f[0] != 0 || f[1] == 0) throw Error("not invertible under composition");
  if (p == 2u) return PowerSeries(p, detail::comp_inverse_gf2(f));

  const u32 inv_f1 = fp::inv(f[1], p);
  std::vector<u32> g(n, 0), acc(n, 0), pw(f.coeffs());
  u32 inv_pow = 1;
  for (std::size_t i = 1; i < n; ++i) {
    inv_pow = fp::mul(inv_pow, inv_f1, p);
    u32 target = fp::sub(i == 1 ? 1u : 0u, acc[i], p);
    u32 gi = fp::mul(target, inv_pow, p);
    g[i] = gi;
    if (gi)
      for (std::size_t t = i; t < n; ++t) acc[t] = fp::add(acc[t], fp::mul(gi, pw[t], p), p);
    if (i + 1 >= n) break;
    std::vector<u64> next(n, 0);
    for (std::size_t a = i; a < n; ++a) {
      if (!pw[a]) continue;
      for (std::size_t b = 1; a + b < n; ++b) next[a + b] += static_cast<u64>(pw[a]) * f[b];
      if ((a & 0x3fff) == 0x3fff)
        for (auto& v : next) v %= p;
    }
    for (std::size_t t = 0; t < n; ++t) pw[t] = static_cast<u32>(next[t] % p);
  }
  return PowerSeries(p, std::move(g));
}

/// Lifts a root of P(X, Y) = 0 from `seed` to precision n.  Requires
/// v(P(seed)) > 2 v(P'(seed)); throws "Newton inapplicable" otherwise.
inline PowerSeries newton_root(const BivariatePoly& P, const PowerSeries& seed, std::size_t n) {
  if (!(P.modulus() == seed.modulus())) throw Error("modulus mismatch");
  const BivariatePoly dP = P.derivative_y();
  PowerSeries y = seed;

  // Probe valuations at growing working order until both are determined.
  std::size_t work = std::max<std::size_t>(8, 2 * seed.order());
  std::size_t e = 0, r = 0;
  for (;;) {
    PowerSeries pv = detail::evaluate_at(P, y, work);
    PowerSeries dv = detail::evaluate_at(dP, y, work);
    e = dv.valuation();
    r = pv.valuation();
    const bool e_known = e < work;
    const bool decided = e_known && (r < work || r > 2 * e);
    if (decided) break;
    if (work > 4 * n + 64) throw Error("Newton inapplicable: derivative vanishes at the seed");
    work *= 2;
  }
  if (r <= 2 * e) throw Error("Newton inapplicable: seed does not isolate a root");

  std::size_t m = r - e;  // y agrees with the root modulo X^m
  while (m < n) {
    const std::size_t k = std::min(2 * m, n + e);
    PowerSeries pv = detail::evaluate_at(P, y, k);
    PowerSeries dv = detail::evaluate_at(dP, y, k);
    const std::size_t out = k - e;
    PowerSeries num = pv.shifted_down(e);
    PowerSeries den = dv.shifted_down(e);
    PowerSeries delta = num * den.inverse();
    y = (y.order() >= out ? y.truncated(out) : y.padded(out)) - delta;
    m = out;
  }
  return y.order() >= n ? y.truncated(n) : y.padded(n);
}

}  // namespace seqinv
