#pragma once

/**
 * @file ntt.hpp
 * @brief Convolution over F_p via number-theoretic transforms.
 *
 * The product of two length-N vectors over F_p has integer coefficients
 * bounded by N (p-1)^2.  We convolve exactly modulo one, two or three
 * NTT-friendly word primes (as many as that bound requires) and recombine
 * with Garner's CRT before reducing mod p.  Arithmetic inside the transforms
 * is Montgomery form over 32-bit words.
 */

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "seqinv/error.hpp"
#include "seqinv/field.hpp"

namespace seqinv::ntt {

__extension__ using u128 = unsigned __int128;

namespace detail {

template <u32 Mod, u32 Root>
struct Montgomery {
  static constexpr u32 mod = Mod;

  static constexpr u32 neg_inv() {
    u32 inv = Mod;  // Newton iteration for Mod^{-1} mod 2^32
    for (int i = 0; i < 5; ++i) inv *= 2 - Mod * inv;
    return ~inv + 1;
  }
  static constexpr u32 kNegInv = neg_inv();
  static constexpr u32 kR2 = static_cast<u32>((static_cast<u128>(1) << 64) % Mod);

  static u32 reduce(u64 t) {
    u32 m = static_cast<u32>(t) * kNegInv;
    u32 r = static_cast<u32>((t + static_cast<u64>(m) * Mod) >> 32);
    return r >= Mod ? r - Mod : r;
  }
  static u32 to(u32 x) { return reduce(static_cast<u64>(x) * kR2); }
  static u32 from(u32 x) { return reduce(x); }
  static u32 mul(u32 a, u32 b) { return reduce(static_cast<u64>(a) * b); }
  static u32 add(u32 a, u32 b) { u32 s = a + b; return s >= Mod ? s - Mod : s; }
  static u32 sub(u32 a, u32 b) { return a >= b ? a - b : a + Mod - b; }

  static u32 pow_plain(u64 a, u64 e) {
    u64 r = 1;
    a %= Mod;
    while (e) {
      if (e & 1) r = r * a % Mod;
      a = a * a % Mod;
      e >>= 1;
    }
    return static_cast<u32>(r);
  }

  static constexpr int max_log() { return std::countr_zero(Mod - 1); }

  // rt[h + j] = w_{2h}^j in Montgomery form; layout independent of transform size.
  static const std::vector<u32>& roots(std::size_t len, bool inverse) {
    static thread_local std::vector<u32> fwd, inv;
    auto& t = inverse ? inv : fwd;
    if (t.size() < len) {
      std::size_t start = t.empty() ? 1 : t.size();
      t.resize(len);
      for (std::size_t h = start; 2 * h <= len; h *= 2) {
        u32 w = pow_plain(Root, (Mod - 1) / (2 * h));
        if (inverse) w = pow_plain(w, Mod - 2);
        u32 wm = to(w), cur = to(1);
        for (std::size_t j = 0; j < h; ++j) {
          t[h + j] = cur;
          cur = mul(cur, wm);
        }
      }
    }
    return t;
  }

  // Natural order in, bit-reversed order out.
  static void forward(std::vector<u32>& a) {
    const std::size_t n = a.size();
    const auto& rt = roots(n, false);
    for (std::size_t h = n / 2; h >= 1; h /= 2) {
      for (std::size_t s = 0; s < n; s += 2 * h) {
        u32* x = a.data() + s;
        u32* y = x + h;
        const u32* w = rt.data() + h;
        for (std::size_t j = 0; j < h; ++j) {
          u32 u = x[j], v = y[j];
          x[j] = add(u, v);
          y[j] = mul(sub(u, v), w[j]);
        }
      }
    }
  }

  // Bit-reversed order in, natural order out, scaled by 1/n.
  static void inverse(std::vector<u32>& a) {
    const std::size_t n = a.size();
    const auto& rt = roots(n, true);
    for (std::size_t h = 1; h < n; h *= 2) {
      for (std::size_t s = 0; s < n; s += 2 * h) {
        u32* x = a.data() + s;
        u32* y = x + h;
        const u32* w = rt.data() + h;
        for (std::size_t j = 0; j < h; ++j) {
          u32 u = x[j], v = mul(y[j], w[j]);
          x[j] = add(u, v);
          y[j] = sub(u, v);
        }
      }
    }
    u32 scale = to(pow_plain(n % Mod, Mod - 2));
    for (auto& v : a) v = mul(v, scale);
  }

  /// Exact (a * b) mod Mod, first `out` coefficients; inputs already < Mod.
  static std::vector<u32> convolve(std::span<const u32> a, std::span<const u32> b, std::size_t out) {
    std::size_t need = a.size() + b.size() - 1;
    std::size_t len = std::bit_ceil(need);
    if (std::countr_zero(len) > max_log()) throw Error("transform length exceeds prime capacity");
    std::vector<u32> fa(len, 0), fb;
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = to(a[i]);
    forward(fa);
    bool square = a.data() == b.data() && a.size() == b.size();
    if (!square) {
      fb.assign(len, 0);
      for (std::size_t i = 0; i < b.size(); ++i) fb[i] = to(b[i]);
      forward(fb);
      for (std::size_t i = 0; i < len; ++i) fa[i] = mul(fa[i], fb[i]);
    } else {
      for (std::size_t i = 0; i < len; ++i) fa[i] = mul(fa[i], fa[i]);
    }
    inverse(fa);
    fa.resize(std::min(out, need));
    for (auto& v : fa) v = from(v);
    return fa;
  }
};

using P0 = Montgomery<998244353u, 3u>;  // 119 * 2^23 + 1
using P1 = Montgomery<167772161u, 3u>;  // 5 * 2^25 + 1
using P2 = Montgomery<469762049u, 3u>;  // 7 * 2^26 + 1

inline std::vector<u32> schoolbook(std::span<const u32> a, std::span<const u32> b, u32 p, std::size_t out) {
  std::size_t n = std::min(out, a.size() + b.size() - 1);
  std::vector<u64> acc(n, 0);
  // (p-1)^2 < 2^32, so 2^31 terms fit before a reduction is needed.
  for (std::size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    u64 ai = a[i];
    std::size_t lim = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < lim; ++j) acc[i + j] += ai * b[j];
    if ((i & 0x3fff) == 0x3fff)
      for (auto& v : acc) v %= p;
  }
  std::vector<u32> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<u32>(acc[i] % p);
  return r;
}

}  // namespace detail

/// Quadratic reference product, kept for tests and tiny operands.
inline std::vector<u32> multiply_schoolbook(std::span<const u32> a, std::span<const u32> b, u32 p,
                                            std::size_t out) {
  std::vector<u32> r;
  if (!a.empty() && !b.empty() && out != 0) r = detail::schoolbook(a, b, p, out);
  r.resize(out, 0);
  return r;
}

namespace detail {

inline std::vector<u32> multiply_unpadded(std::span<const u32> a, std::span<const u32> b, u32 p,
                                          std::size_t out) {
  if (a.empty() || b.empty() || out == 0) return {};
  a = a.first(std::min(a.size(), out));
  b = b.first(std::min(b.size(), out));
  // trim high zeros so sparse-ish operands stay cheap
  while (!a.empty() && a.back() == 0) a = a.first(a.size() - 1);
  while (!b.empty() && b.back() == 0) b = b.first(b.size() - 1);
  if (a.empty() || b.empty()) return {};
  if (std::min(a.size(), b.size()) <= 48) return detail::schoolbook(a, b, p, out);

  const u128 bound =
      static_cast<u128>(std::min(a.size(), b.size())) * (p - 1) * (p - 1);
  const bool same = a.data() == b.data() && a.size() == b.size();
  // inputs are < p < every NTT prime, so they are valid residues as-is
  auto run = [&](auto tag) {
    using M = decltype(tag);
    return M::convolve(a, same ? a : b, out);
  };

  const std::size_t len = std::bit_ceil(a.size() + b.size() - 1);
  if (bound < detail::P0::mod && std::countr_zero(len) <= detail::P0::max_log()) {
    auto r = run(detail::P0{});
    for (auto& v : r) v %= p;
    return r;
  }
  auto r0 = run(detail::P1{});
  auto r1 = run(detail::P2{});
  const u64 m0 = detail::P1::mod, m1 = detail::P2::mod;
  const u64 inv_m0_mod_m1 = detail::P2::pow_plain(m0 % m1, m1 - 2);
  if (bound < static_cast<u128>(m0) * m1) {
    for (std::size_t i = 0; i < r0.size(); ++i) {
      u64 x0 = r0[i];
      u64 t = (r1[i] + m1 - x0 % m1) % m1 * inv_m0_mod_m1 % m1;
      r0[i] = static_cast<u32>((x0 % p + (m0 % p) * (t % p)) % p);
    }
    return r0;
  }
  auto r2 = run(detail::P0{});
  const u64 m2 = detail::P0::mod;
  const u64 m01_mod_m2 = (m0 % m2) * (m1 % m2) % m2;
  const u64 inv_m01 = detail::P0::pow_plain(m01_mod_m2, m2 - 2);
  for (std::size_t i = 0; i < r0.size(); ++i) {
    u64 x0 = r0[i];
    u64 t1 = (r1[i] + m1 - x0 % m1) % m1 * inv_m0_mod_m1 % m1;
    u64 x01_mod_m2 = (x0 + m0 % m2 * t1) % m2;
    u64 t2 = (r2[i] + m2 - x01_mod_m2) % m2 * inv_m01 % m2;
    u64 res = (x0 % p + (m0 % p) * (t1 % p) % p + (m0 % p) * (m1 % p) % p * (t2 % p)) % p;
    r0[i] = static_cast<u32>(res);
  }
  return r0;
}

}  // namespace detail

/// (a * b) mod p, exactly `out` coefficients (zero padded).
inline std::vector<u32> multiply(std::span<const u32> a, std::span<const u32> b, u32 p, std::size_t out) {
  auto r = detail::multiply_unpadded(a, b, p, out);
  r.resize(out, 0);
  return r;
}

}  // namespace seqinv::ntt
