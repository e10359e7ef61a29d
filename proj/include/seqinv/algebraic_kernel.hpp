#pragma once

/**
 * @file algebraic_kernel.hpp
 * @brief Exact kernel closure for series algebraic over F_p(X).
 *
 * Let Y be a root of P(X, Y) = 0 with P monic of degree d in Y.  Every element
 * of F_p(X)[Y]/(P) that we meet is written (1/D) * sum_{k<d} n_k(X) Y^k with
 * one fixed denominator D.  Writing Y^k = sum_m (A_km / Delta) Y^(pm), where
 * Delta and A come from the matrix of Frobenius powers, the operator
 *
 *     Lambda_r : sum_n a_n X^n  ->  sum_n a_(pn+r) X^n
 *
 * maps the element to (1/D) * sum_m Lambda_r(h_m) Y^m with polynomial h_m.
 * Numerator degrees stay bounded, so the closure is finite and every kernel
 * subsequence is represented exactly; no term budget is involved.  The
 * machine built this way is then minimized and, when an oracle is supplied,
 * checked term by term like any synthesized machine.
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqinv/dfao.hpp"
#include "seqinv/error.hpp"
#include "seqinv/field.hpp"
#include "seqinv/ntt.hpp"
#include "seqinv/series.hpp"

namespace seqinv {

/// f = (1/denominator) * sum_k numerator[k] Y^k, where Y is the root of
/// `relation` whose expansion starts with `root`.
struct AlgebraicTarget {
  BivariatePoly relation;
  PowerSeries root;
  std::vector<std::vector<u32>> numerator;  // dense polynomials in X, index = power of Y
  std::vector<u32> denominator;
};

namespace detail::poly {

using Poly = std::vector<u32>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly add(const Poly& a, const Poly& b, u32 p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = fp::add(r[i], b[i], p);
  trim(r);
  return r;
}

inline Poly scaled(const Poly& a, u32 c, u32 p) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = fp::mul(a[i], c, p);
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, u32 p) {
  if (a.empty() || b.empty()) return {};
  Poly r = ntt::multiply(a, b, p, a.size() + b.size() - 1);
  trim(r);
  return r;
}

/// Lambda_r on a polynomial: coefficients at r, r + p, r + 2p, ...
inline Poly section(const Poly& a, u32 r, u32 p) {
  Poly out;
  for (std::size_t i = r; i < a.size(); i += p) out.push_back(a[i]);
  trim(out);
  return out;
}

/// Exact quotient a / b; throws if b does not divide a.
inline Poly divide_exact(Poly a, const Poly& b, u32 p) {
  if (b.empty()) throw Error("division by the zero polynomial");
  trim(a);
  if (a.size() < b.size()) {
    if (!a.empty()) throw Error("inexact polynomial division");
    return {};
  }
  const u32 lead_inv = fp::inv(b.back(), p);
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    u32 c = fp::mul(a[i + b.size() - 1], lead_inv, p);
    q[i] = c;
    if (!c) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] = fp::sub(a[i + j], fp::mul(c, b[j], p), p);
  }
  trim(a);
  if (!a.empty()) throw Error("inexact polynomial division");
  trim(q);
  return q;
}

/// Determinant by expansion over column subsets; fine for the small sizes used here.
inline Poly determinant(const std::vector<std::vector<Poly>>& m, u32 p) {
  const std::size_t n = m.size();
  if (n == 0) return {1};
  std::vector<Poly> f(std::size_t{1} << n);
  std::vector<bool> seen(f.size(), false);
  f[0] = {1};
  seen[0] = true;
  for (std::size_t mask = 0; mask < f.size(); ++mask) {
    if (!seen[mask] || f[mask].empty()) continue;
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
    if (row == n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (mask >> c & 1) continue;
      Poly term = mul(f[mask], m[row][c], p);
      if (std::popcount(mask >> c) % 2) term = scaled(term, p - 1, p);
      const std::size_t to = mask | (std::size_t{1} << c);
      f[to] = add(f[to], term, p);
      seen[to] = true;
    }
  }
  return f.back();
}

}  // namespace detail::poly

struct AlgebraicClosureStats {
  std::size_t closure_states = 0;
  std::size_t max_numerator_degree = 0;
  std::size_t denominator_degree = 0;
};

/// Kernel machine of the target, minimized; `oracle` (possibly empty) is used
/// for certification below opts.verify_below.
inline Dfao synthesize_algebraic(const AlgebraicTarget& target, std::span<const u32> oracle,
                                 const SynthesisOptions& opts = {}, AlgebraicClosureStats* stats = nullptr) {
  namespace P = detail::poly;
  using Poly = P::Poly;
  const Prime prime = target.relation.modulus();
  const u32 p = prime;
  const u32 d = target.relation.degree_y();
  if (d == 0) throw Error("relation does not involve Y");
  if (d > 12) throw Error("relation degree too large for kernel closure");
  if (target.numerator.size() > d) throw Error("target numerator has too many components");

  // P as dense coefficient polynomials, normalized monic in Y.
  std::vector<Poly> rel(d + 1);
  for (const auto& [key, v] : target.relation.terms()) {
    auto& c = rel[key.second];
    if (c.size() <= key.first) c.resize(key.first + 1, 0);
    c[key.first] = v;
  }
  for (auto& c : rel) P::trim(c);

  std::vector<Poly> numer(d);
  for (std::size_t k = 0; k < target.numerator.size(); ++k) {
    numer[k] = target.numerator[k];
    P::trim(numer[k]);
  }
  Poly target_den = target.denominator;
  P::trim(target_den);
  if (target_den.empty()) throw Error("target denominator is zero");
  Poly root = target.root.coeffs();

  // A non-constant leading coefficient a is removed by passing to Z = a Y,
  // a root of sum_j c_j a^(d-1-j) Z^j; the target is rewritten over Z.
  if (rel[d].size() != 1) {
    const Poly lead = rel[d];
    std::vector<Poly> apow(d, Poly{1});
    for (u32 i = 1; i < d; ++i) apow[i] = P::mul(apow[i - 1], lead, p);
    for (u32 j = 0; j < d; ++j) rel[j] = P::mul(rel[j], apow[d - 1 - j], p);
    rel[d] = {1};
    for (u32 k = 0; k < d; ++k) numer[k] = P::mul(numer[k], apow[d - 1 - k], p);
    target_den = P::mul(target_den, apow[d - 1], p);
    Poly z = P::mul(root, lead, p);
    z.resize(root.size(), 0);
    root = std::move(z);
  }
  {
    const u32 s = fp::inv(rel[d][0], p);
    for (auto& c : rel) c = P::scaled(c, s, p);
  }

  // Rows Y^(pk) mod P in the basis 1, Y, ..., Y^(d-1).
  std::vector<std::vector<Poly>> frob(d, std::vector<Poly>(d));
  {
    std::vector<Poly> cur(d);
    cur[0] = {1};
    for (u32 e = 0;; ++e) {
      if (e % p == 0) frob[e / p] = cur;
      if (e == p * (d - 1)) break;
      Poly top = cur[d - 1];
      for (u32 j = d - 1; j > 0; --j) cur[j] = cur[j - 1];
      cur[0].clear();
      if (!top.empty())
        for (u32 j = 0; j < d; ++j) cur[j] = P::add(cur[j], P::scaled(P::mul(top, rel[j], p), p - 1, p), p);
    }
  }
  const Poly delta = P::determinant(frob, p);
  if (delta.empty()) throw Error("Frobenius matrix is singular for this relation");

  // adj[k][m] with Y^k = sum_m adj[k][m] / delta * Y^(pm): adj = cofactor transpose of frob.
  std::vector<std::vector<Poly>> adj(d, std::vector<Poly>(d));
  for (u32 r = 0; r < d; ++r)
    for (u32 c = 0; c < d; ++c) {
      std::vector<std::vector<Poly>> minor;
      for (u32 i = 0; i < d; ++i) {
        if (i == r) continue;
        std::vector<Poly> row;
        for (u32 j = 0; j < d; ++j)
          if (j != c) row.push_back(frob[i][j]);
        minor.push_back(std::move(row));
      }
      Poly cof = P::determinant(minor, p);
      if ((r + c) % 2) cof = P::scaled(cof, p - 1, p);
      adj[c][r] = std::move(cof);
    }

  const Poly D = P::mul(delta, target_den, p);
  // 1 / (D delta) = target_den * D^(p-2) / D^p
  Poly twist = target_den;
  for (u32 i = 0; i + 2 < p; ++i) twist = P::mul(twist, D, p);
  std::vector<std::vector<Poly>> T(d, std::vector<Poly>(d));
  for (u32 k = 0; k < d; ++k)
    for (u32 m = 0; m < d; ++m) T[k][m] = P::mul(adj[k][m], twist, p);

  // Constant term of (1/D) sum n_k Y^k from the root expansion.
  std::size_t a = 0;
  while (D[a] == 0) ++a;
  if (root.size() < a + 1) throw Error("root expansion too short for output extraction");
  std::vector<Poly> ypow(d);
  {
    Poly y(root.begin(), root.begin() + static_cast<std::ptrdiff_t>(a + 1));
    Poly cur{1};
    for (u32 k = 0; k < d; ++k) {
      ypow[k] = cur;
      cur = P::mul(cur, y, p);
      if (cur.size() > a + 1) cur.resize(a + 1);
    }
  }
  const u32 inv_da = fp::inv(D[a], p);
  auto output_of = [&](const std::vector<Poly>& n) {
    u32 acc = 0;
    for (u32 k = 0; k < d; ++k)
      for (std::size_t i = 0; i <= a && i < n[k].size(); ++i)
        if (a - i < ypow[k].size()) acc = fp::add(acc, fp::mul(n[k][i], ypow[k][a - i], p), p);
    return fp::mul(acc, inv_da, p);
  };

  auto encode = [&](const std::vector<Poly>& n) {
    std::vector<u32> key;
    for (const auto& c : n) {
      key.push_back(static_cast<u32>(c.size()));
      key.insert(key.end(), c.begin(), c.end());
    }
    return key;
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<u32>& v) const {
      u64 h = 1469598103934665603ull;
      for (u32 x : v) {
        h ^= x + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>(h);
    }
  };

  struct Node {
    std::vector<Poly> num;
    KernelLabel label;
    u64 stride;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<KernelLabel>> labels;
  std::vector<std::vector<u32>> next;
  std::unordered_map<std::vector<u32>, u32, KeyHash> index;
  std::size_t max_deg = 0;

  auto find_or_add = [&](std::vector<Poly> num, KernelLabel lab, u64 stride) -> u32 {
    auto key = encode(num);
    auto it = index.find(key);
    if (it != index.end()) {
      labels[it->second].push_back(lab);
      return it->second;
    }
    if (nodes.size() >= opts.max_states) throw Error("not automatic at this budget");
    const u32 id = static_cast<u32>(nodes.size());
    for (const auto& c : num) max_deg = std::max(max_deg, c.size());
    nodes.push_back({std::move(num), lab, stride});
    labels.push_back({lab});
    next.emplace_back(p, 0u);
    index.emplace(std::move(key), id);
    return id;
  };

  {
    std::vector<Poly> start(d);
    for (u32 k = 0; k < d; ++k) start[k] = P::mul(numer[k], delta, p);
    find_or_add(std::move(start), {0, 0}, 1);
  }
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    std::vector<Poly> h(d);
    for (u32 m = 0; m < d; ++m)
      for (u32 k = 0; k < d; ++k)
        if (!nodes[s].num[k].empty() && !T[k][m].empty()) h[m] = P::add(h[m], P::mul(nodes[s].num[k], T[k][m], p), p);
    const KernelLabel lab = nodes[s].label;
    const u64 stride = nodes[s].stride;
    if (stride > std::numeric_limits<u64>::max() / p) throw Error("kernel label overflow");
    for (u32 r = 0; r < p; ++r) {
      std::vector<Poly> child(d);
      for (u32 m = 0; m < d; ++m) child[m] = P::section(h[m], r, p);
      next[s][r] = find_or_add(std::move(child), {lab.k + 1, lab.l + r * stride}, stride * p);
    }
  }

  Dfao raw(prime, p);
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    DfaoState st;
    st.labels = labels[s];
    std::sort(st.labels.begin(), st.labels.end());
    st.out = output_of(nodes[s].num);
    st.next = next[s];
    raw.add_state(std::move(st));
  }
  raw.set_initial(0);
  if (stats) {
    stats->closure_states = nodes.size();
    stats->max_numerator_degree = max_deg;
    stats->denominator_degree = D.size() - 1;
  }
  Dfao result = minimize(raw);
  Verdict v = verify(result, oracle, opts.verify_below);
  if (!v.agrees)
    throw Error("algebraic kernel machine disagrees with the oracle at n = " + std::to_string(*v.first_mismatch));
  result.set_certified_below(v.checked);
  return result;
}

}  // namespace seqinv
