#pragma once

/**
 * @file sequences.hpp
 * @brief Term oracles for the base sequences and their formal inverses.
 *
 * Every sequence has a slow, direct definition and a fast route through
 * series.hpp; the two are compared in the tests and the acceptance suite.
 *
 *   t(p)  digit sum of n in base p, mod p
 *   r     Rudin-Shapiro as 0/1 (r_0 = 1); r1 = r with r_0 := 0; r2 = shift right by one
 *   s(p)  coefficients of S_p = X (1 - C_p); w(p) those of S_p(X^p) - S_p(X) - 1
 *   c(p)  compositional inverse of t(p)
 *   u, v  compositional inverses of r1 and r2
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "seqinv/equations.hpp"
#include "seqinv/error.hpp"
#include "seqinv/field.hpp"
#include "seqinv/series.hpp"

namespace seqinv {

enum class SeqKind { Thue, Rudin, RudinZeroed, RudinShifted, S, W, C, U, V };

struct SequenceId {
  SeqKind kind = SeqKind::C;
  u32 p = 2;

  u32 modulus() const {
    switch (kind) {
      case SeqKind::Thue: case SeqKind::S: case SeqKind::W: case SeqKind::C: return p;
      default: return 2;
    }
  }

  std::string name() const {
    switch (kind) {
      case SeqKind::Thue: return "t" + std::to_string(p);
      case SeqKind::Rudin: return "r";
      case SeqKind::RudinZeroed: return "r1";
      case SeqKind::RudinShifted: return "r2";
      case SeqKind::S: return "s" + std::to_string(p);
      case SeqKind::W: return "w" + std::to_string(p);
      case SeqKind::C: return "c" + std::to_string(p);
      case SeqKind::U: return "u";
      case SeqKind::V: return "v";
    }
    return "?";
  }

  /// Accepts the names produced by name(); also r' and r'' for r1 and r2.
  static SequenceId parse(const std::string& s) {
    if (s == "r") return {SeqKind::Rudin, 2};
    if (s == "r1" || s == "r'") return {SeqKind::RudinZeroed, 2};
    if (s == "r2" || s == "r''") return {SeqKind::RudinShifted, 2};
    if (s == "u") return {SeqKind::U, 2};
    if (s == "v") return {SeqKind::V, 2};
    if (s == "d") return {SeqKind::C, 5};
    if (s.size() >= 2) {
      SeqKind k;
      switch (s[0]) {
        case 't': k = SeqKind::Thue; break;
        case 's': k = SeqKind::S; break;
        case 'w': k = SeqKind::W; break;
        case 'c': k = SeqKind::C; break;
        default: throw Error("unknown sequence: " + s);
      }
      u32 p = 0;
      for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw Error("unknown sequence: " + s);
        p = p * 10 + static_cast<u32>(s[i] - '0');
        if (p >= Prime::kLimit) throw Error("unknown sequence: " + s);
      }
      Prime checked(p);
      return {k, checked};
    }
    throw Error("unknown sequence: " + s);
  }

  friend bool operator==(const SequenceId&, const SequenceId&) = default;
};

enum class Method { Recurrence, Newton, ReferenceInverse, DigitDefinition };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::Recurrence: return "recurrence";
    case Method::Newton: return "newton";
    case Method::ReferenceInverse: return "reference-inverse";
    case Method::DigitDefinition: return "digit-definition";
  }
  return "?";
}

struct TermBlock {
  SequenceId id;
  Prime modulus{2};
  std::vector<u32> values;
  Method method = Method::Recurrence;

  std::size_t size() const { return values.size(); }
  u32 operator[](std::size_t n) const { return values.at(n); }
  PowerSeries series() const { return PowerSeries(modulus, values); }
};

/// OEIS b-file text: one "n value" pair per line.
inline std::string to_bfile(const TermBlock& t, std::size_t offset = 0) {
  std::ostringstream os;
  os << "# " << t.id.name() << " (" << method_name(t.method) << ")\n";
  for (std::size_t n = 0; n < t.size(); ++n) os << (n + offset) << ' ' << t.values[n] << '\n';
  return os.str();
}

// --- base sequences --------------------------------------------------------

/// t_0 = 0, t_{pn+i} = t_n + i.
inline TermBlock thue_terms(Prime p, std::size_t n) {
  TermBlock t{{SeqKind::Thue, p}, p, std::vector<u32>(n, 0), Method::Recurrence};
  for (std::size_t i = 1; i < n; ++i) t.values[i] = fp::add(t.values[i / p], static_cast<u32>(i % p), p);
  return t;
}

inline TermBlock thue_terms_by_digits(Prime p, std::size_t n) {
  TermBlock t{{SeqKind::Thue, p}, p, std::vector<u32>(n, 0), Method::DigitDefinition};
  for (std::size_t i = 0; i < n; ++i) t.values[i] = digit_sum(i, p).value();
  return t;
}

enum class RudinVariant { Plain, Zeroed, Shifted };

/// 0/1 Rudin-Shapiro from the count of (overlapping) 11 blocks in binary.
inline u32 rudin_by_pattern(u64 n) {
  return std::popcount(n & (n >> 1)) % 2 == 0 ? 1u : 0u;
}

/// r_0 = 1, r_{2n} = r_{4n+1} = r_n, r_{4n+3} = 1 + r_{2n+1}, then the variant edit.
inline TermBlock rudin_terms(RudinVariant variant, std::size_t n, Method method = Method::Recurrence) {
  const Prime two(2);
  std::vector<u32> r(n, 0);
  if (method == Method::DigitDefinition) {
    for (std::size_t i = 0; i < n; ++i) r[i] = rudin_by_pattern(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0) r[i] = 1;
      else if (i % 2 == 0) r[i] = r[i / 2];
      else if (i % 4 == 1) r[i] = r[i / 4];
      else r[i] = 1u ^ r[i / 2];
    }
  }
  TermBlock t{{SeqKind::Rudin, 2}, two, std::move(r), method};
  if (variant == RudinVariant::Zeroed) {
    t.id.kind = SeqKind::RudinZeroed;
    if (n) t.values[0] = 0;
  } else if (variant == RudinVariant::Shifted) {
    t.id.kind = SeqKind::RudinShifted;
    if (n) {
      t.values.insert(t.values.begin(), 0);
      t.values.pop_back();
    }
  }
  return t;
}

// --- inverse of the generalized Thue-Morse sequence --------------------------

/// s and w by the joint recurrence s_n = sum_{k=1}^{n-1} s_k w_{n-k},
/// w_0 = -1, w_n = -s_n (+ s_{n/p} when p | n).  Quadratic reference.
inline std::pair<TermBlock, TermBlock> sw_terms(Prime p, std::size_t n) {
  std::vector<u32> s(n, 0), w(n, 0);
  if (n > 0) w[0] = p - 1;
  auto fill_w = [&](std::size_t i) {
    u32 wi = fp::neg(s[i], p);
    if (i % p == 0) wi = fp::add(wi, s[i / p], p);
    w[i] = wi;
  };
  if (n > 1) {
    s[1] = 1;
    fill_w(1);
  }
  for (std::size_t i = 2; i < n; ++i) {
    u64 acc = 0;
    for (std::size_t k = 1; k < i; ++k) {
      acc += static_cast<u64>(s[k]) * w[i - k];
      if ((k & 0xffff) == 0) acc %= p;
    }
    s[i] = static_cast<u32>(acc % p);
    fill_w(i);
  }
  return {TermBlock{{SeqKind::S, p}, p, std::move(s), Method::Recurrence},
          TermBlock{{SeqKind::W, p}, p, std::move(w), Method::Recurrence}};
}

/// S_p modulo X^n by Newton lifting from the seed X.
inline PowerSeries s_series_newton(Prime p, std::size_t n) {
  return newton_root(equations::thue_inverse_shifted(p), series_x(p, 2), n);
}

/// c_0 = 0 and c_n = -s_{n+1} for n >= 1 (which gives c_1 = 1).
inline TermBlock c_terms(Prime p, std::size_t n, Method method = Method::Newton) {
  std::vector<u32> s;
  if (method == Method::Recurrence) {
    s = sw_terms(p, n + 1).first.values;
  } else if (method == Method::Newton) {
    s = s_series_newton(p, n + 1).coeffs();
  } else if (method == Method::ReferenceInverse) {
    s.assign(n + 1, 0);
    auto c = comp_inverse_ref(thue_terms(p, n).series());
    for (std::size_t i = 1; i <= n; ++i) s[i] = fp::sub(i == 1 ? 1u : 0u, c[i - 1], p);
  } else {
    throw Error("unsupported method for c terms");
  }
  TermBlock t{{SeqKind::C, p}, p, std::vector<u32>(n, 0), method};
  for (std::size_t i = 1; i < n; ++i) t.values[i] = fp::neg(s[i + 1], p);
  return t;
}

// --- inverses of the modified Rudin-Shapiro sequences ------------------------

inline TermBlock inverse_terms(SeqKind which, std::size_t n, Method method = Method::Newton) {
  if (which != SeqKind::U && which != SeqKind::V) throw Error("inverse_terms expects u or v");
  const Prime two(2);
  const bool is_u = which == SeqKind::U;
  std::vector<u32> vals;
  if (method == Method::Newton) {
    auto P = is_u ? equations::rudin_zeroed_inverse() : equations::rudin_shifted_inverse();
    vals = newton_root(P, series_x(two, 2), n).coeffs();
  } else if (method == Method::ReferenceInverse) {
    auto base = rudin_terms(is_u ? RudinVariant::Zeroed : RudinVariant::Shifted, n);
    vals = comp_inverse_ref(base.series()).coeffs();
  } else {
    throw Error("unsupported method for inverse terms");
  }
  return TermBlock{{which, 2}, two, std::move(vals), method};
}

/// Terms of any catalogued sequence by its fast route.
inline TermBlock terms(const SequenceId& id, std::size_t n) {
  switch (id.kind) {
    case SeqKind::Thue: return thue_terms(Prime(id.p), n);
    case SeqKind::Rudin: return rudin_terms(RudinVariant::Plain, n);
    case SeqKind::RudinZeroed: return rudin_terms(RudinVariant::Zeroed, n);
    case SeqKind::RudinShifted: return rudin_terms(RudinVariant::Shifted, n);
    case SeqKind::S: {
      auto s = s_series_newton(Prime(id.p), n);
      return TermBlock{id, Prime(id.p), s.coeffs(), Method::Newton};
    }
    case SeqKind::W: return sw_terms(Prime(id.p), n).second;
    case SeqKind::C: return c_terms(Prime(id.p), n);
    case SeqKind::U: case SeqKind::V: return inverse_terms(id.kind, n);
  }
  throw Error("unknown sequence");
}

/// Catalogued (relation, seed) pair for a sequence whose series is algebraic.
struct Relation {
  BivariatePoly poly;
  PowerSeries seed;
};

inline Relation relation_for(const SequenceId& id) {
  const Prime p(id.modulus());
  switch (id.kind) {
    case SeqKind::Thue: return {equations::thue(p), series_x(p, 2)};
    case SeqKind::C: return {equations::thue_inverse(p), series_x(p, 2)};
    case SeqKind::S: return {equations::thue_inverse_shifted(p), series_x(p, 2)};
    case SeqKind::Rudin: return {equations::rudin(), PowerSeries(p, std::vector<u32>{1, 1})};
    case SeqKind::RudinZeroed: return {equations::rudin_zeroed(), series_x(p, 2)};
    case SeqKind::RudinShifted: return {equations::rudin_shifted(), series_x(p, 2)};
    case SeqKind::U: return {equations::rudin_zeroed_inverse(), series_x(p, 2)};
    case SeqKind::V: return {equations::rudin_shifted_inverse(), series_x(p, 2)};
    case SeqKind::W: break;
  }
  throw Error("no algebraic relation catalogued for " + id.name());
}

}  // namespace seqinv
