#pragma once

/**
 * @file family.hpp
 * @brief Pumped digit-word families and their exact evaluation on a machine.
 *
 * A family is the set of LSD-first words alpha . pump^k . beta for k >= 0.
 * With any_pump the middle part is instead every word of length k, which
 * describes whole blocks such as [A p^k, (A+1) p^k).  The set of states
 * reached after alpha . pump^k is eventually periodic in k, so finitely many
 * reading steps decide the output for every k at once.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seqinv/dfao.hpp"
#include "seqinv/error.hpp"
#include "seqinv/field.hpp"

namespace seqinv {

struct WordFamily {
  DigitString prefix;
  DigitString pump;
  bool any_pump = false;
  DigitString suffix;

  u32 base() const { return prefix.base; }

  /// alpha . pump^k . beta as a concrete word.
  DigitString word(u64 k) const {
    if (any_pump) throw Error("family with a free middle has no single word");
    DigitString w{prefix.digits, base()};
    for (u64 i = 0; i < k; ++i) w.digits.insert(w.digits.end(), pump.digits.begin(), pump.digits.end());
    w.digits.insert(w.digits.end(), suffix.digits.begin(), suffix.digits.end());
    return w;
  }

  /// Value of word(k), or nothing if it does not fit in 64 bits.
  std::optional<u64> value(u64 k) const {
    DigitString w = word(k);
    u64 v = 0;
    for (std::size_t i = w.size(); i-- > 0;) {
      if (v > (UINT64_MAX - w.digits[i]) / base()) return std::nullopt;
      v = v * base() + w.digits[i];
    }
    return v;
  }

  /// e.g. "44.(2)^k.001" or "[*]^k.1111001", in reading order.
  std::string str() const {
    std::string s = prefix.str() + ".";
    s += any_pump ? "[*]^k" : "(" + pump.str() + ")^k";
    return s + "." + suffix.str();
  }
};

inline WordFamily word_family(const std::string& prefix, const std::string& pump, const std::string& suffix,
                              u32 base) {
  WordFamily f{parse_word(prefix, base), parse_word(pump, base), false, parse_word(suffix, base)};
  if (f.pump.empty()) throw Error("pump word must be non-empty");
  return f;
}

/// Numbers A p^(e0 + step k) + B for k >= 0; B may be negative when |B| <= p^e0.
inline WordFamily affine_family(u64 A, u32 p, u32 e0, u32 step, std::int64_t B) {
  if (step == 0) throw Error("step must be positive");
  if (A == 0) throw Error("leading factor must be positive");
  u64 pe0 = 1;
  for (u32 i = 0; i < e0; ++i) {
    if (pe0 > UINT64_MAX / p) throw Error("exponent too large");
    pe0 *= p;
  }
  WordFamily f;
  if (B >= 0) {
    if (static_cast<u64>(B) >= pe0) throw Error("offset does not fit below p^e0");
    f.prefix = digits_lsd_padded(static_cast<u64>(B), p, e0);
    f.pump = DigitString{std::vector<u32>(step, 0), p};
    f.suffix = digits_lsd(A, p);
  } else {
    // A p^e - b = (A - 1) p^e + (p^e - b): low digits of p^e0 - b, then p - 1 repeated
    const u64 b = static_cast<u64>(-B);
    if (b > pe0) throw Error("offset does not fit below p^e0");
    f.prefix = digits_lsd_padded(pe0 - b, p, e0);
    f.pump = DigitString{std::vector<u32>(step, p - 1), p};
    f.suffix = digits_lsd(A - 1, p);
  }
  return f;
}

/// The block of numbers A p^k + j, 0 <= j < p^k, for every k >= 0.
inline WordFamily block_family(u64 A, u32 p) {
  if (A == 0) throw Error("leading factor must be positive");
  return WordFamily{DigitString{{}, p}, DigitString{{}, p}, true, digits_lsd(A, p)};
}

/// The family shifted by +j; the carry must stay inside the prefix.
inline WordFamily offset_family(const WordFamily& f, u64 j) {
  WordFamily g = f;
  const u32 p = f.base();
  u64 carry = j;
  for (auto& d : g.prefix.digits) {
    u64 t = d + carry;
    d = static_cast<u32>(t % p);
    carry = t / p;
  }
  if (carry) throw Error("offset carries out of the family prefix");
  return g;
}

enum class FamilyStart { Initial, AllStates };

struct FamilyVerdict {
  u32 preperiod = 0;  // mu
  u32 period = 1;     // lambda
  std::vector<std::vector<u32>> outputs;  // letters reachable for k = 0 .. mu + lambda - 1

  const std::vector<u32>& letters_at(u64 k) const {
    if (k < preperiod) return outputs[k];
    return outputs[preperiod + (k - preperiod) % period];
  }

  /// The single letter produced for every k, if there is one.
  std::optional<u32> constant() const {
    std::optional<u32> c;
    for (const auto& s : outputs) {
      if (s.size() != 1) return std::nullopt;
      if (c && *c != s[0]) return std::nullopt;
      c = s[0];
    }
    return c;
  }
};

inline FamilyVerdict family_eval(const Dfao& a, const WordFamily& f, FamilyStart start = FamilyStart::Initial) {
  if (f.base() != a.base() || f.suffix.base != a.base() || (!f.any_pump && f.pump.base != a.base()))
    throw Error("family base does not match the machine");
  if (!f.any_pump && f.pump.empty()) throw Error("pump word must be non-empty");

  std::vector<u32> set;
  if (start == FamilyStart::Initial) set.push_back(a.run(a.initial(), f.prefix));
  else
    for (u32 q = 0; q < a.size(); ++q) set.push_back(a.run(q, f.prefix));
  auto normalize = [](std::vector<u32>& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  };
  normalize(set);

  std::map<std::vector<u32>, u32> seen;
  std::vector<std::vector<u32>> history;
  while (!seen.count(set)) {
    seen.emplace(set, static_cast<u32>(history.size()));
    history.push_back(set);
    std::vector<u32> next;
    if (f.any_pump) {
      for (u32 q : set)
        for (u32 d = 0; d < a.base(); ++d) next.push_back(a.step(q, d));
    } else {
      for (u32 q : set) next.push_back(a.run(q, f.pump));
    }
    normalize(next);
    set = std::move(next);
  }
  FamilyVerdict v;
  v.preperiod = seen.at(set);
  v.period = static_cast<u32>(history.size()) - v.preperiod;
  for (const auto& s : history) {
    std::vector<u32> letters;
    for (u32 q : s) letters.push_back(a.out(a.run(q, f.suffix)));
    normalize(letters);
    v.outputs.push_back(std::move(letters));
  }
  return v;
}

}  // namespace seqinv
