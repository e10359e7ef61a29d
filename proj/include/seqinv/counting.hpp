#pragma once

// Exact letter counts below a bound by dynamic programming over digit paths.
//
// A number n < N either agrees with N above some position i and has a
// smaller digit there, or it is N itself (excluded).  Zero padding lets every
// n be read with exactly as many digits as N.  Counts of length-i words
// reaching each state are accumulated from the initial state, then finished
// by the fixed tail "smaller digit, then N's upper digits".

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "seqinv/dfao.hpp"
#include "seqinv/error.hpp"

namespace seqinv {

using BigInt = boost::multiprecision::cpp_int;

struct CountResult {
  BigInt bound;  // N
  u32 letter = 0;
  BigInt count;  // #{ n < N : a(n) = letter }
};

/// Per-letter counts of a(n) over 0 <= n < N.
inline std::vector<BigInt> count_letters(const Dfao& a, const BigInt& N) {
  a.validate();
  if (N < 0) throw Error("bound must be non-negative");
  const u32 p = a.base();
  const std::size_t nq = a.size();
  std::vector<BigInt> counts(a.modulus(), 0);
  if (N == 0) return counts;

  std::vector<u32> nd;  // digits of N, least significant first
  for (BigInt m = N; m > 0; m /= p) nd.push_back(static_cast<u32>(m % p));
  const std::size_t L = nd.size();

  // tail[i][s]: state after reading N's digits i+1 .. L-1 from s
  std::vector<std::vector<u32>> tail(L, std::vector<u32>(nq));
  for (u32 s = 0; s < nq; ++s) tail[L - 1][s] = s;
  for (std::size_t i = L - 1; i-- > 0;)
    for (u32 s = 0; s < nq; ++s) tail[i][s] = tail[i + 1][a.step(s, nd[i + 1])];

  std::vector<BigInt> reach(nq, 0), nxt(nq);
  reach[a.initial()] = 1;
  for (std::size_t i = 0; i < L; ++i) {
    for (u32 q = 0; q < nq; ++q) {
      if (reach[q] == 0) continue;
      for (u32 x = 0; x < nd[i]; ++x) counts[a.out(tail[i][a.step(q, x)])] += reach[q];
    }
    if (i + 1 == L) break;
    for (auto& v : nxt) v = 0;
    for (u32 q = 0; q < nq; ++q) {
      if (reach[q] == 0) continue;
      for (u32 d = 0; d < p; ++d) nxt[a.step(q, d)] += reach[q];
    }
    reach.swap(nxt);
  }
  return counts;
}

inline CountResult count_letter(const Dfao& a, u32 letter, const BigInt& N) {
  if (letter >= a.modulus()) throw Error("letter out of range");
  return CountResult{N, letter, count_letters(a, N)[letter]};
}

}  // namespace seqinv
