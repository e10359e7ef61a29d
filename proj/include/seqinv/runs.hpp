#pragma once

// Longest blocks of equal letters, and of nonzero letters, in a term prefix.

#include <cstdint>
#include <span>
#include <vector>

#include "seqinv/field.hpp"

namespace seqinv {

struct RunStat {
  u64 length = 0;
  u64 first_start = 0;  // start of the first run attaining `length`
};

struct RunReport {
  u64 scanned = 0;
  std::vector<RunStat> per_letter;  // index = letter
  RunStat nonzero;
};

inline RunReport max_runs(std::span<const u32> terms, u32 modulus) {
  RunReport r;
  r.scanned = terms.size();
  r.per_letter.assign(modulus, {});
  u64 start = 0, nz_start = 0;
  for (u64 n = 0; n < terms.size(); ++n) {
    const u32 x = terms[n];
    if (n == 0 || x != terms[n - 1]) start = n;
    if (x < modulus) {
      auto& s = r.per_letter[x];
      if (n - start + 1 > s.length) s = {n - start + 1, start};
    }
    if (x == 0) continue;
    if (n == 0 || terms[n - 1] == 0) nz_start = n;
    if (n - nz_start + 1 > r.nonzero.length) r.nonzero = {n - nz_start + 1, nz_start};
  }
  return r;
}

}  // namespace seqinv
