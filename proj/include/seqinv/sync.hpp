#pragma once

/**
 * @file sync.hpp
 * @brief Synchronizing words.
 *
 * Words are LSD-first digit strings applied left to right to every state at
 * once.  is_synchronizing() is the exact quadratic pair algorithm; the word it
 * returns is built by collapsing pairs greedily and is not minimal.
 * shortest_sync_words() searches exhaustively up to a length bound.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "seqinv/dfao.hpp"
#include "seqinv/error.hpp"
#include "seqinv/field.hpp"

namespace seqinv {

/// { delta*(q, w) : q in Q } over all states, sorted.
inline std::vector<u32> uniform_reach(const Dfao& a, const DigitString& w) {
  std::vector<u32> out;
  out.reserve(a.size());
  for (u32 q = 0; q < a.size(); ++q) out.push_back(a.run(q, w));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct SyncCertificate {
  bool synchronizing = false;
  DigitString word;                               // set when synchronizing
  u32 target = 0;                                 // common state reached by `word`
  std::optional<std::pair<u32, u32>> stuck_pair;  // set when not
};

/// Pair algorithm; refuses machines whose pair graph would exceed `max_states` states.
inline SyncCertificate is_synchronizing(const Dfao& a, std::size_t max_states = 6000) {
  const std::size_t n = a.size();
  const u32 p = a.base();
  if (n > max_states) throw Error("machine too large for the pair algorithm");
  SyncCertificate cert;
  cert.word.base = p;
  if (n == 1) {
    cert.synchronizing = true;
    cert.target = 0;
    return cert;
  }

  // pre[d] as CSR: states mapped to x by digit d
  std::vector<std::vector<u32>> start(p, std::vector<u32>(n + 1, 0)), src(p, std::vector<u32>(n));
  for (u32 d = 0; d < p; ++d) {
    for (u32 q = 0; q < n; ++q) ++start[d][a.step(q, d) + 1];
    for (std::size_t x = 0; x < n; ++x) start[d][x + 1] += start[d][x];
    std::vector<u32> fill(start[d].begin(), start[d].end() - 1);
    for (u32 q = 0; q < n; ++q) src[d][fill[a.step(q, d)]++] = q;
  }

  auto id = [n](u32 x, u32 y) { return static_cast<std::size_t>(std::min(x, y)) * n + std::max(x, y); };
  constexpr u32 kUnset = ~0u;
  std::vector<u32> via(n * n, kUnset);  // digit that moves the pair closer to the diagonal
  std::vector<std::pair<u32, u32>> queue;
  for (u32 x = 0; x < n; ++x) {
    via[id(x, x)] = p;  // sentinel: already merged
    queue.emplace_back(x, x);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [x, y] = queue[head];
    for (u32 d = 0; d < p; ++d)
      for (u32 i = start[d][x]; i < start[d][x + 1]; ++i)
        for (u32 j = start[d][y]; j < start[d][y + 1]; ++j) {
          u32 q = src[d][i], r = src[d][j];
          if (q == r) continue;
          auto& v = via[id(q, r)];
          if (v != kUnset) continue;
          v = d;
          queue.emplace_back(q, r);
        }
  }
  for (u32 x = 0; x < n; ++x)
    for (u32 y = x + 1; y < n; ++y)
      if (via[id(x, y)] == kUnset) {
        cert.stuck_pair = {x, y};
        return cert;
      }

  std::vector<u32> current(n);
  for (u32 q = 0; q < n; ++q) current[q] = q;
  while (current.size() > 1) {
    u32 x = current[0], y = current[1];
    std::vector<u32> segment;
    while (x != y) {
      u32 d = via[id(x, y)];
      segment.push_back(d);
      x = a.step(x, d);
      y = a.step(y, d);
    }
    for (u32& q : current) q = a.run(q, segment);
    std::sort(current.begin(), current.end());
    current.erase(std::unique(current.begin(), current.end()), current.end());
    cert.word.digits.insert(cert.word.digits.end(), segment.begin(), segment.end());
  }
  cert.synchronizing = true;
  cert.target = current[0];
  return cert;
}

struct ShortestSyncWords {
  std::optional<std::size_t> length;  // unset when none up to the bound
  std::vector<DigitString> words;     // in lexicographic reading order
  std::vector<u32> targets;           // state reached by each word
};

/// All synchronizing words of minimal length, if that length is <= max_len.
inline ShortestSyncWords shortest_sync_words(const Dfao& a, std::size_t max_len = 6) {
  ShortestSyncWords res;
  const u32 p = a.base();
  if (a.size() == 1) {
    res.length = 0;
    res.words.push_back(DigitString{{}, p});
    res.targets.push_back(0);
    return res;
  }
  std::vector<u32> all(a.size());
  for (u32 q = 0; q < a.size(); ++q) all[q] = q;

  for (std::size_t len = 1; len <= max_len && res.words.empty(); ++len) {
    std::vector<u32> word;
    // depth-first over words of this length, carrying the deduplicated image
    auto dfs = [&](auto&& self, const std::vector<u32>& image) -> void {
      if (word.size() == len) {
        if (image.size() == 1) {
          res.words.push_back(DigitString{word, p});
          res.targets.push_back(image[0]);
        }
        return;
      }
      for (u32 d = 0; d < p; ++d) {
        std::vector<u32> next;
        next.reserve(image.size());
        for (u32 q : image) next.push_back(a.step(q, d));
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        word.push_back(d);
        self(self, next);
        word.pop_back();
      }
    };
    dfs(dfs, all);
    if (!res.words.empty()) res.length = len;
  }
  return res;
}

}  // namespace seqinv
