#pragma once

// OEIS b-files: "index value" per line, '#' comments, contiguous indices.

#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "seqinv/error.hpp"
#include "seqinv/field.hpp"

namespace seqinv {

struct BFile {
  std::string source;
  u64 first_index = 0;
  std::vector<std::int64_t> values;  // values[i] is the term at first_index + i

  std::size_t size() const { return values.size(); }
};

inline BFile parse_bfile(const std::string& text, const std::string& source = "<input>") {
  BFile b;
  b.source = source;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  auto fail = [&](const std::string& what) {
    throw Error(source + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string a, v, extra;
    if (!(ls >> a)) continue;
    if (!(ls >> v) || (ls >> extra)) fail("expected \"index value\"");
    u64 idx = 0;
    std::int64_t val = 0;
    try {
      std::size_t used = 0;
      if (a[0] == '-') fail("negative index");
      idx = std::stoull(a, &used);
      if (used != a.size()) fail("malformed index");
      val = std::stoll(v, &used);
      if (used != v.size()) fail("malformed value");
    } catch (const std::logic_error&) {
      fail("malformed line");
    }
    if (first) {
      b.first_index = idx;
      first = false;
    } else {
      const u64 want = b.first_index + b.values.size();
      if (idx < want) fail("index " + std::to_string(idx) + " out of order");
      if (idx > want) fail("gap at index " + std::to_string(want));
    }
    b.values.push_back(val);
  }
  return b;
}

struct OeisComparison {
  std::size_t compared = 0;    // overlapping terms
  std::size_t agree_len = 0;   // leading terms that agree
  std::optional<u64> first_mismatch;

  bool full_agreement() const { return compared > 0 && !first_mismatch; }
};

/// Compares the b-file against terms[first_index ...].
inline OeisComparison compare_oeis(const BFile& b, std::span<const u32> terms) {
  OeisComparison c;
  if (b.first_index >= terms.size()) return c;
  c.compared = std::min<std::size_t>(b.size(), terms.size() - b.first_index);
  for (std::size_t i = 0; i < c.compared; ++i) {
    if (b.values[i] != static_cast<std::int64_t>(terms[b.first_index + i])) {
      c.first_mismatch = b.first_index + i;
      return c;
    }
    ++c.agree_len;
  }
  return c;
}

}  // namespace seqinv
