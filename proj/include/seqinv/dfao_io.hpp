#pragma once

/**
 * @file dfao_io.hpp
 * @brief JSON and DOT forms of a machine.
 *
 * JSON (version 1):
 * @code
 * {"version": 1, "p": 3, "base": 3, "initial": 0, "certified_below": 100000,
 *  "states": [{"id": 0, "k": 0, "l": 0, "out": 0, "next": [1, 2, 3],
 *              "labels": [[0, 0], [1, 0]]}, ...]}
 * @endcode
 * "base" defaults to "p", and "labels", "k", "l" may be omitted.  DOT output
 * has one node per state labelled "(k,l)/out" and one edge per target with
 * the digits that lead there; dot_to_dfao() reads that form back.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqinv/dfao.hpp"
#include "seqinv/error.hpp"

namespace seqinv {

inline nlohmann::json to_json(const Dfao& a) {
  nlohmann::json j;
  j["version"] = 1;
  j["p"] = a.modulus().value();
  j["base"] = a.base();
  j["initial"] = a.initial();
  j["certified_below"] = a.certified_below();
  auto& states = j["states"] = nlohmann::json::array();
  for (u32 q = 0; q < a.size(); ++q) {
    const auto& s = a.state(q);
    nlohmann::json e;
    e["id"] = q;
    if (auto r = s.rep()) {
      e["k"] = r->k;
      e["l"] = r->l;
    }
    e["out"] = s.out;
    e["next"] = s.next;
    auto& labs = e["labels"] = nlohmann::json::array();
    for (const auto& lab : s.labels) labs.push_back({lab.k, lab.l});
    states.push_back(std::move(e));
  }
  return j;
}

inline Dfao dfao_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("version") && j.at("version").get<int>() != 1) throw Error("unsupported machine version");
    const Prime p(j.at("p").get<u32>());
    const u32 base = j.contains("base") ? j.at("base").get<u32>() : p.value();
    Dfao a(p, base);
    const auto& states = j.at("states");
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& e = states[i];
      if (e.contains("id") && e.at("id").get<std::size_t>() != i) throw Error("state ids must be 0, 1, 2, ...");
      DfaoState s;
      s.out = e.at("out").get<u32>();
      s.next = e.at("next").get<std::vector<u32>>();
      if (e.contains("labels")) {
        for (const auto& lab : e.at("labels")) s.labels.push_back({lab.at(0).get<u32>(), lab.at(1).get<u64>()});
      } else if (e.contains("k") && e.contains("l")) {
        s.labels.push_back({e.at("k").get<u32>(), e.at("l").get<u64>()});
      }
      std::sort(s.labels.begin(), s.labels.end());
      a.add_state(std::move(s));
    }
    a.set_initial(j.at("initial").get<u32>());
    if (j.contains("certified_below")) a.set_certified_below(j.at("certified_below").get<u64>());
    a.validate();
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed machine JSON: ") + e.what());
  }
}

inline Dfao dfao_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed machine JSON: ") + e.what());
  }
  return dfao_from_json(j);
}

inline std::string to_dot(const Dfao& a) {
  std::ostringstream os;
  os << "digraph dfao {\n";
  os << "  // p=" << a.modulus().value() << " base=" << a.base() << "\n";
  os << "  rankdir=LR;\n  start [shape=point];\n";
  for (u32 q = 0; q < a.size(); ++q) {
    const auto& s = a.state(q);
    std::string lab = "?";
    if (auto r = s.rep()) lab = "(" + std::to_string(r->k) + "," + std::to_string(r->l) + ")";
    os << "  q" << q << " [label=\"" << lab << "/" << s.out << "\"];\n";
  }
  os << "  start -> q" << a.initial() << ";\n";
  for (u32 q = 0; q < a.size(); ++q) {
    std::map<u32, std::vector<u32>> by_target;
    for (u32 d = 0; d < a.base(); ++d) by_target[a.step(q, d)].push_back(d);
    for (const auto& [t, ds] : by_target) {
      os << "  q" << q << " -> q" << t << " [label=\"";
      for (std::size_t i = 0; i < ds.size(); ++i) os << (i ? "," : "") << ds[i];
      os << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

/// Reads the output of to_dot(); only the representative label survives.
inline Dfao dot_to_dfao(const std::string& text) {
  static const std::regex header(R"re(//\s*p=(\d+)\s+base=(\d+))re");
  static const std::regex node(R"re(^\s*q(\d+)\s*\[label="(?:\((\d+),(\d+)\)|\?)/(\d+)"\];)re");
  static const std::regex start(R"re(^\s*start\s*->\s*q(\d+)\s*;)re");
  static const std::regex edge(R"re(^\s*q(\d+)\s*->\s*q(\d+)\s*\[label="([\d,]+)"\];)re");

  std::smatch m;
  if (!std::regex_search(text, m, header)) throw Error("DOT text lacks the p/base header");
  const Prime p(static_cast<u32>(std::stoul(m[1])));
  const u32 base = static_cast<u32>(std::stoul(m[2]));
  Dfao a(p, base);
  std::map<u32, DfaoState> states;
  std::optional<u32> initial;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (std::regex_search(line, m, node)) {
      auto& s = states[static_cast<u32>(std::stoul(m[1]))];
      if (m[2].matched) s.labels = {{static_cast<u32>(std::stoul(m[2])), std::stoull(m[3])}};
      s.out = static_cast<u32>(std::stoul(m[4]));
      s.next.assign(base, ~0u);
    } else if (std::regex_search(line, m, start)) {
      initial = static_cast<u32>(std::stoul(m[1]));
    } else if (std::regex_search(line, m, edge)) {
      auto it = states.find(static_cast<u32>(std::stoul(m[1])));
      if (it == states.end()) throw Error("DOT edge before its node at line " + std::to_string(lineno));
      const u32 t = static_cast<u32>(std::stoul(m[2]));
      std::istringstream ds(m[3].str());
      std::string d;
      while (std::getline(ds, d, ',')) {
        const u32 digit = static_cast<u32>(std::stoul(d));
        if (digit >= base) throw Error("DOT digit out of range at line " + std::to_string(lineno));
        it->second.next[digit] = t;
      }
    }
  }
  if (!initial) throw Error("DOT text has no start edge");
  u32 expect = 0;
  for (auto& [id, s] : states) {
    if (id != expect++) throw Error("DOT state ids are not contiguous");
    a.add_state(std::move(s));
  }
  a.set_initial(*initial);
  a.validate();
  return a;
}

}  // namespace seqinv
