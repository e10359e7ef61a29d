#pragma once

// Run parameters for the reproduction suite and the CLI.  A config file is
// plain "key = value" text with '#' comments; SEQINV_BUDGET overrides the
// p = 5 term budget.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "seqinv/error.hpp"
#include "seqinv/field.hpp"

namespace seqinv {

struct RunConfig {
  u64 budget_small = u64{1} << 21;  // term budget for p <= 3 and the binary sequences
  u64 budget_p5 = 4000000;
  u64 verify_depth = 100000;
  u64 scan_depth = 1000000;       // run-length scans
  u64 cross_terms = 5000;         // cross-oracle comparison
  u64 residual_order = 4096;
  u64 compose_order = 2000;
  u64 sync_max_len = 6;
  u64 cutoff = 4096;              // statements: direct enumeration below this n
  u64 brute_limit = 10000;        // statements: brute-force cross-check bound
  u64 count_m_max = 12;           // nonzero(c3, 9^m) <= 8^m
  u64 count_u_k_max = 20;
  u64 count_v_k_max = 18;
  u64 count_r_m = 10;
  u64 family_check_k = 12;        // family verdicts compared with direct evaluation
  u64 probe_prime = 7;
  u64 probe_n = 100000;
  u64 probe_scan = 1000000;
  u64 probe_max_states = 100000;
  std::string output_dir = ".";
  std::string fixtures_dir = "tests/fixtures";
  bool csv = false;

  u64 budget_for(u32 p) const { return p == 5 ? budget_p5 : budget_small; }

  void set(const std::string& key, const std::string& value) {
    auto number = [&]() -> u64 {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(value, &used);
      } catch (const std::logic_error&) {
        throw Error("config: " + key + " expects a number");
      }
      if (used != value.size() || v < 1 || v != static_cast<double>(static_cast<u64>(v)))
        throw Error("config: " + key + " expects a positive integer");
      return static_cast<u64>(v);
    };
    const std::map<std::string, u64*> numbers{
        {"budget_small", &budget_small},     {"budget_p5", &budget_p5},
        {"verify_depth", &verify_depth},     {"scan_depth", &scan_depth},
        {"cross_terms", &cross_terms},       {"residual_order", &residual_order},
        {"compose_order", &compose_order},   {"sync_max_len", &sync_max_len},
        {"cutoff", &cutoff},                 {"brute_limit", &brute_limit},
        {"count_m_max", &count_m_max},       {"count_u_k_max", &count_u_k_max},
        {"count_v_k_max", &count_v_k_max},   {"count_r_m", &count_r_m},
        {"family_check_k", &family_check_k}, {"probe_prime", &probe_prime},
        {"probe_n", &probe_n},               {"probe_scan", &probe_scan},
        {"probe_max_states", &probe_max_states}};
    if (auto it = numbers.find(key); it != numbers.end()) {
      *it->second = number();
    } else if (key == "output_dir") {
      output_dir = value;
    } else if (key == "fixtures_dir") {
      fixtures_dir = value;
    } else if (key == "format") {
      if (value != "json" && value != "csv") throw Error("config: format must be json or csv");
      csv = value == "csv";
    } else {
      throw Error("config: unknown key " + key);
    }
  }

  /// Applies SEQINV_BUDGET if set.
  void apply_environment() {
    if (const char* b = std::getenv("SEQINV_BUDGET"); b && *b) set("budget_p5", b);
  }

  static RunConfig parse(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string{};
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      line = strip(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw Error("config line " + std::to_string(lineno) + ": expected key = value");
      try {
        c.set(strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
      } catch (const Error& e) {
        throw Error("config line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    return c;
  }

  static RunConfig load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot read config " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
  }
};

}  // namespace seqinv
