#pragma once

/**
 * @file probe.hpp
 * @brief Finite-range checks of the open conjectures for c^(p).
 *
 * Nothing here is asserted.  The zero offsets are the consecutive integers
 * (p+1)/2 .. p-2, the run bound is (p+3)/2, and the structural template is:
 * initial state, two p-cycles entered by 0 and by p-1 from the initial
 * state, one further strongly connected part, an absorbing sink, and a
 * synchronizing machine overall.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqinv/machines.hpp"
#include "seqinv/runs.hpp"
#include "seqinv/sequences.hpp"
#include "seqinv/structure.hpp"
#include "seqinv/sync.hpp"

namespace seqinv {

struct TemplateCheck {
  bool matches = false;
  bool synchronizing = false;
  std::vector<std::vector<std::size_t>> level_sizes;
  std::string detail;
};

/// Compares a machine with the conjectured shape of A_p.
inline TemplateCheck conjecture3_template(const Dfao& a) {
  TemplateCheck t;
  const u32 p = a.base();
  StructureReport rep = structure_report(a);
  t.level_sizes = rep.level_sizes();
  t.synchronizing = a.size() <= 6000 && is_synchronizing(a).synchronizing;
  auto kind_of = [&](u32 q) { return rep.components[rep.component_of[q]]; };
  const auto init = kind_of(a.initial());
  const auto zero = kind_of(a.step(a.initial(), 0));
  const auto top = kind_of(a.step(a.initial(), p - 1));
  std::size_t sinks = 0, cycles = 0, rest = 0;
  for (const auto& c : rep.components) {
    if (c.kind == ComponentKind::AbsorbingSink) ++sinks;
    else if (c.kind == ComponentKind::Cycle && c.states.size() == p) ++cycles;
    else if (c.kind != ComponentKind::Initial) ++rest;
  }
  std::vector<std::string> why;
  if (init.states.size() != 1) why.push_back("initial state lies on a cycle");
  if (zero.kind != ComponentKind::Cycle || zero.states.size() != p) why.push_back("0 does not enter a p-cycle");
  if (top.kind != ComponentKind::Cycle || top.states.size() != p) why.push_back("p-1 does not enter a p-cycle");
  if (rep.component_of[a.step(a.initial(), 0)] == rep.component_of[a.step(a.initial(), p - 1)])
    why.push_back("the two cycles coincide");
  if (cycles != 2) why.push_back(std::to_string(cycles) + " p-cycles");
  if (sinks != 1) why.push_back(std::to_string(sinks) + " absorbing states");
  if (rest != 1) why.push_back(std::to_string(rest) + " further components");
  if (!t.synchronizing) why.push_back("not synchronizing");
  t.matches = why.empty();
  for (std::size_t i = 0; i < why.size(); ++i) t.detail += (i ? "; " : "") + why[i];
  return t;
}

struct ConjectureProbe {
  u32 p = 0;
  u64 n_checked = 0;
  std::vector<u32> offsets;                       // i with c_{pn+i} conjectured zero
  std::vector<std::optional<u64>> offset_counterexample;  // least n per offset
  u64 scanned = 0;
  u64 run_bound = 0;                              // (p+3)/2
  std::vector<RunStat> letter_runs;               // index = letter
  std::optional<u32> run_violation;               // a nonzero letter exceeding the bound
  bool machine_built = false;
  std::size_t machine_states = 0;
  std::string machine_note;
  std::optional<TemplateCheck> shape;
};

/// Checks Conjecture-1 offsets for n < n_max, run maxima below `scan`, and
/// attempts the kernel machine with at most `max_states` states.
inline ConjectureProbe probe_conjectures(u32 p, u64 n_max, u64 scan, u64 max_states) {
  const Prime prime(p);
  if (p <= 3) throw Error("the probes concern primes p > 3");
  ConjectureProbe r;
  r.p = p;
  r.n_checked = n_max;
  for (u32 i = (p + 1) / 2; i <= p - 2; ++i) r.offsets.push_back(i);
  const u64 need = std::max<u64>(p * n_max + p, scan);
  TermBlock c = c_terms(prime, need);
  for (u32 i : r.offsets) {
    std::optional<u64> bad;
    for (u64 n = 0; n < n_max && !bad; ++n)
      if (c.values[p * n + i] != 0) bad = n;
    r.offset_counterexample.push_back(bad);
  }
  r.scanned = scan;
  r.run_bound = (p + 3) / 2;
  RunReport runs = max_runs(std::span<const u32>(c.values).first(scan), p);
  r.letter_runs = runs.per_letter;
  for (u32 x = 1; x < p; ++x)
    if (runs.per_letter[x].length > r.run_bound && !r.run_violation) r.run_violation = x;

  SynthesisOptions opts;
  opts.max_states = static_cast<u32>(std::min<u64>(max_states, UINT32_MAX));
  opts.verify_below = std::min<u64>(need, 100000);
  try {
    Dfao a = synthesize_algebraic(algebraic_target(SequenceId{SeqKind::C, p}), c.values, opts);
    r.machine_built = true;
    r.machine_states = a.size();
    r.shape = conjecture3_template(a);
  } catch (const Error& e) {
    r.machine_note = std::string(e.what()) + " (limit " + std::to_string(max_states) + " states)";
  }
  return r;
}

}  // namespace seqinv
