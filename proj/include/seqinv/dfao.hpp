#pragma once

/**
 * @file dfao.hpp
 * @brief LSD-first automata with output, synthesized from a term oracle.
 *
 * A state stands for a kernel subsequence n -> a(p^k n + l) and carries every
 * label (k, l) merged into it; the representative is the least label.  The
 * machine is complete, reads digits least significant first, and its value on
 * n is the output of the state reached on the canonical digits of n.  Because
 * appending zeros does not change n, out(next(q, 0)) = out(q) everywhere.
 *
 * Synthesis closes the kernel breadth first from (0, 0) and merges labels
 * whose subsequences agree on a signature prefix.  That merge is heuristic,
 * so the result is minimized and then checked term by term against the
 * oracle; the machine records the bound it was certified to.
 */

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seqinv/error.hpp"
#include "seqinv/field.hpp"

namespace seqinv {

struct KernelLabel {
  u32 k = 0;
  u64 l = 0;
  friend auto operator<=>(const KernelLabel&, const KernelLabel&) = default;
};

struct DfaoState {
  std::vector<KernelLabel> labels;  // sorted, front() is the representative
  u32 out = 0;
  std::vector<u32> next;

  /// Least label; machines built without kernel bookkeeping may have none.
  std::optional<KernelLabel> rep() const {
    if (labels.empty()) return std::nullopt;
    return labels.front();
  }
};

class Dfao {
 public:
  Dfao(Prime modulus, u32 base) : modulus_(modulus), base_(base) {
    if (base < 2) throw Error("alphabet must have at least two letters");
  }

  Prime modulus() const { return modulus_; }
  u32 base() const { return base_; }
  u32 initial() const { return initial_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<DfaoState>& states() const { return states_; }
  const DfaoState& state(u32 q) const { return states_.at(q); }
  u64 certified_below() const { return certified_below_; }

  void set_initial(u32 q) { initial_ = q; }
  void set_certified_below(u64 m) { certified_below_ = m; }
  std::vector<DfaoState>& mutable_states() { return states_; }

  u32 add_state(DfaoState s) {
    states_.push_back(std::move(s));
    return static_cast<u32>(states_.size() - 1);
  }

  u32 step(u32 q, u32 digit) const { return states_[q].next[digit]; }

  u32 run(u32 q, std::span<const u32> word) const {
    for (u32 d : word) q = states_[q].next[d];
    return q;
  }
  u32 run(u32 q, const DigitString& w) const {
    if (w.base != base_) throw Error("word base does not match the machine");
    return run(q, std::span<const u32>(w.digits));
  }

  u32 out(u32 q) const { return states_[q].out; }

  /// a(n): feed the canonical base digits of n from the initial state.
  u32 evaluate(u64 n) const {
    u32 q = initial_;
    for (; n; n /= base_) q = states_[q].next[n % base_];
    return states_[q].out;
  }

  /// Throws when the structure is malformed (dangling edge, wrong arity, bad output).
  void validate() const {
    if (states_.empty()) throw Error("machine has no states");
    if (initial_ >= states_.size()) throw Error("initial state out of range");
    for (const auto& s : states_) {
      if (s.next.size() != base_) throw Error("transition function is not total");
      for (u32 t : s.next)
        if (t >= states_.size()) throw Error("transition target out of range");
      if (s.out >= modulus_) throw Error("output letter out of range");
    }
  }

  friend bool operator==(const Dfao& a, const Dfao& b) {
    if (!(a.modulus_ == b.modulus_) || a.base_ != b.base_ || a.initial_ != b.initial_ ||
        a.states_.size() != b.states_.size())
      return false;
    for (std::size_t i = 0; i < a.states_.size(); ++i) {
      const auto& x = a.states_[i];
      const auto& y = b.states_[i];
      if (x.out != y.out || x.next != y.next || x.labels != y.labels) return false;
    }
    return true;
  }

 private:
  Prime modulus_;
  u32 base_;
  u32 initial_ = 0;
  std::vector<DfaoState> states_;
  u64 certified_below_ = 0;
};

namespace detail {

/// Moore refinement over raw tables; returns the class of every state.
inline std::vector<u32> moore_classes(const std::vector<std::vector<u32>>& next, const std::vector<u32>& out) {
  const std::size_t n = out.size();
  std::vector<u32> cls(n);
  {
    std::map<u32, u32> ids;
    for (std::size_t q = 0; q < n; ++q) cls[q] = ids.try_emplace(out[q], static_cast<u32>(ids.size())).first->second;
  }
  std::size_t count = 0;
  for (;;) {
    std::map<std::vector<u32>, u32> ids;
    std::vector<u32> refined(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<u32> key;
      key.reserve(next[q].size() + 1);
      key.push_back(cls[q]);
      for (u32 t : next[q]) key.push_back(cls[t]);
      refined[q] = ids.try_emplace(std::move(key), static_cast<u32>(ids.size())).first->second;
    }
    cls.swap(refined);
    if (ids.size() == count) break;
    count = ids.size();
  }
  return cls;
}

}  // namespace detail

/// Minimal equivalent machine, states renumbered breadth first from the
/// initial state (digits ascending); unreachable states are dropped.
inline Dfao minimize(const Dfao& a) {
  a.validate();
  std::vector<std::vector<u32>> next;
  std::vector<u32> out;
  for (const auto& s : a.states()) {
    next.push_back(s.next);
    out.push_back(s.out);
  }
  std::vector<u32> cls = detail::moore_classes(next, out);

  const u32 none = ~0u;
  std::vector<u32> cls_to_new(a.size(), none);
  std::vector<u32> order;  // new index -> old representative state
  std::vector<std::optional<std::pair<KernelLabel, u64>>> found;  // discovery label and stride p^k
  std::deque<u32> queue{a.initial()};
  cls_to_new[cls[a.initial()]] = 0;
  order.push_back(a.initial());
  found.push_back(std::pair{KernelLabel{0, 0}, u64{1}});
  while (!queue.empty()) {
    u32 q = queue.front();
    queue.pop_front();
    const auto parent = found[cls_to_new[cls[q]]];
    for (u32 d = 0; d < a.base(); ++d) {
      u32 t = a.step(q, d);
      if (cls_to_new[cls[t]] != none) continue;
      cls_to_new[cls[t]] = static_cast<u32>(order.size());
      order.push_back(t);
      queue.push_back(t);
      std::optional<std::pair<KernelLabel, u64>> lab;
      if (parent && parent->second <= UINT64_MAX / a.base()) {
        const auto [pl, stride] = *parent;
        lab = std::pair{KernelLabel{pl.k + 1, pl.l + d * stride}, stride * a.base()};
      }
      found.push_back(lab);
    }
  }

  Dfao m(a.modulus(), a.base());
  std::vector<DfaoState> states(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& src = a.state(order[i]);
    states[i].out = src.out;
    for (u32 t : src.next) states[i].next.push_back(cls_to_new[cls[t]]);
  }
  for (std::size_t q = 0; q < a.size(); ++q) {
    u32 idx = cls_to_new[cls[q]];
    if (idx == none) continue;
    auto& dst = states[idx].labels;
    const auto& src = a.state(static_cast<u32>(q)).labels;
    dst.insert(dst.end(), src.begin(), src.end());
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto& s = states[i];
    if (s.labels.empty() && found[i]) s.labels.push_back(found[i]->first);
    std::sort(s.labels.begin(), s.labels.end());
    s.labels.erase(std::unique(s.labels.begin(), s.labels.end()), s.labels.end());
    m.add_state(std::move(s));
  }
  m.set_initial(0);
  m.set_certified_below(a.certified_below());
  return m;
}

struct SynthesisOptions {
  u64 term_budget = 0;      // T; 0 means "all supplied terms"
  u32 max_depth = 4096;     // D
  u32 min_depth = 64;       // D_min
  u32 max_states = 100000;  // S
  u64 verify_below = 100000;  // M
};

struct Verdict {
  bool agrees = true;
  u64 checked = 0;
  std::optional<u64> first_mismatch;
};

/// Compares a(n) with the oracle for every n < min(m, oracle size).
inline Verdict verify(const Dfao& a, std::span<const u32> oracle, u64 m) {
  Verdict v;
  v.checked = std::min<u64>(m, oracle.size());
  for (u64 n = 0; n < v.checked; ++n)
    if (a.evaluate(n) != oracle[n]) {
      v.agrees = false;
      v.first_mismatch = n;
      return v;
    }
  return v;
}

/// Kernel closure from the term oracle; see the file comment.  Throws
/// "not automatic at this budget" past max_states and "insufficient terms"
/// when a label's signature would fall below min_depth.
inline Dfao synthesize(std::span<const u32> oracle, Prime p, const SynthesisOptions& opts = {}) {
  const u64 budget = opts.term_budget ? std::min<u64>(opts.term_budget, oracle.size()) : oracle.size();
  if (opts.min_depth == 0 || opts.min_depth > opts.max_depth) throw Error("invalid signature depths");
  if (budget < opts.min_depth) throw Error("insufficient terms");
  for (u64 n = 0; n < budget; ++n)
    if (oracle[n] >= p) throw Error("oracle value out of range");

  struct Pending {
    KernelLabel label;
    u64 stride;  // p^k
    u64 depth;   // signature length
  };
  auto depth_of = [&](u64 stride, u64 l) -> u64 {
    if (l >= budget) return 0;
    u64 d = (budget - 1 - l) / stride + 1;
    return std::min<u64>(d, opts.max_depth);
  };
  auto prefix_hash = [&](u64 stride, u64 l) {
    u64 h = 1469598103934665603ull;
    for (u64 n = 0; n < opts.min_depth; ++n) {
      h ^= oracle[stride * n + l] + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  };

  std::vector<Pending> reps;  // discovery label of each state
  std::vector<std::vector<KernelLabel>> labels;
  std::vector<std::vector<u32>> next;
  std::unordered_map<u64, std::vector<u32>> buckets;

  auto find_or_add = [&](KernelLabel lab, u64 stride) -> std::pair<u32, bool> {
    const u64 d = depth_of(stride, lab.l);
    if (d < opts.min_depth) throw Error("insufficient terms");
    const u64 h = prefix_hash(stride, lab.l);
    auto& bucket = buckets[h];
    for (u32 s : bucket) {
      const auto& r = reps[s];
      const u64 len = std::min(d, r.depth);
      bool same = true;
      for (u64 n = 0; n < len && same; ++n) same = oracle[stride * n + lab.l] == oracle[r.stride * n + r.label.l];
      if (same) {
        labels[s].push_back(lab);
        return {s, false};
      }
    }
    if (reps.size() >= opts.max_states) throw Error("not automatic at this budget");
    const u32 id = static_cast<u32>(reps.size());
    reps.push_back({lab, stride, d});
    labels.push_back({lab});
    next.emplace_back(p, 0u);
    bucket.push_back(id);
    return {id, true};
  };

  find_or_add({0, 0}, 1);
  for (std::size_t s = 0; s < reps.size(); ++s) {
    const Pending cur = reps[s];
    for (u32 d = 0; d < p; ++d) {
      KernelLabel child{cur.label.k + 1, cur.label.l + d * cur.stride};
      next[s][d] = find_or_add(child, cur.stride * p).first;
    }
  }

  Dfao raw(p, p);
  for (std::size_t s = 0; s < reps.size(); ++s) {
    DfaoState st;
    st.labels = labels[s];
    std::sort(st.labels.begin(), st.labels.end());
    st.out = oracle[reps[s].label.l];
    st.next = next[s];
    raw.add_state(std::move(st));
  }
  raw.set_initial(0);
  Dfao m = minimize(raw);

  Verdict v = verify(m, oracle.first(budget), opts.verify_below);
  if (!v.agrees)
    throw Error("synthesized machine disagrees with the oracle at n = " + std::to_string(*v.first_mismatch));
  m.set_certified_below(v.checked);
  return m;
}

/// Same function read j base digits at a time (alphabet base^j), minimized.
inline Dfao power_alphabet(const Dfao& a, u32 j) {
  if (j == 0) throw Error("block length must be positive");
  u64 big = 1;
  for (u32 i = 0; i < j; ++i) {
    big *= a.base();
    if (big > (1u << 20)) throw Error("recoded alphabet too large");
  }
  Dfao r(a.modulus(), static_cast<u32>(big));
  std::vector<DigitString> blocks;
  for (u64 dgt = 0; dgt < big; ++dgt) blocks.push_back(digits_lsd_padded(dgt, a.base(), j));
  for (const auto& s : a.states()) {
    DfaoState t;
    // (k, l) with j | k is the label (k / j, l) over the recoded alphabet
    for (const auto& lab : s.labels)
      if (lab.k % j == 0) t.labels.push_back({lab.k / j, lab.l});
    t.out = s.out;
    r.add_state(std::move(t));
  }
  for (u32 q = 0; q < a.size(); ++q)
    for (const auto& b : blocks) r.mutable_states()[q].next.push_back(a.run(q, b));
  r.set_initial(a.initial());
  r.set_certified_below(a.certified_below());
  return minimize(r);
}

/// Checks padding invariance and the kernel law on the tracked labels.
/// Returns an empty string when both hold, else a description of the failure.
inline std::string check_kernel_invariants(const Dfao& a) {
  a.validate();
  for (u32 q = 0; q < a.size(); ++q)
    if (a.out(a.step(q, 0)) != a.out(q)) return "padding invariance fails at state " + std::to_string(q);
  std::map<KernelLabel, u32> owner;
  for (u32 q = 0; q < a.size(); ++q)
    for (const auto& lab : a.state(q).labels) owner[lab] = q;
  for (u32 q = 0; q < a.size(); ++q)
    for (const auto& lab : a.state(q).labels) {
      u64 stride = 1;
      for (u32 i = 0; i < lab.k; ++i) stride *= a.base();
      for (u32 d = 0; d < a.base(); ++d) {
        auto it = owner.find({lab.k + 1, lab.l + d * stride});
        if (it != owner.end() && it->second != a.step(q, d))
          return "kernel law fails at state " + std::to_string(q) + " digit " + std::to_string(d);
      }
    }
  return {};
}

}  // namespace seqinv
