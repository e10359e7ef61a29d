#pragma once

/**
 * @file structure.hpp
 * @brief Strongly connected components, levels, and transition 2-colourings.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "seqinv/dfao.hpp"

namespace seqinv {

enum class ComponentKind { Initial, Cycle, Large, AbsorbingSink, Other };

inline const char* component_kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::Initial: return "initial";
    case ComponentKind::Cycle: return "cycle";
    case ComponentKind::Large: return "large";
    case ComponentKind::AbsorbingSink: return "absorbing-sink";
    case ComponentKind::Other: return "other";
  }
  return "?";
}

struct Component {
  std::vector<u32> states;  // sorted
  ComponentKind kind = ComponentKind::Other;
  u32 level = 0;            // longest path from the initial component in the condensation
  std::vector<u32> successors;  // other components entered directly, sorted
};

struct StructureReport {
  std::vector<Component> components;  // ordered by (level, smallest state)
  std::vector<u32> component_of;      // state -> component index
  bool downward_only = true;          // every edge stays in its component or goes to a higher level

  /// Component sizes grouped by level, e.g. {{1}, {5, 5}, {2224}, {1}}.
  std::vector<std::vector<std::size_t>> level_sizes() const {
    std::vector<std::vector<std::size_t>> r;
    for (const auto& c : components) {
      if (r.size() <= c.level) r.resize(c.level + 1);
      r[c.level].push_back(c.states.size());
    }
    for (auto& v : r) std::sort(v.begin(), v.end());
    return r;
  }
};

namespace detail {

/// Iterative Tarjan; component ids come out in reverse topological order.
inline std::vector<u32> tarjan(const Dfao& a, u32& count) {
  const u32 n = static_cast<u32>(a.size());
  const u32 none = ~0u;
  std::vector<u32> index(n, none), low(n, 0), comp(n, none), stack;
  std::vector<bool> on_stack(n, false);
  struct Frame { u32 v; u32 next_digit; };
  std::vector<Frame> call;
  u32 counter = 0;
  count = 0;
  for (u32 root = 0; root < n; ++root) {
    if (index[root] != none) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next_digit < a.base()) {
        u32 w = a.step(f.v, f.next_digit++);
        if (index[w] == none) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const u32 v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        u32 w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
    }
  }
  return comp;
}

}  // namespace detail

inline StructureReport structure_report(const Dfao& a) {
  a.validate();
  u32 count = 0;
  std::vector<u32> comp = detail::tarjan(a, count);

  std::vector<Component> raw(count);
  for (u32 q = 0; q < a.size(); ++q) raw[comp[q]].states.push_back(q);
  for (u32 q = 0; q < a.size(); ++q)
    for (u32 t : a.state(q).next)
      if (comp[t] != comp[q]) raw[comp[q]].successors.push_back(comp[t]);
  for (auto& c : raw) {
    std::sort(c.successors.begin(), c.successors.end());
    c.successors.erase(std::unique(c.successors.begin(), c.successors.end()), c.successors.end());
  }

  // Tarjan numbers sinks first, so decreasing id is a topological order.
  std::vector<u32> level(count, 0);
  for (u32 c = count; c-- > 0;)
    for (u32 s : raw[c].successors) level[s] = std::max(level[s], level[c] + 1);

  std::size_t largest = 0;
  for (const auto& c : raw) largest = std::max(largest, c.states.size());
  const u32 init_comp = comp[a.initial()];
  for (u32 c = 0; c < count; ++c) {
    auto& k = raw[c];
    k.level = level[c];
    const bool single = k.states.size() == 1;
    bool all_self = single;
    if (single)
      for (u32 t : a.state(k.states[0]).next) all_self = all_self && t == k.states[0];
    bool cycle = k.states.size() >= 2;
    if (cycle)
      for (u32 q : k.states) {
        std::vector<u32> inside;
        for (u32 t : a.state(q).next)
          if (comp[t] == c) inside.push_back(t);
        std::sort(inside.begin(), inside.end());
        inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
        cycle = cycle && inside.size() == 1;
      }
    if (c == init_comp) k.kind = ComponentKind::Initial;
    else if (all_self) k.kind = ComponentKind::AbsorbingSink;
    else if (cycle) k.kind = ComponentKind::Cycle;
    else if (k.states.size() == largest && largest > 1) k.kind = ComponentKind::Large;
    else k.kind = ComponentKind::Other;
  }

  std::vector<u32> order(count);
  for (u32 c = 0; c < count; ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](u32 x, u32 y) {
    if (raw[x].level != raw[y].level) return raw[x].level < raw[y].level;
    return raw[x].states.front() < raw[y].states.front();
  });
  std::vector<u32> renum(count);
  for (u32 i = 0; i < count; ++i) renum[order[i]] = i;

  StructureReport rep;
  rep.component_of.resize(a.size());
  for (u32 q = 0; q < a.size(); ++q) rep.component_of[q] = renum[comp[q]];
  for (u32 i = 0; i < count; ++i) {
    Component c = std::move(raw[order[i]]);
    for (u32& s : c.successors) s = renum[s];
    std::sort(c.successors.begin(), c.successors.end());
    rep.components.push_back(std::move(c));
  }
  for (u32 q = 0; q < a.size(); ++q)
    for (u32 t : a.state(q).next) {
      const auto& from = rep.components[rep.component_of[q]];
      const auto& to = rep.components[rep.component_of[t]];
      if (rep.component_of[q] != rep.component_of[t] && to.level <= from.level) rep.downward_only = false;
    }
  return rep;
}

struct Bipartition {
  std::vector<u32> side_of;           // 0 or 1 per state; the initial state is on side 0
  std::vector<u32> sides[2];
};

/// A 2-colouring in which every transition changes side, if one exists.
inline std::optional<Bipartition> transition_bipartite(const Dfao& a) {
  a.validate();
  const u32 n = static_cast<u32>(a.size());
  std::vector<std::vector<u32>> adj(n);
  for (u32 q = 0; q < n; ++q)
    for (u32 t : a.state(q).next) {
      if (t == q) return std::nullopt;
      adj[q].push_back(t);
      adj[t].push_back(q);
    }
  const u32 none = ~0u;
  std::vector<u32> colour(n, none);
  std::vector<u32> order{a.initial()};
  for (u32 root = 0; root < n; ++root) order.push_back(root);
  for (u32 root : order) {
    if (colour[root] != none) continue;
    colour[root] = 0;
    std::vector<u32> stack{root};
    while (!stack.empty()) {
      u32 v = stack.back();
      stack.pop_back();
      for (u32 w : adj[v]) {
        if (colour[w] == none) {
          colour[w] = colour[v] ^ 1u;
          stack.push_back(w);
        } else if (colour[w] == colour[v]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition b;
  b.side_of = colour;
  for (u32 q = 0; q < n; ++q) b.sides[colour[q]].push_back(q);
  return b;
}

}  // namespace seqinv
