#pragma once

/**
 * @file progression.hpp
 * @brief Machines for n -> a(m n + c) and a small decision procedure for
 *        universally quantified statements over such terms.
 *
 * With m = p^j and c = q m + r (0 <= r < m), the index m n + c has low digits
 * r and high part n + q.  The machine therefore starts from the state reached
 * on the j digits of r and runs an add-constant transducer on the digits of
 * n: a state is (state of a, pending carry).  Whatever carry is left when the
 * input ends is read as extra digits; a negative leftover means the index is
 * negative and the value is undefined there.
 *
 * Statement syntax (whitespace is free):
 *
 *   forall n >= 1 : exists k in {-1..6} : c3[9*n+k] = 0
 *   forall n >= 0 : v[4*n+2]=0 | v[4*n+3]=0 | v[4*n+4]=0 | v[4*n+5]=0
 *
 * Atoms compare a term with a constant or another term (= or !=).  The
 * connectives are ! & | -> with the usual precedence, plus parentheses.
 * Finite quantifiers `exists`/`forall` bind a name usable in offsets.
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seqinv/dfao.hpp"
#include "seqinv/error.hpp"
#include "seqinv/field.hpp"

namespace seqinv {

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// j with p^j = m, or throws.
inline u32 log_exact(u64 m, u32 p) {
  if (m == 0) throw Error("multiplier must be a power of the base");
  u32 j = 0;
  while (m % p == 0) {
    m /= p;
    ++j;
  }
  if (m != 1) throw Error("multiplier must be a power of the base");
  return j;
}

}  // namespace detail

struct ProgressionMachine {
  u32 base = 2;
  u64 multiplier = 1;
  std::int64_t offset = 0;
  u32 initial = 0;
  std::vector<std::vector<u32>> next;
  std::vector<int> out;  // -1 where the index is negative

  std::size_t size() const { return out.size(); }

  u32 run(u64 n) const {
    u32 s = initial;
    for (; n; n /= base) s = next[s][n % base];
    return s;
  }

  /// a(m n + c); throws "undefined index" when m n + c < 0.
  u32 evaluate(u64 n) const {
    int v = out[run(n)];
    if (v < 0) throw Error("undefined index");
    return static_cast<u32>(v);
  }

  /// Ordinary machine; only possible when no reachable state is undefined.
  Dfao to_dfao(Prime modulus) const {
    Dfao d(modulus, base);
    for (std::size_t s = 0; s < size(); ++s) {
      if (out[s] < 0) throw Error("undefined index");
      DfaoState st;
      st.out = static_cast<u32>(out[s]);
      st.next = next[s];
      d.add_state(std::move(st));
    }
    d.set_initial(initial);
    return minimize(d);
  }
};

inline ProgressionMachine progression_automaton(const Dfao& a, u64 m, std::int64_t c) {
  const u32 p = a.base();
  const u32 j = detail::log_exact(m, p);
  if (m > static_cast<u64>(INT64_MAX)) throw Error("multiplier too large");
  const std::int64_t q = detail::floor_div(c, static_cast<std::int64_t>(m));
  const u64 r = static_cast<u64>(c - q * static_cast<std::int64_t>(m));
  const u32 s0 = a.run(a.initial(), digits_lsd_padded(r, p, j));

  ProgressionMachine pm;
  pm.base = p;
  pm.multiplier = m;
  pm.offset = c;
  std::map<std::pair<u32, std::int64_t>, u32> ids;
  std::vector<std::pair<u32, std::int64_t>> todo;
  auto intern = [&](u32 s, std::int64_t carry) {
    auto [it, fresh] = ids.try_emplace({s, carry}, static_cast<u32>(todo.size()));
    if (fresh) todo.emplace_back(s, carry);
    return it->second;
  };
  pm.initial = intern(s0, q);
  for (std::size_t i = 0; i < todo.size(); ++i) {
    auto [s, carry] = todo[i];
    std::vector<u32> row(p);
    for (u32 x = 0; x < p; ++x) {
      const std::int64_t t = carry + x;
      const std::int64_t nc = detail::floor_div(t, p);
      const u32 digit = static_cast<u32>(t - nc * p);
      row[x] = intern(a.step(s, digit), nc);
    }
    pm.next.push_back(std::move(row));
    pm.out.push_back(carry < 0 ? -1 : static_cast<int>(a.out(a.run(s, digits_lsd(static_cast<u64>(carry), p)))));
  }
  return pm;
}

// --- statements ----------------------------------------------------------------

struct TermKey {
  std::string seq;
  u64 multiplier = 1;
  std::int64_t offset = 0;
  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

namespace stmt {

struct TermExpr {
  std::string seq;
  u64 multiplier = 1;
  std::int64_t constant = 0;
  std::vector<std::pair<int, std::string>> vars;  // (sign, name)
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum Kind { Atom, Not, And, Or, Implies, Exists, Forall } kind = Atom;
  // Atom
  TermExpr lhs;
  bool equal = true;
  std::optional<TermExpr> rhs_term;
  u32 rhs_const = 0;
  // connectives and quantifiers
  NodePtr a, b;
  std::string var;
  std::int64_t lo = 0, hi = 0;
};

using Env = std::map<std::string, std::int64_t>;

inline TermKey resolve(const TermExpr& t, const Env& env) {
  std::int64_t off = t.constant;
  for (const auto& [sign, name] : t.vars) {
    auto it = env.find(name);
    if (it == env.end()) throw Error("unbound name in offset: " + name);
    off += sign * it->second;
  }
  return {t.seq, t.multiplier, off};
}

template <class Lookup>
bool eval(const Node& n, Env& env, const Lookup& value) {
  switch (n.kind) {
    case Node::Atom: {
      u32 l = value(resolve(n.lhs, env));
      u32 r = n.rhs_term ? value(resolve(*n.rhs_term, env)) : n.rhs_const;
      return (l == r) == n.equal;
    }
    case Node::Not: return !eval(*n.a, env, value);
    case Node::And: return eval(*n.a, env, value) && eval(*n.b, env, value);
    case Node::Or: return eval(*n.a, env, value) || eval(*n.b, env, value);
    case Node::Implies: return !eval(*n.a, env, value) || eval(*n.b, env, value);
    case Node::Exists:
    case Node::Forall: {
      const bool want = n.kind == Node::Exists;
      std::optional<std::int64_t> saved;
      if (auto it = env.find(n.var); it != env.end()) saved = it->second;
      bool result = !want;
      for (std::int64_t k = n.lo; k <= n.hi; ++k) {
        env[n.var] = k;
        if (eval(*n.a, env, value) == want) {
          result = want;
          break;
        }
      }
      if (saved) env[n.var] = *saved;
      else env.erase(n.var);
      return result;
    }
  }
  return false;
}

inline void collect(const Node& n, Env& env, std::set<TermKey>& out) {
  switch (n.kind) {
    case Node::Atom:
      out.insert(resolve(n.lhs, env));
      if (n.rhs_term) out.insert(resolve(*n.rhs_term, env));
      return;
    case Node::Not: collect(*n.a, env, out); return;
    case Node::And:
    case Node::Or:
    case Node::Implies:
      collect(*n.a, env, out);
      collect(*n.b, env, out);
      return;
    case Node::Exists:
    case Node::Forall:
      for (std::int64_t k = n.lo; k <= n.hi; ++k) {
        Env inner = env;
        inner[n.var] = k;
        collect(*n.a, inner, out);
      }
      return;
  }
}

class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  std::pair<u64, NodePtr> statement() {
    keyword("forall");
    expect_name("n");
    expect(">=");
    std::int64_t n0 = integer();
    if (n0 < 0) fail("floor must be non-negative");
    expect(":");
    NodePtr body = implication();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return {static_cast<u64>(n0), body};
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("statement parse error at offset " + std::to_string(i_) + ": " + what);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(const std::string& tok) {
    skip();
    return s_.compare(i_, tok.size(), tok) == 0;
  }
  bool accept(const std::string& tok) {
    if (!peek(tok)) return false;
    i_ += tok.size();
    return true;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) fail("expected '" + tok + "'");
  }
  static bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
  std::string name() {
    skip();
    std::size_t st = i_;
    if (i_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) fail("expected a name");
    while (i_ < s_.size() && name_char(s_[i_])) ++i_;
    return s_.substr(st, i_ - st);
  }
  bool peek_keyword(const std::string& kw) {
    skip();
    if (s_.compare(i_, kw.size(), kw) != 0) return false;
    std::size_t e = i_ + kw.size();
    return e >= s_.size() || !name_char(s_[e]);
  }
  void keyword(const std::string& kw) {
    if (!peek_keyword(kw)) fail("expected '" + kw + "'");
    i_ += kw.size();
  }
  void expect_name(const std::string& nm) {
    if (name() != nm) fail("expected '" + nm + "'");
  }
  std::int64_t integer() {
    skip();
    bool neg = false;
    if (i_ < s_.size() && s_[i_] == '-') {
      neg = true;
      ++i_;
    }
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected an integer");
    std::int64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      if (v > (INT64_MAX - 9) / 10) fail("integer too large");
      v = v * 10 + (s_[i_++] - '0');
    }
    return neg ? -v : v;
  }
  bool at_digit() {
    skip();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }

  NodePtr implication() {
    NodePtr l = disjunction();
    if (accept("->")) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Implies;
      n->a = l;
      n->b = implication();
      return n;
    }
    return l;
  }
  NodePtr disjunction() {
    NodePtr l = conjunction();
    while (accept("|")) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Or;
      n->a = l;
      n->b = conjunction();
      l = n;
    }
    return l;
  }
  NodePtr conjunction() {
    NodePtr l = unary();
    while (accept("&")) {
      auto n = std::make_shared<Node>();
      n->kind = Node::And;
      n->a = l;
      n->b = unary();
      l = n;
    }
    return l;
  }
  NodePtr unary() {
    if (peek("!=")) fail("unexpected '!='");
    if (accept("!")) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Not;
      n->a = unary();
      return n;
    }
    if (accept("(")) {
      NodePtr e = implication();
      expect(")");
      return e;
    }
    if (peek_keyword("exists") || peek_keyword("forall")) {
      auto n = std::make_shared<Node>();
      n->kind = peek_keyword("exists") ? Node::Exists : Node::Forall;
      keyword(n->kind == Node::Exists ? "exists" : "forall");
      n->var = name();
      if (n->var == "n") fail("quantified name must differ from n");
      keyword("in");
      expect("{");
      n->lo = integer();
      expect("..");
      n->hi = integer();
      expect("}");
      if (n->lo > n->hi) fail("empty quantifier range");
      expect(":");
      n->a = implication();
      return n;
    }
    return atom();
  }
  TermExpr term() {
    TermExpr t;
    t.seq = name();
    expect("[");
    if (at_digit()) {
      std::int64_t m = integer();
      if (m <= 0) fail("multiplier must be positive");
      t.multiplier = static_cast<u64>(m);
      expect("*");
    }
    expect_name("n");
    while (true) {
      int sign;
      if (accept("+")) sign = 1;
      else if (accept("-")) sign = -1;
      else break;
      if (at_digit()) t.constant += sign * integer();
      else t.vars.emplace_back(sign, name());
    }
    expect("]");
    return t;
  }
  NodePtr atom() {
    auto n = std::make_shared<Node>();
    n->kind = Node::Atom;
    n->lhs = term();
    if (accept("!=")) n->equal = false;
    else expect("=");
    if (at_digit()) {
      std::int64_t v = integer();
      if (v < 0) fail("constant must be non-negative");
      n->rhs_const = static_cast<u32>(v);
    } else {
      n->rhs_term = term();
    }
    return n;
  }

  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace stmt

struct ProgressionStatement {
  std::string text;
  u64 floor = 0;  // n0
  stmt::NodePtr body;

  static ProgressionStatement parse(const std::string& text) {
    auto [n0, body] = stmt::Parser(text).statement();
    return {text, n0, body};
  }

  /// Every term the body can mention, after expanding quantifiers.
  std::vector<TermKey> terms() const {
    std::set<TermKey> s;
    stmt::Env env;
    stmt::collect(*body, env, s);
    return {s.begin(), s.end()};
  }

  template <class Lookup>
  bool holds_with(const Lookup& value) const {
    stmt::Env env;
    return stmt::eval(*body, env, value);
  }
};

using MachineMap = std::map<std::string, const Dfao*>;

struct StatementVerdict {
  bool holds = true;
  std::optional<u64> counterexample;  // least failing n
  u64 enumerated_below = 0;           // n below this were checked term by term
  std::size_t product_states = 0;
};

namespace detail {

inline const Dfao& machine_for(const MachineMap& machines, const std::string& seq) {
  auto it = machines.find(seq);
  if (it == machines.end() || !it->second) throw Error("no machine supplied for " + seq);
  return *it->second;
}

inline u32 direct_value(const MachineMap& machines, const TermKey& t, u64 n) {
  const std::int64_t idx = static_cast<std::int64_t>(t.multiplier * n) + t.offset;
  if (idx < 0) throw Error("undefined index");
  return machine_for(machines, t.seq).evaluate(static_cast<u64>(idx));
}

}  // namespace detail

/// Term-by-term check for floor <= n < limit; returns the least failure.
inline std::optional<u64> verify_statement_bruteforce(const ProgressionStatement& s, const MachineMap& machines,
                                                      u64 limit) {
  for (u64 n = s.floor; n < limit; ++n) {
    bool ok = s.holds_with([&](const TermKey& t) { return detail::direct_value(machines, t, n); });
    if (!ok) return n;
  }
  return std::nullopt;
}

/// Decides the statement for every n >= floor: small n directly, the rest on
/// the product of the progression machines of all terms.
inline StatementVerdict verify_statement(const ProgressionStatement& s, const MachineMap& machines,
                                         u64 cutoff = 4096) {
  const std::vector<TermKey> terms = s.terms();
  if (terms.empty()) throw Error("statement mentions no terms");
  const u64 m = terms.front().multiplier;
  for (const auto& t : terms)
    if (t.multiplier != m) throw Error("mixed multipliers in statement");
  const u32 p = detail::machine_for(machines, terms.front().seq).base();
  for (const auto& t : terms)
    if (detail::machine_for(machines, t.seq).base() != p) throw Error("machines read different bases");
  detail::log_exact(m, p);

  // below `start` every n is checked directly; from there on all indices are >= 0
  u64 start = std::max(s.floor, cutoff);
  for (const auto& t : terms)
    if (t.offset < 0) start = std::max<u64>(start, (static_cast<u64>(-t.offset) + m - 1) / m);

  StatementVerdict v;
  v.enumerated_below = start;
  if (auto bad = verify_statement_bruteforce(s, machines, start)) {
    v.holds = false;
    v.counterexample = bad;
    return v;
  }

  std::vector<ProgressionMachine> comps;
  std::map<TermKey, std::size_t> slot;
  for (const auto& t : terms) {
    slot[t] = comps.size();
    comps.push_back(progression_automaton(detail::machine_for(machines, t.seq), m, t.offset));
  }

  // comparator for n >= start, reading LSD first: (digits consumed, lt/eq/gt)
  const DigitString nd = digits_lsd(start, p);
  const u32 L = static_cast<u32>(nd.size());
  std::vector<bool> nonzero_from(L + 1, false);
  for (u32 i = L; i-- > 0;) nonzero_from[i] = nonzero_from[i + 1] || nd.digits[i] != 0;

  const std::size_t width = comps.size() + 2;
  std::unordered_map<std::string, u32> ids;
  std::vector<std::vector<u32>> states;
  std::vector<std::vector<u32>> next;
  auto key_of = [](const std::vector<u32>& v) { return std::string(reinterpret_cast<const char*>(v.data()), v.size() * 4); };
  auto intern = [&](std::vector<u32> st) {
    auto [it, fresh] = ids.try_emplace(key_of(st), static_cast<u32>(states.size()));
    if (fresh) states.push_back(std::move(st));
    return it->second;
  };
  {
    std::vector<u32> init(width);
    for (std::size_t i = 0; i < comps.size(); ++i) init[i] = comps[i].initial;
    init[width - 2] = 0;
    init[width - 1] = 1;
    intern(std::move(init));
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::vector<u32> row(p);
    for (u32 x = 0; x < p; ++x) {
      std::vector<u32> t(width);
      const auto& cur = states[i];
      for (std::size_t c = 0; c < comps.size(); ++c) t[c] = comps[c].next[cur[c]][x];
      const u32 pos = cur[width - 2];
      const u32 y = pos < L ? nd.digits[pos] : 0;
      t[width - 2] = std::min(pos + 1, L);
      t[width - 1] = x > y ? 2 : x < y ? 0 : cur[width - 1];
      row[x] = intern(std::move(t));
    }
    next.push_back(std::move(row));
  }
  v.product_states = states.size();

  std::vector<bool> bad(states.size(), false);
  bool any_bad = false;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& st = states[i];
    if (nonzero_from[st[width - 2]] || st[width - 1] == 0) continue;  // n < start
    bool ok = s.holds_with([&](const TermKey& t) {
      const std::size_t c = slot.at(t);
      const int val = comps[c].out[st[c]];
      if (val < 0) throw Error("undefined index above the enumeration cutoff");
      return static_cast<u32>(val);
    });
    if (!ok) bad[i] = any_bad = true;
  }
  if (!any_bad) return v;

  // least counterexample: shortest canonical word, then smallest digits from the top
  v.holds = false;
  if (bad[0]) {
    v.counterexample = 0;
    return v;
  }
  std::vector<std::vector<u32>> layers{{0}};
  for (;;) {
    const auto& top = layers.back();
    std::optional<u32> lead;
    for (u32 d = 1; d < p && !lead; ++d)
      for (u32 st : top)
        if (bad[next[st][d]]) {
          lead = d;
          break;
        }
    if (lead) {
      std::vector<u32> digits{*lead};
      std::vector<bool> target(states.size(), false);
      for (u32 st : top)
        if (bad[next[st][*lead]]) target[st] = true;
      for (std::size_t i = layers.size() - 1; i-- > 0;) {
        for (u32 d = 0; d < p; ++d) {
          bool hit = false;
          std::vector<bool> nt(states.size(), false);
          for (u32 st : layers[i])
            if (target[next[st][d]]) nt[st] = hit = true;
          if (hit) {
            digits.push_back(d);
            target = std::move(nt);
            break;
          }
        }
      }
      u64 n = 0;
      for (u32 d : digits) {
        if (n > (UINT64_MAX - d) / p) throw Error("counterexample exceeds 64 bits");
        n = n * p + d;
      }
      v.counterexample = n;
      return v;
    }
    std::vector<bool> mark(states.size(), false);
    std::vector<u32> layer;
    for (u32 st : top)
      for (u32 d = 0; d < p; ++d)
        if (!mark[next[st][d]]) {
          mark[next[st][d]] = true;
          layer.push_back(next[st][d]);
        }
    std::sort(layer.begin(), layer.end());
    layers.push_back(std::move(layer));
    if (layers.size() > 4096) throw Error("counterexample search did not terminate");
  }
}

}  // namespace seqinv
