#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "seqinv/dfao.hpp"
#include "seqinv/dfao_io.hpp"
#include "seqinv/machines.hpp"
#include "seqinv/sequences.hpp"

using namespace seqinv;

namespace {

constexpr u64 kTerms = 200000;

Dfao build(const std::string& name, Route route = Route::Algebraic, u64 n = kTerms) {
  auto id = SequenceId::parse(name);
  auto t = terms(id, n);
  SynthesisOptions o;
  o.verify_below = n;
  return build_machine(id, route, t.values, o);
}

const Dfao& a3() {
  static const Dfao a = build("c3");
  return a;
}

}  // namespace

TEST(Synthesis, KernelCounts) {
  EXPECT_EQ(build("c2").size(), 8u);
  EXPECT_EQ(a3().size(), 28u);
  EXPECT_EQ(build("u").size(), 23u);
  EXPECT_EQ(build("v").size(), 33u);
}

TEST(Synthesis, OracleRouteAgreesWithAlgebraic) {
  for (std::string name : {"c2", "c3", "u", "v", "t3", "r"}) {
    Dfao alg = build(name);
    Dfao orc = build(name, Route::Oracle, 1 << 21);
    EXPECT_EQ(alg.size(), orc.size()) << name;
    for (u64 n = 0; n < 5000; ++n) ASSERT_EQ(alg.evaluate(n), orc.evaluate(n)) << name << " n=" << n;
  }
}

TEST(Synthesis, InsufficientTermsThrows) {
  auto t = thue_terms(Prime(3), 10);
  EXPECT_THROW(synthesize(t.values, Prime(3)), Error);
}

TEST(Dfao, EvaluatesC3) {
  EXPECT_EQ(a3().evaluate(7), 0u);
  EXPECT_EQ(a3().evaluate(5), 2u);
  auto t = c_terms(Prime(3), 50000);
  EXPECT_TRUE(verify(a3(), t.values, t.size()).agrees);
  EXPECT_GE(a3().certified_below(), kTerms);
}

TEST(Dfao, CorruptedOutputIsReported) {
  Dfao bad = a3();
  const u32 q = bad.run(bad.initial(), digits_lsd(5, 3));
  bad.mutable_states()[q].out = (bad.out(q) + 1) % 3;
  auto t = c_terms(Prime(3), 1000);
  Verdict v = verify(bad, t.values, 1000);
  EXPECT_FALSE(v.agrees);
  ASSERT_TRUE(v.first_mismatch.has_value());
  EXPECT_EQ(bad.evaluate(*v.first_mismatch), (t[*v.first_mismatch] + 1) % 3);
}

TEST(Minimize, IdempotentAndMergesDuplicates) {
  EXPECT_EQ(minimize(a3()), a3());

  Dfao doubled(Prime(3), 3);
  const u32 n = static_cast<u32>(a3().size());
  for (int copy = 0; copy < 2; ++copy)
    for (const auto& s : a3().states()) {
      DfaoState c = s;
      c.labels.clear();
      for (auto& t : c.next) t += copy ? n : 0;
      doubled.add_state(c);
    }
  // route the digit-0 edge of the initial state into the second copy
  doubled.mutable_states()[a3().initial()].next[0] += n;
  doubled.set_initial(a3().initial());
  Dfao m = minimize(doubled);
  EXPECT_EQ(m.size(), a3().size());
  for (u64 k = 0; k < 3000; ++k) ASSERT_EQ(m.evaluate(k), a3().evaluate(k));
}

TEST(PowerAlphabet, Base4Counts) {
  Dfao c2 = build("c2");
  Dfao c2_4 = power_alphabet(c2, 2);
  EXPECT_EQ(c2_4.base(), 4u);
  EXPECT_EQ(c2_4.size(), 5u);
  Dfao u = build("u");
  Dfao u4 = power_alphabet(u, 2);
  EXPECT_EQ(u4.size(), 12u);
  for (u64 n = 0; n < 20000; ++n) {
    ASSERT_EQ(c2_4.evaluate(n), c2.evaluate(n));
    ASSERT_EQ(u4.evaluate(n), u.evaluate(n));
  }
}

TEST(Kernel, LabelsDescribeSubsequences) {
  // the state with label (k, l) computes n -> a(p^k n + l)
  auto t = c_terms(Prime(3), 300000);
  for (u32 q = 0; q < a3().size(); ++q) {
    auto rep = a3().state(q).rep();
    ASSERT_TRUE(rep.has_value());
    u64 stride = 1;
    for (u32 i = 0; i < rep->k; ++i) stride *= 3;
    ASSERT_LT(rep->l, stride);
    for (u64 n = 0; stride * n + rep->l < t.size() && n < 2000; ++n) {
      u32 s = q;
      for (u64 m = n; m; m /= 3) s = a3().step(s, static_cast<u32>(m % 3));
      ASSERT_EQ(a3().out(s), t[stride * n + rep->l]) << "state " << q << " n=" << n;
    }
  }
  EXPECT_EQ(a3().state(a3().initial()).rep()->k, 0u);
}

TEST(Kernel, SinkHasSelfLoops) {
  const u32 sink = a3().run(a3().initial(), parse_word("12", 3));
  EXPECT_EQ(a3().out(sink), 0u);
  for (u32 t : a3().state(sink).next) EXPECT_EQ(t, sink);
}

TEST(Synthesis, Deterministic) {
  EXPECT_EQ(build("c3"), a3());
  EXPECT_EQ(to_json(build("c3")).dump(), to_json(a3()).dump());
}

TEST(DfaoIo, JsonRoundTrip) {
  Dfao back = dfao_from_json(to_json(a3()).dump());
  EXPECT_EQ(back, a3());
  EXPECT_EQ(back.certified_below(), a3().certified_below());
}

TEST(DfaoIo, JsonErrors) {
  EXPECT_THROW(dfao_from_json(std::string("{not json")), Error);
  EXPECT_THROW(dfao_from_json(std::string(R"({"version":1})")), Error);
}

TEST(DfaoIo, DotRoundTrip) {
  const std::string dot = to_dot(a3());
  const std::regex node(R"re(^\s*q\d+ \[label=)re");
  std::istringstream lines(dot);
  int nodes = 0;
  for (std::string line; std::getline(lines, line);) nodes += std::regex_search(line, node);
  EXPECT_EQ(nodes, 28);
  Dfao back = dot_to_dfao(dot);
  EXPECT_EQ(back.size(), a3().size());
  for (u64 n = 0; n < 5000; ++n) ASSERT_EQ(back.evaluate(n), a3().evaluate(n));
  for (u32 q = 0; q < back.size(); ++q) EXPECT_EQ(back.state(q).rep(), a3().state(q).rep());
}
