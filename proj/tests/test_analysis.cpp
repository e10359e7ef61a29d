#include <gtest/gtest.h>

#include "seqinv/counting.hpp"
#include "seqinv/family.hpp"
#include "seqinv/machines.hpp"
#include "seqinv/probe.hpp"
#include "seqinv/progression.hpp"
#include "seqinv/runs.hpp"
#include "seqinv/sequences.hpp"
#include "seqinv/structure.hpp"
#include "seqinv/sync.hpp"

using namespace seqinv;

namespace {

const Dfao& machine(const std::string& name) {
  static std::map<std::string, Dfao> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    auto id = SequenceId::parse(name);
    const u64 n = id.modulus() == 5 ? 400000 : 200000;
    auto t = terms(id, n);
    SynthesisOptions o;
    o.verify_below = n;
    it = cache.emplace(name, build_machine(id, Route::Algebraic, t.values, o)).first;
  }
  return it->second;
}

std::vector<std::string> words(const ShortestSyncWords& s) {
  std::vector<std::string> out;
  for (const auto& w : s.words) out.push_back(w.str());
  return out;
}

}  // namespace

TEST(Sync, ShortestWordsOfA3) {
  const Dfao& a = machine("c3");
  auto s = shortest_sync_words(a, 4);
  EXPECT_EQ(words(s), std::vector<std::string>{"12"});
  ASSERT_EQ(s.targets.size(), 1u);
  EXPECT_EQ(uniform_reach(a, s.words[0]), std::vector<u32>{s.targets[0]});
  EXPECT_TRUE(is_synchronizing(a).synchronizing);
}

TEST(Sync, ShortestWordsOfA5) {
  const Dfao& a = machine("c5");
  EXPECT_EQ(a.size(), 2236u);
  auto s = shortest_sync_words(a, 3);
  EXPECT_EQ(words(s), (std::vector<std::string>{"14", "24", "33", "34", "43"}));
  for (std::size_t i = 0; i < s.words.size(); ++i)
    EXPECT_EQ(uniform_reach(a, s.words[i]).size(), 1u);
}

TEST(Sync, CertificateWordSynchronizes) {
  for (std::string name : {"c2", "c3"}) {
    const Dfao& a = machine(name);
    auto cert = is_synchronizing(a);
    ASSERT_TRUE(cert.synchronizing) << name;
    EXPECT_EQ(uniform_reach(a, cert.word), std::vector<u32>{cert.target}) << name;
  }
}

TEST(Sync, UAndVAreNotSynchronizing) {
  for (std::string name : {"u", "v"}) {
    auto cert = is_synchronizing(machine(name));
    EXPECT_FALSE(cert.synchronizing) << name;
    EXPECT_TRUE(cert.stuck_pair.has_value()) << name;
  }
  EXPECT_FALSE(shortest_sync_words(machine("u"), 5).length.has_value());
}

TEST(Structure, A5Levels) {
  auto rep = structure_report(machine("c5"));
  EXPECT_EQ(rep.level_sizes(), (std::vector<std::vector<std::size_t>>{{1}, {5, 5}, {2224}, {1}}));
  EXPECT_TRUE(rep.downward_only);
  EXPECT_EQ(rep.components.front().kind, ComponentKind::Initial);
  EXPECT_EQ(rep.components.back().kind, ComponentKind::AbsorbingSink);
}

TEST(Structure, UIsBipartiteC3IsNot) {
  auto b = transition_bipartite(machine("u"));
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->sides[0].size() + b->sides[1].size(), 23u);
  const Dfao& u = machine("u");
  for (u32 q = 0; q < u.size(); ++q)
    for (u32 t : u.state(q).next) EXPECT_NE(b->side_of[q], b->side_of[t]);
  EXPECT_FALSE(transition_bipartite(machine("c3")).has_value());
}

TEST(Family, AffineMembersMatchDirectEvaluation) {
  const Dfao& a = machine("c3");
  for (u64 i = 0; i < 4; ++i) {
    WordFamily f = offset_family(affine_family(4, 3, 2, 1, 1), i);
    FamilyVerdict v = family_eval(a, f);
    for (u64 k = 0; k < 12; ++k) {
      auto n = f.value(k);
      ASSERT_TRUE(n.has_value());
      EXPECT_EQ(v.letters_at(k), std::vector<u32>{a.evaluate(*n)}) << "i=" << i << " k=" << k;
    }
    EXPECT_EQ(v.constant(), std::optional<u32>(1)) << "i=" << i;
  }
}

TEST(Family, PumpedWordsOfA5) {
  const Dfao& a = machine("c5");
  WordFamily f = word_family("442", "2", "001", 5);
  FamilyVerdict v = family_eval(a, f);
  for (u64 k = 0; k < 10; ++k) EXPECT_EQ(v.letters_at(k), std::vector<u32>{a.evaluate(*f.value(k))});
  EXPECT_EQ(v.constant(), std::optional<u32>(1));
}

TEST(Family, BlockFamilyCoversAllMembers) {
  const Dfao& u = machine("u");
  FamilyVerdict v = family_eval(u, block_family(79, 2));
  for (u64 k = 0; k < 10; ++k) {
    std::vector<u32> seen;
    for (u64 j = 0; j < (u64{1} << k); ++j) seen.push_back(u.evaluate((u64{79} << k) + j));
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    EXPECT_EQ(v.letters_at(k), seen) << "k=" << k;
  }
}

TEST(Progression, C3At9nPlus7IsZero) {
  auto pm = progression_automaton(machine("c3"), 9, 7);
  for (u64 n = 0; n < 2000; ++n) EXPECT_EQ(pm.evaluate(n), 0u);
  Dfao d = pm.to_dfao(Prime(3));
  EXPECT_EQ(d.size(), 1u);
}

TEST(Progression, IdentityIsTheMachine) {
  Dfao d = progression_automaton(machine("c3"), 1, 0).to_dfao(Prime(3));
  EXPECT_EQ(d.size(), machine("c3").size());
  for (u64 n = 0; n < 3000; ++n) ASSERT_EQ(d.evaluate(n), machine("c3").evaluate(n));
}

TEST(Progression, MatchesDirectIndexing) {
  const Dfao& v = machine("v");
  for (std::int64_t c : {-3, 0, 5, 17}) {
    auto pm = progression_automaton(v, 4, c);
    for (u64 n = 1; n < 3000; ++n) ASSERT_EQ(pm.evaluate(n), v.evaluate(4 * n + c)) << "c=" << c << " n=" << n;
  }
}

TEST(Progression, NegativeIndexIsUndefined) {
  auto pm = progression_automaton(machine("c3"), 9, -1);
  EXPECT_THROW(pm.evaluate(0), Error);
  EXPECT_NO_THROW(pm.evaluate(1));
  EXPECT_THROW(pm.to_dfao(Prime(3)), Error);
  EXPECT_THROW(progression_automaton(machine("c3"), 6, 0), Error);
}

TEST(Statement, LemmasHoldAndAgreeWithBruteForce) {
  MachineMap mm{{"c3", &machine("c3")}, {"v", &machine("v")}};
  for (std::string text : {"forall n >= 1 : exists k in {-1..6} : c3[9*n+k] = 0",
                           "forall n >= 0 : v[4*n+2] = 0 | v[4*n+3] = 0 | v[4*n+4] = 0 | v[4*n+5] = 0",
                           "forall n >= 0 : c3[9*n+7] = 0"}) {
    auto s = ProgressionStatement::parse(text);
    EXPECT_TRUE(verify_statement(s, mm, 64).holds) << text;
    EXPECT_FALSE(verify_statement_bruteforce(s, mm, 10000).has_value()) << text;
  }
}

TEST(Statement, MutatedLemmaFindsLeastCounterexample) {
  MachineMap mm{{"v", &machine("v")}};
  auto s = ProgressionStatement::parse("forall n >= 0 : v[4*n+2] = 0 | v[4*n+3] = 0 | v[4*n+4] = 0");
  auto brute = verify_statement_bruteforce(s, mm, 100000);
  ASSERT_TRUE(brute.has_value());
  for (u64 cutoff : {1u, 4096u}) {
    auto v = verify_statement(s, mm, cutoff);
    EXPECT_FALSE(v.holds);
    EXPECT_EQ(v.counterexample, brute) << "cutoff " << cutoff;
  }
}

TEST(Statement, ParseErrors) {
  EXPECT_THROW(ProgressionStatement::parse("forall n >= 0 : c3[9*n+7] ="), Error);
  EXPECT_THROW(ProgressionStatement::parse("exists n : c3[n] = 0"), Error);
  MachineMap mm{{"c3", &machine("c3")}};
  EXPECT_THROW(verify_statement(ProgressionStatement::parse("forall n >= 0 : v[4*n] = 0"), mm), Error);
  EXPECT_THROW(verify_statement(ProgressionStatement::parse("forall n >= 0 : c3[9*n] = c3[3*n]"), mm), Error);
}

TEST(Counting, MatchesBruteForce) {
  for (std::string name : {"c3", "u", "t3"}) {
    const Dfao& a = machine(name);
    std::vector<u64> brute(a.modulus(), 0);
    u64 N = 0;
    for (u64 bound : {1u, 2u, 9u, 80u, 1000u, 6561u, 10000u}) {
      for (; N < bound; ++N) ++brute[a.evaluate(N)];
      auto counts = count_letters(a, bound);
      for (u32 x = 0; x < a.modulus(); ++x) EXPECT_EQ(counts[x], BigInt(brute[x])) << name << " N=" << bound;
    }
  }
  EXPECT_EQ(count_letter(machine("c3"), 1, 0).count, BigInt(0));
  EXPECT_THROW(count_letter(machine("c3"), 3, 10), Error);
}

TEST(Counting, HugeBound) {
  BigInt N = 1;
  for (int i = 0; i < 40; ++i) N *= 3;
  auto counts = count_letters(machine("t3"), N);
  for (const auto& c : counts) EXPECT_EQ(c * 3, N);
}

TEST(Runs, SmallBlocks) {
  std::vector<u32> zeros(10, 0);
  auto r = max_runs(zeros, 2);
  EXPECT_EQ(r.per_letter[0].length, 10u);
  EXPECT_EQ(r.per_letter[1].length, 0u);
  EXPECT_EQ(r.nonzero.length, 0u);

  std::vector<u32> mix{0, 2, 2, 1, 0, 1, 1, 1};
  auto m = max_runs(mix, 3);
  EXPECT_EQ(m.per_letter[1].length, 3u);
  EXPECT_EQ(m.per_letter[1].first_start, 5u);
  EXPECT_EQ(m.per_letter[2].length, 2u);
  EXPECT_EQ(m.nonzero.length, 3u);
  EXPECT_EQ(m.nonzero.first_start, 1u);
}

TEST(Probe, P5) {
  auto pr = probe_conjectures(5, 20000, 200000, 5000);
  EXPECT_EQ(pr.offsets, std::vector<u32>{3});
  ASSERT_EQ(pr.offset_counterexample.size(), 1u);
  EXPECT_FALSE(pr.offset_counterexample[0].has_value());
  EXPECT_EQ(pr.run_bound, 4u);
  EXPECT_FALSE(pr.run_violation.has_value());
  EXPECT_TRUE(pr.machine_built);
  EXPECT_EQ(pr.machine_states, 2236u);
  ASSERT_TRUE(pr.shape.has_value());
  EXPECT_TRUE(pr.shape->matches) << pr.shape->detail;
  EXPECT_THROW(probe_conjectures(3, 10, 10, 10), Error);
}
