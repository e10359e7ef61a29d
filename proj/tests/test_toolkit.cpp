#include <gtest/gtest.h>

#include <cstdlib>

#include "seqinv/bfile.hpp"
#include "seqinv/config.hpp"
#include "seqinv/sequences.hpp"

using namespace seqinv;

TEST(BFile, ParsesAndSkipsComments) {
  BFile b = parse_bfile("# header\n0 0\n1 1\n\n# middle\n2 1\n", "x.txt");
  EXPECT_EQ(b.first_index, 0u);
  EXPECT_EQ(b.values, (std::vector<std::int64_t>{0, 1, 1}));
  EXPECT_EQ(parse_bfile("5 -2\n6 3\n").first_index, 5u);
}

TEST(BFile, ReportsGapsAndJunk) {
  try {
    parse_bfile("0 0\n2 1\n", "x.txt");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("gap at index 1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_bfile("1 0\n0 1\n"), Error);
  EXPECT_THROW(parse_bfile("0 zero\n"), Error);
}

TEST(BFile, CompareWithTerms) {
  auto c3 = c_terms(Prime(3), 100);
  BFile good{"c3", 0, {}};
  for (u32 x : c3.values) good.values.push_back(x);
  auto ok = compare_oeis(good, c3.values);
  EXPECT_TRUE(ok.full_agreement());
  EXPECT_EQ(ok.compared, 100u);

  BFile shifted{"c3", 0, std::vector<std::int64_t>(good.values.begin() + 1, good.values.end())};
  auto bad = compare_oeis(shifted, c3.values);
  EXPECT_FALSE(bad.full_agreement());
  EXPECT_EQ(bad.first_mismatch, std::optional<u64>(0));
  EXPECT_EQ(bad.agree_len, 0u);

  BFile offset{"c3", 10, std::vector<std::int64_t>(good.values.begin() + 10, good.values.end())};
  EXPECT_TRUE(compare_oeis(offset, c3.values).full_agreement());
}

TEST(Config, ParsesKeysAndForms) {
  RunConfig c = RunConfig::parse("# budgets\nbudget_p5 = 4e6\nverify_depth=5000\nformat = csv\nfixtures_dir = fx\n");
  EXPECT_EQ(c.budget_p5, 4000000u);
  EXPECT_EQ(c.verify_depth, 5000u);
  EXPECT_TRUE(c.csv);
  EXPECT_EQ(c.fixtures_dir, "fx");
  EXPECT_EQ(c.budget_for(5), 4000000u);
  EXPECT_EQ(c.budget_for(3), u64{1} << 21);
}

TEST(Config, ErrorsCarryLineNumbers) {
  try {
    RunConfig::parse("cutoff = 10\nno_such_key = 3\n");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(RunConfig::parse("cutoff = -4\n"), Error);
  EXPECT_THROW(RunConfig::parse("cutoff = 2.5\n"), Error);
  EXPECT_THROW(RunConfig::parse("cutoff\n"), Error);
  EXPECT_THROW(RunConfig::parse("format = xml\n"), Error);
}

TEST(Config, EnvironmentOverridesBudget) {
  ::setenv("SEQINV_BUDGET", "123456", 1);
  RunConfig c;
  c.apply_environment();
  EXPECT_EQ(c.budget_p5, 123456u);
  ::unsetenv("SEQINV_BUDGET");
  RunConfig d;
  d.apply_environment();
  EXPECT_EQ(d.budget_p5, 4000000u);
}
