#include <gtest/gtest.h>

#include "seqinv/sequences.hpp"

using namespace seqinv;

namespace {

std::vector<u32> head(const TermBlock& t, std::size_t n) {
  return {t.values.begin(), t.values.begin() + static_cast<std::ptrdiff_t>(n)};
}

}  // namespace

TEST(Thue, FirstTerms) {
  EXPECT_EQ(head(thue_terms(Prime(2), 8), 8), (std::vector<u32>{0, 1, 1, 0, 1, 0, 0, 1}));
  EXPECT_EQ(head(thue_terms(Prime(3), 9), 9), (std::vector<u32>{0, 1, 2, 1, 2, 0, 2, 0, 1}));
}

TEST(Thue, RecurrenceMatchesDigitSums) {
  for (u32 p : {2u, 3u, 5u, 7u})
    EXPECT_EQ(thue_terms(Prime(p), 20000).values, thue_terms_by_digits(Prime(p), 20000).values);
}

TEST(Rudin, Variants) {
  EXPECT_EQ(head(rudin_terms(RudinVariant::Plain, 8), 8), (std::vector<u32>{1, 1, 1, 0, 1, 1, 0, 1}));
  EXPECT_EQ(head(rudin_terms(RudinVariant::Zeroed, 4), 4), (std::vector<u32>{0, 1, 1, 0}));
  EXPECT_EQ(head(rudin_terms(RudinVariant::Shifted, 4), 4), (std::vector<u32>{0, 1, 1, 1}));
}

TEST(Rudin, RecurrenceMatchesPattern) {
  EXPECT_EQ(rudin_terms(RudinVariant::Plain, 1 << 15).values,
            rudin_terms(RudinVariant::Plain, 1 << 15, Method::DigitDefinition).values);
}

TEST(SW, FirstTerms) {
  auto [s, w] = sw_terms(Prime(3), 7);
  EXPECT_EQ(s.values, (std::vector<u32>{0, 1, 2, 2, 2, 2, 1}));
  EXPECT_EQ(head(w, 6), (std::vector<u32>{2, 2, 1, 2, 1, 1}));
}

TEST(C, FirstTerms) {
  auto c = c_terms(Prime(3), 12);
  EXPECT_EQ(head(c, 9), (std::vector<u32>{0, 1, 1, 1, 1, 2, 2, 0, 2}));
  EXPECT_EQ(c[11], 0u);
}

TEST(C, MethodsAgree) {
  for (u32 p : {2u, 3u, 5u}) {
    Prime prime(p);
    const std::size_t n = 1500;
    auto newton = c_terms(prime, n, Method::Newton);
    EXPECT_EQ(newton.values, c_terms(prime, n, Method::Recurrence).values) << "p=" << p;
    EXPECT_EQ(newton.values, c_terms(prime, n, Method::ReferenceInverse).values) << "p=" << p;
  }
}

TEST(C, UnsupportedMethodThrows) {
  EXPECT_THROW(c_terms(Prime(3), 10, Method::DigitDefinition), Error);
}

TEST(UV, FirstTermsAndMethodsAgree) {
  auto u = inverse_terms(SeqKind::U, 2000);
  auto v = inverse_terms(SeqKind::V, 2000);
  EXPECT_EQ(head(u, 4), (std::vector<u32>{0, 1, 1, 0}));
  EXPECT_EQ(head(v, 4), (std::vector<u32>{0, 1, 1, 1}));
  EXPECT_EQ(u.values, inverse_terms(SeqKind::U, 2000, Method::ReferenceInverse).values);
  EXPECT_EQ(v.values, inverse_terms(SeqKind::V, 2000, Method::ReferenceInverse).values);
  EXPECT_THROW(inverse_terms(SeqKind::C, 10), Error);
}

TEST(SequenceId, ParseAndName) {
  for (std::string s : {"t3", "r", "r1", "r2", "s5", "w3", "c7", "u", "v"})
    EXPECT_EQ(SequenceId::parse(s).name(), s);
  EXPECT_EQ(SequenceId::parse("r''").name(), "r2");
  EXPECT_EQ(SequenceId::parse("d"), SequenceId::parse("c5"));
  EXPECT_EQ(SequenceId::parse("u").modulus(), 2u);
  EXPECT_THROW(SequenceId::parse("c4"), Error);
  EXPECT_THROW(SequenceId::parse("x3"), Error);
  EXPECT_THROW(SequenceId::parse(""), Error);
}

TEST(Terms, DispatchAndBFile) {
  auto t = terms(SequenceId::parse("c3"), 5);
  EXPECT_EQ(t.values, (std::vector<u32>{0, 1, 1, 1, 1}));
  const std::string b = to_bfile(t);
  EXPECT_NE(b.find("\n0 0\n1 1\n2 1\n"), std::string::npos) << b;
}
