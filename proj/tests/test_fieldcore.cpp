#include <gtest/gtest.h>

#include <random>

#include "seqinv/field.hpp"

using namespace seqinv;

TEST(Prime, AcceptsPrimesRejectsOthers) {
  EXPECT_EQ(Prime(2).value(), 2u);
  EXPECT_EQ(Prime(65521).value(), 65521u);
  EXPECT_THROW(Prime(1), Error);
  EXPECT_THROW(Prime(9), Error);
  EXPECT_THROW(Prime(65537), Error);
}

TEST(FieldElement, ReducesNegatives) {
  EXPECT_EQ(FieldElement(-1, Prime(5)).value(), 4u);
  EXPECT_EQ(FieldElement(-10, Prime(3)).value(), 2u);
}

TEST(FieldElement, AxiomsHoldInSmallFields) {
  for (u32 pv : {2u, 3u, 5u, 7u, 13u}) {
    Prime p(pv);
    for (u32 a = 0; a < pv; ++a)
      for (u32 b = 0; b < pv; ++b) {
        FieldElement x(a, p), y(b, p);
        EXPECT_EQ(x + y, y + x);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ((x - y) + y, x);
        EXPECT_EQ(x + (-x), FieldElement(0, p));
        if (b) {
          EXPECT_EQ((x / y) * y, x);
        }
      }
  }
}

TEST(FieldElement, FermatAndInverse) {
  Prime p(101);
  for (u32 a = 1; a < 101; ++a) {
    FieldElement x(a, p);
    EXPECT_EQ(x.pow(100), FieldElement(1, p));
    EXPECT_EQ(x * x.inv(), FieldElement(1, p));
  }
  EXPECT_THROW(FieldElement(0, p).inv(), Error);
}

TEST(FieldElement, MixedModuliThrow) {
  EXPECT_THROW(FieldElement(1, Prime(3)) + FieldElement(1, Prime(5)), Error);
}

TEST(Digits, LsdFirst) {
  EXPECT_EQ(digits_lsd(7, 3).str(), "12");
  EXPECT_EQ(digits_lsd(6, 2).str(), "011");
  EXPECT_TRUE(digits_lsd(0, 5).empty());
  EXPECT_EQ(digits_lsd_padded(1, 3, 2).str(), "10");
  EXPECT_THROW(digits_lsd_padded(9, 3, 2), Error);
}

TEST(Digits, RoundTrip) {
  std::mt19937_64 rng(7);
  for (u32 base : {2u, 3u, 5u, 16u}) {
    for (int i = 0; i < 200; ++i) {
      u64 n = rng() >> 8;
      DigitString d = digits_lsd(n, base);
      EXPECT_TRUE(d.canonical());
      EXPECT_EQ(value_lsd(d), n);
    }
  }
}

TEST(Digits, ParseWord) {
  DigitString w = parse_word("1111001", 2);
  EXPECT_EQ(value_lsd(w), 79u);
  EXPECT_THROW(parse_word("13", 3), Error);
  EXPECT_THROW(parse_word("1x", 3), Error);
}

TEST(Digits, DigitSum) {
  EXPECT_EQ(digit_sum(5, Prime(3)).value(), 0u);  // 5 = 12 in base 3
  EXPECT_EQ(digit_sum(7, Prime(2)).value(), 1u);
  EXPECT_EQ(digit_sum(0, Prime(7)).value(), 0u);
}
