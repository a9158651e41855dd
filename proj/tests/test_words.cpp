#include <gtest/gtest.h>

#include <map>
#include <set>

#include "burnlab/words.hpp"
#include "support/naive.hpp"

using namespace burnlab;

namespace {

const Alphabet kM1{1};
const Alphabet kM2{2};

Word W(const char* s, const Alphabet& a = kM2) { return parse_word(s, a); }

}  // namespace

TEST(Letter, CodesFollowShortlexOrder) {
  EXPECT_LT(kA, kAInv);
  EXPECT_LT(kAInv, kB);
  EXPECT_LT(kBInv, s_letter(1));
  EXPECT_LT(s_letter(1), s_letter(1, true));
  EXPECT_LT(s_letter(1, true), s_letter(2));
  EXPECT_EQ(kA.inverse(), kAInv);
  EXPECT_EQ(s_letter(2, true).inverse(), s_letter(2));
}

TEST(Word, ReduceExamples) {
  EXPECT_EQ(format_word(W("a.A.b")), "b");
  EXPECT_EQ(format_word(W("aAbB")), "1");
  EXPECT_EQ(format_word(W("s1.S1")), "1");
  EXPECT_EQ(format_word(W("a.s1.S1.b")), "ab");
  EXPECT_TRUE(W("").empty());
  EXPECT_TRUE(W("1").empty());
}

TEST(Word, ReductionMatchesNaiveOnRandomWords) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5000; ++i) {
    auto c = naive::random_word(rng, 8, 14);
    LetterVec v;
    for (int x : c) v.push_back(Letter::from_code(x));
    Word w = Word::reduce(v);
    ASSERT_EQ(naive::codes(w), naive::reduce(c));
    ASSERT_EQ(Word::reduce(w.span()), w);
    ASSERT_EQ(w.inverse().inverse(), w);
    ASSERT_TRUE((w * w.inverse()).empty());
  }
}

TEST(Word, ProductIsAssociative) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    Word x = naive::word(naive::random_word(rng, 6, 8));
    Word y = naive::word(naive::random_word(rng, 6, 8));
    Word z = naive::word(naive::random_word(rng, 6, 8));
    ASSERT_EQ((x * y) * z, x * (y * z));
  }
}

TEST(Word, ShortlexAgreesWithNaive) {
  auto all = naive::ball(6, 3);
  for (const auto& x : all)
    for (const auto& y : all) ASSERT_EQ(naive::word(x) < naive::word(y), naive::shortlex_less(x, y));
}

TEST(Word, Powers) {
  EXPECT_EQ(W("a.s1").pow(3), W("a.s1.a.s1.a.s1"));
  EXPECT_EQ(W("a.s1").pow(-2), W("S1.A.S1.A"));
  EXPECT_TRUE(W("b").pow(0).empty());
}

TEST(CyclicWord, CoreAndConjugator) {
  auto s = cyclic_split(W("b.s1.a.b.S1.B"));
  EXPECT_EQ(format_word(s.conjugator), "b.s1");
  EXPECT_EQ(format_word(s.core), "ab");
  EXPECT_EQ(s.conjugator * s.core * s.conjugator.inverse(), W("b.s1.a.b.S1.B"));
}

TEST(CyclicWord, CanonicalMatchesNaiveExhaustively) {
  for (const auto& c : naive::ball(6, 6)) {
    Word w = naive::word(c);
    ASSERT_EQ(naive::codes(CyclicWord(w).canonical()), naive::conj_class(c));
  }
}

TEST(CyclicWord, ConjugacyIsCyclicShiftUpToLengthSix) {
  // classes from the naive oracle versus canonical forms
  std::map<naive::Codes, std::set<naive::Codes>> by_class;
  auto all = naive::ball(6, 5);
  std::map<naive::Codes, CyclicWord> canon;
  for (const auto& c : all) canon[c] = CyclicWord(naive::word(c));
  for (std::size_t i = 0; i < all.size(); i += 7)
    for (std::size_t j = 0; j < all.size(); j += 5)
      ASSERT_EQ(canon[all[i]] == canon[all[j]], naive::conj_class(all[i]) == naive::conj_class(all[j]));
}

TEST(Codec, FormatsAndParses) {
  EXPECT_EQ(format_word(W("abAB")), "abAB");
  EXPECT_EQ(format_word(W("a.b.s1.S2")), "a.b.s1.S2");
  EXPECT_EQ(format_word(Word{}), "1");
  EXPECT_EQ(W("a s1  b"), W("a.s1.b"));
}

TEST(Codec, RoundTripOnBall) {
  for (const auto& c : naive::ball(8, 4)) {
    Word w = naive::word(c);
    ASSERT_EQ(parse_word(format_word(w), kM2), w);
    ASSERT_EQ(format_word(parse_word(format_word(w), kM2)), format_word(w));
  }
}

TEST(Codec, RejectsLettersOutsideAlphabet) {
  EXPECT_THROW(parse_word("s2", kM1), InputError);
  EXPECT_THROW(parse_word("s0", kM1), InputError);
  EXPECT_THROW(parse_word("s", kM1), InputError);
  EXPECT_THROW(parse_word("a.x", kM1), InputError);
}

TEST(Enumeration, CountsReducedWords) {
  for (unsigned m : {1u, 2u}) {
    Alphabet al(m);
    const std::size_t l = al.letter_count();
    std::size_t expected = 1;
    for (std::size_t n = 0; n <= 5; ++n) {
      std::size_t count = 0;
      Word prev;
      bool first = true;
      for_each_reduced_word(al, n, [&](const Word& w) {
        EXPECT_EQ(w.size(), n);
        if (!first) EXPECT_LT(prev, w);
        prev = w;
        first = false;
        ++count;
      });
      EXPECT_EQ(count, expected);
      expected = n == 0 ? l : expected * (l - 1);
    }
  }
}

TEST(Enumeration, AbOnly) {
  std::size_t count = 0;
  for_each_reduced_word(kM2, 3, [&](const Word& w) {
    EXPECT_TRUE(w.only_ab());
    ++count;
  }, true);
  EXPECT_EQ(count, 36u);
}

TEST(Words, PrimitivePeriod) {
  EXPECT_EQ(primitive_period(W("abab").span()), 2u);
  EXPECT_EQ(primitive_period(W("aba").span()), 3u);
  EXPECT_EQ(primitive_period(W("s1.s1.s1").span()), 1u);
}
