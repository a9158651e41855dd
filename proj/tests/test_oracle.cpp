#include <gtest/gtest.h>

#include "burnlab/oracle.hpp"
#include "support/naive.hpp"

using namespace burnlab;

namespace {

const Alphabet kM1{1};
const Alphabet kM2{2};

Params params_k(long k) {
  Params p;
  p.k = k;
  return p;
}

std::shared_ptr<RelatorSet> relators(const Alphabet& al, std::initializer_list<std::pair<const char*, long>> rs) {
  auto out = std::make_shared<RelatorSet>(al);
  for (auto [w, e] : rs) {
    Word p = parse_word(w, al);
    out->add(p, e, static_cast<unsigned>(p.size()));
  }
  return out;
}

Word W(const char* s, const Alphabet& a = kM2) { return parse_word(s, a); }

}  // namespace

TEST(FreeOracle, AgreesWithNaiveAndNeverUnknown) {
  Oracle o(std::make_shared<RelatorSet>(kM1), params_k(3));
  auto all = naive::ball(6, 3);
  for (const auto& x : all)
    for (const auto& y : all) {
      Word u = naive::word(x), v = naive::word(y);
      Verdict e = o.equal(u, v);
      ASSERT_FALSE(e.unknown());
      ASSERT_EQ(e.yes(), naive::free_equal(x, y));
      if (e.yes()) ASSERT_TRUE(verify_equal(e, u, v, o.relators()));
      Verdict c = o.conjugate(u, v);
      ASSERT_FALSE(c.unknown());
      ASSERT_EQ(c.yes(), naive::conj_class(x) == naive::conj_class(y));
      if (c.yes()) ASSERT_TRUE(verify_conjugate(c, u, o.relators()));
    }
}

TEST(FreeOracle, WorkedExamples) {
  Oracle o(std::make_shared<RelatorSet>(kM2), params_k(3));
  Verdict c = o.conjugate(W("s1.s2"), W("s2.s1"));
  ASSERT_TRUE(c.yes());
  EXPECT_EQ(format_word(c.witness->conjugator), "s1");
  EXPECT_TRUE(verify_conjugate(c, W("s1.s2"), o.relators()));
  EXPECT_TRUE(o.conjugate(W("ab"), W("ba")).yes());
  EXPECT_TRUE(o.conjugate(W("ab"), W("aB")).no());

  Verdict h = o.conjugate_into_H(W("b.s1.a.b.S1.B"));
  ASSERT_TRUE(h.yes());
  EXPECT_EQ(format_word(h.witness->target), "ab");
  EXPECT_EQ(format_word(h.witness->conjugator), "b.s1");
  EXPECT_TRUE(verify_conjugate(h, W("b.s1.a.b.S1.B"), o.relators()));
  EXPECT_TRUE(o.conjugate_into_H(W("s1.a")).no());
  EXPECT_TRUE(o.conjugate_into_H(W("")).yes());

  auto n = o.norm(W("abab"));
  EXPECT_TRUE(n.exact);
  EXPECT_EQ(n.upper, 4u);
}

TEST(FreeProductOracle, TorsionRelator) {
  Oracle o(relators(kM1, {{"s1", 3}}), params_k(3));
  EXPECT_EQ(o.mode(), Oracle::Mode::free_product);
  Verdict e = o.equal(W("s1.s1.s1", kM1), Word{});
  ASSERT_TRUE(e.yes());
  EXPECT_TRUE(verify_equal(e, W("s1.s1.s1", kM1), Word{}, o.relators()));
  EXPECT_TRUE(o.equal(W("s1", kM1), Word{}).no());
  EXPECT_TRUE(o.equal(W("s1.s1", kM1), W("S1", kM1)).yes());
  auto n = o.norm(W("s1.s1", kM1));
  EXPECT_TRUE(n.exact);
  EXPECT_EQ(n.upper, 1u);
}

TEST(FreeProductOracle, AgreesWithSyllableOracle) {
  Oracle o(relators(kM1, {{"s1", 3}}), params_k(3));
  naive::FreeProduct fp{{0, 0, 3}};
  auto all = naive::ball(6, 3);
  for (const auto& x : all)
    for (const auto& y : all) {
      Word u = naive::word(x), v = naive::word(y);
      Verdict e = o.equal(u, v);
      ASSERT_FALSE(e.unknown());
      ASSERT_EQ(e.yes(), fp.equal(x, y)) << format_word(u) << " vs " << format_word(v);
      if (e.yes()) ASSERT_TRUE(verify_equal(e, u, v, o.relators()));
      Verdict c = o.conjugate(u, v);
      ASSERT_FALSE(c.unknown());
      ASSERT_EQ(c.yes(), fp.conj_class(x) == fp.conj_class(y)) << format_word(u) << " ~ " << format_word(v);
      if (c.yes()) ASSERT_TRUE(verify_conjugate(c, u, o.relators()));
    }
  for (const auto& x : naive::ball(6, 4)) {
    Word u = naive::word(x);
    auto n = o.norm(u);
    ASSERT_TRUE(n.exact);
    ASSERT_EQ(n.upper, fp.length(fp.normal(x)));
  }
}

TEST(FreeProductOracle, RankOnePresentationKeepsAbWordsGeodesic) {
  Oracle o(relators(kM2, {{"s1", 5}, {"s2", 5}}), params_k(5));
  auto n = o.norm(W("abab"));
  EXPECT_TRUE(n.exact);
  EXPECT_EQ(n.upper, 4u);
  Verdict p = o.conjugate_to_power(W("s1.s1.s1"), W("s1"), o.options().budget);
  ASSERT_TRUE(p.yes());
  EXPECT_TRUE(verify_conjugate(p, W("s1.s1.s1"), o.relators()));
  EXPECT_TRUE(o.conjugate_to_power(W("a.s1"), W("s1"), o.options().budget).no());
  EXPECT_TRUE(o.conjugate_to_power(W("s1.s2.s1.s2"), W("s1.s2"), o.options().budget).yes());
}

TEST(GeneralOracle, DehnRewritesStayEqual) {
  Oracle o(relators(kM1, {{"s1", 3}, {"a.s1", 3}, {"a.S1", 3}, {"b.s1", 3}, {"b.S1", 3}}), params_k(3));
  EXPECT_EQ(o.mode(), Oracle::Mode::general);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    Word w = naive::word(naive::random_word(rng, 6, 10));
    Word d = o.cyclic_dehn(w);
    Verdict e = o.equal(d, w);
    ASSERT_TRUE(e.yes()) << format_word(w) << " -> " << format_word(d);
    ASSERT_TRUE(verify_equal(e, d, w, o.relators()));
  }
}

TEST(GeneralOracle, QuotientRefutationsAreSound) {
  Oracle o(relators(kM1, {{"s1", 3}, {"a.s1", 3}, {"a.S1", 3}, {"b.s1", 3}, {"b.S1", 3}}), params_k(3));
  const auto& qs = o.quotients();
  ASSERT_GT(qs.size(), 0u);
  for (std::size_t i = 0; i < qs.size(); ++i) EXPECT_TRUE(qs[i].kills(o.relators()));
  Verdict v = o.equal(W("s1", kM1), Word{});
  ASSERT_TRUE(v.no());
  EXPECT_EQ(v.refutation, Refutation::finite_quotient);
  const Hom& h = qs[v.quotient];
  EXPECT_NE(h.image_of(W("s1", kM1)), h.group->identity());
  Verdict t = o.equal(W("a.s1.a.s1.a.s1", kM1), Word{});
  ASSERT_TRUE(t.yes());
  EXPECT_TRUE(verify_equal(t, W("a.s1.a.s1.a.s1", kM1), Word{}, o.relators()));
}

TEST(Trace, TamperedTraceFailsReplay) {
  Oracle o(relators(kM1, {{"s1", 3}}), params_k(3));
  Verdict e = o.equal(W("s1.s1.s1.a", kM1), W("a", kM1));
  ASSERT_TRUE(e.yes());
  Trace t = e.witness->trace;
  EXPECT_TRUE(replays_to(t, o.relators(), {}));
  ASSERT_FALSE(t.steps.empty());
  t.steps.back().position += 1;
  EXPECT_FALSE(replays_to(t, o.relators(), {}));
}

TEST(Budget, ConjugatorBoundUsesAlphaBar) {
  Oracle o(std::make_shared<RelatorSet>(kM1), params_k(3));
  // alpha_bar = 51/100, (51/100)*6 = 3.06
  EXPECT_EQ(o.conjugator_bound(W("aba", kM1), W("bab", kM1), o.options().budget), 4u);
}
