#include <gtest/gtest.h>

#include <random>

#include "burnlab/diagram.hpp"

using namespace burnlab;

namespace {

const Letter s1 = s_letter(1), S1 = s_letter(1, true);

GradedPresentation& pres(unsigned m, long k, unsigned rank) {
  static std::map<std::tuple<unsigned, long, unsigned>, std::unique_ptr<GradedPresentation>> cache;
  auto& p = cache[{m, k, rank}];
  if (!p) {
    Params par;
    par.k = k;
    p = std::make_unique<GradedPresentation>(Alphabet(m), par);
    p->build_through(rank);
  }
  return *p;
}

CheckContext context(const GradedPresentation& g, unsigned rank) {
  CheckContext c;
  c.oracle = &g.oracle(rank);
  c.params = g.params();
  c.contiguity.side_cap = default_side_cap(g.params(), rank);
  return c;
}

LetterVec power(const LetterVec& w, int n) {
  LetterVec out;
  for (int i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

Diagram single_cell(const LetterVec& w, std::optional<unsigned> rank = std::nullopt) {
  DiagramBuilder b;
  long v0 = b.vertex();
  auto p = b.path(v0, w, v0);
  b.face(p, rank);
  b.outer(DiagramBuilder::inverse_path(p));
  return b.get();
}

}  // namespace

TEST(Diagram, SingleCellBoundaryCase) {
  auto& g = pres(1, 3, 1);
  Diagram d = single_cell({s1, s1, s1}, 1);
  auto v = validate_diagram(d, *g.relators(1));
  ASSERT_TRUE(v.ok) << v.errors.front().message;
  EXPECT_EQ(v.rank, 1u);
  EXPECT_EQ(v.euler, 2);
  EXPECT_EQ(v.euler_cells, 1);
  auto a = check_condition_A(*v.index, context(g, 1));
  EXPECT_EQ(a.A1, Check::pass);
  // s1 s1 = S1 at k = 3, so two-letter arcs are not geodesic
  EXPECT_EQ(a.A2, Check::fail);
  EXPECT_EQ(a.A3, Check::pass);
}

TEST(Diagram, RankTwoCellPassesEverything) {
  auto& g = pres(1, 3, 2);
  Diagram d = single_cell(power({kA, s1}, 3));
  auto v = validate_diagram(d, *g.relators(2));
  ASSERT_TRUE(v.ok);
  EXPECT_EQ(v.rank, 2u);
  auto a = check_condition_A(*v.index, context(g, 2));
  EXPECT_EQ(a.overall(), Check::pass) << (a.findings.empty() ? "" : a.findings.front().detail);
}

TEST(Diagram, LongerExponentPasses) {
  auto& g = pres(1, 5, 1);
  auto v = validate_diagram(single_cell(power({s1}, 5)), *g.relators(1));
  ASSERT_TRUE(v.ok);
  EXPECT_EQ(check_condition_A(*v.index, context(g, 1)).overall(), Check::pass);
  auto gc = find_gamma_cells(*v.index, {}, context(g, 1));
  ASSERT_EQ(gc.gamma.size(), 1u);
  EXPECT_EQ(gc.gamma[0].degree_sum, Rational(1));
}

TEST(Diagram, RejectsNonRelatorAndBadStructure) {
  auto& g = pres(2, 5, 1);
  auto v = validate_diagram(single_cell({s1, s_letter(2)}), *g.relators(1));
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.errors.front().code, "non-relator");

  Diagram d = single_cell({s1, s1, s1, s1, s1});
  d.edges[1].inverse_id = 3;
  EXPECT_EQ(validate_diagram(d, *g.relators(1)).errors.front().code, "inverse-mismatch");

  Diagram e = single_cell({s1, s1, s1, s1, s1});
  e.faces[0].boundary.pop_back();
  EXPECT_EQ(validate_diagram(e, *g.relators(1)).errors.front().code, "open-face");

  Diagram r = single_cell({s1, s1, s1, s1, s1}, 2);
  EXPECT_EQ(validate_diagram(r, *g.relators(1)).errors.front().code, "rank-mismatch");
}

TEST(Diagram, InjectedSpikeFailsA1) {
  auto& g = pres(1, 3, 1);
  DiagramBuilder b;
  long v0 = b.vertex();
  auto p = b.path(v0, {s1, s1, s1}, v0);
  long tip = b.vertex();
  long sp = b.edge(v0, tip, kA);
  b.face({sp, DiagramBuilder::inv(sp), p[0], p[1], p[2]});
  b.outer(DiagramBuilder::inverse_path(p));
  auto v = validate_diagram(b.get(), *g.relators(1));
  ASSERT_TRUE(v.ok) << v.errors.front().message;
  EXPECT_EQ(check_condition_A(*v.index, context(g, 1)).A1, Check::fail);
}

TEST(Diagram, ContiguityDegrees) {
  auto& g = pres(1, 3, 1);
  const auto ctx = context(g, 1);
  {
    // mirror cells glued along one edge
    DiagramBuilder b;
    long v0 = b.vertex();
    auto p = b.path(v0, {s1, s1, s1}, v0);
    long v1 = b.get().edges[static_cast<std::size_t>(p[0])].to;
    auto q = b.path(v0, {S1, S1}, v1);
    b.face(p);
    b.face({DiagramBuilder::inv(p[0]), q[0], q[1]});
    b.outer(DiagramBuilder::inverse_path({p[1], p[2], q[0], q[1]}));
    auto v = validate_diagram(b.get(), *g.relators(1));
    ASSERT_TRUE(v.ok) << v.errors.front().message;
    auto recs = find_contiguity(*v.index, 0, {1, {}}, ctx.contiguity);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].degree, Rational(1, 3));
    EXPECT_EQ(recs[0].inner_cells.size(), 0u);
    EXPECT_EQ(check_condition_A(*v.index, ctx).A3, Check::pass);
    EXPECT_EQ(check_reduced(*v.index, g.oracle(1), {}).status, Status::no);
  }
  {
    // glued along two edges
    DiagramBuilder b;
    long v0 = b.vertex();
    auto p = b.path(v0, {s1, s1, s1}, v0);
    long v2 = b.get().edges[static_cast<std::size_t>(p[1])].to;
    long f = b.edge(v0, v2, S1);
    b.face(p);
    b.face({DiagramBuilder::inv(p[1]), DiagramBuilder::inv(p[0]), f});
    b.outer(DiagramBuilder::inverse_path({p[2], f}));
    auto v = validate_diagram(b.get(), *g.relators(1));
    ASSERT_TRUE(v.ok) << v.errors.front().message;
    auto recs = find_contiguity(*v.index, 0, {1, {}}, ctx.contiguity);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].degree, Rational(2, 3));
    EXPECT_EQ(check_condition_A(*v.index, ctx).A3, Check::fail);
  }
}

TEST(Diagram, TreeAndAnnulus) {
  auto& g = pres(1, 3, 1);
  DiagramBuilder b;
  long v0 = b.vertex();
  auto p = b.path(v0, {kA, kB});
  b.outer({p[0], p[1], DiagramBuilder::inv(p[1]), DiagramBuilder::inv(p[0])});
  auto v = validate_diagram(b.get(), *g.relators(1));
  ASSERT_TRUE(v.ok) << v.errors.front().message;
  EXPECT_EQ(v.cell_count, 0u);
  EXPECT_EQ(format_letters(contour_label(v)), "abBA");
  EXPECT_EQ(find_gamma_cells(*v.index, {}, context(g, 1)).precondition, false);

  DiagramBuilder r("annular");
  long w = r.vertex();
  long e = r.edge(w, w, kA);
  r.outer({e});
  r.outer({DiagramBuilder::inv(e)});
  auto va = validate_diagram(r.get(), *g.relators(1));
  ASSERT_TRUE(va.ok) << va.errors.front().message;
  EXPECT_EQ(va.euler, 2);
  EXPECT_EQ(va.euler_cells, 0);

  Diagram bad = r.get();
  bad.topology = "circular";
  EXPECT_EQ(validate_diagram(bad, *g.relators(1)).errors.front().code, "topology");
}

TEST(Diagram, SmoothSection) {
  auto& g = pres(1, 3, 1);
  auto v = validate_diagram(single_cell({s1, s1, s1}), *g.relators(1));
  ASSERT_TRUE(v.ok);
  auto ctx = context(g, 1);
  auto bad = check_smooth_section(*v.index, {0, 0, 2}, 1, ctx);
  EXPECT_EQ(bad.geodesic, Check::fail);
  auto one = check_smooth_section(*v.index, {0, 0, 1}, 1, ctx);
  EXPECT_EQ(one.geodesic, Check::pass);
  // the cell meets the one-edge section in one edge: |q2| = 1 < (1+gamma)*1
  EXPECT_EQ(one.contiguity, Check::pass);
  auto& g5 = pres(1, 5, 1);
  auto v5 = validate_diagram(single_cell(power({s1}, 5)), *g5.relators(1));
  auto two = check_smooth_section(*v5.index, {0, 0, 2}, 1, context(g5, 1));
  EXPECT_EQ(two.geodesic, Check::pass);
  EXPECT_EQ(two.contiguity, Check::fail);
}

TEST(Diagram, JsonRoundTrip) {
  Diagram d = single_cell({s1, s1, s1}, 1);
  std::string text = to_json(d).dump(2);
  Diagram back = diagram_from_json(nlohmann::json::parse(text), Alphabet(1));
  EXPECT_EQ(to_json(back).dump(2), text);
  EXPECT_THROW(diagram_from_json(nlohmann::json::parse("{\"topology\":\"torus\"}"), Alphabet(1)), InputError);
}

TEST(Diagram, VanKampenCertificates) {
  auto& g = pres(1, 3, 1);
  const Budget b;
  for (int n : {3, 6}) {
    auto r = search_vk_certificate(Word::reduce(power({s1}, n)), g.oracle(1), 10, b);
    ASSERT_EQ(r.status, Status::yes) << r.note;
    auto v = validate_diagram(*r.diagram, *g.relators(1));
    ASSERT_TRUE(v.ok);
    EXPECT_EQ(v.cell_count, static_cast<std::size_t>(n / 3));
    EXPECT_EQ(format_letters(contour_label(v)), format_letters(power({s1}, n)));
  }
  auto& g0 = pres(1, 3, 0);
  auto none = search_vk_certificate(Word::reduce({kA, kB, kAInv, kBInv}), g0.oracle(0), 10, b);
  EXPECT_EQ(none.status, Status::no);

  // a conjugated rank-2 relator
  auto& g2 = pres(1, 3, 2);
  LetterVec w{kB};
  auto r2 = power({kA, s1}, 3);
  w.insert(w.end(), r2.begin(), r2.end());
  w.push_back(kBInv);
  auto c = search_vk_certificate(Word::reduce(w), g2.oracle(2), 10, b);
  ASSERT_EQ(c.status, Status::yes) << c.note;
  auto v = validate_diagram(*c.diagram, *g2.relators(2));
  ASSERT_TRUE(v.ok);
  EXPECT_EQ(format_letters(contour_label(v)), format_word(Word::reduce(w)));
}

TEST(Diagram, FoldedCertificatesValidate) {
  auto& g = pres(1, 3, 2);
  const auto& rels = *g.relators(2);
  std::mt19937_64 rng(7);
  const std::vector<Letter> letters{kA, kAInv, kB, kBInv, s1, S1};
  int built = 0;
  for (int trial = 0; trial < 60; ++trial) {
    LetterVec w;
    int factors = 1 + static_cast<int>(rng() % 3);
    for (int f = 0; f < factors; ++f) {
      LetterVec u;
      for (std::size_t i = rng() % 3; i > 0; --i) u.push_back(letters[rng() % letters.size()]);
      const auto& r = rels[rng() % rels.size()];
      LetterVec body = r.expand(rng() % 2 ? 1 : -1, rng() % r.length());
      w.insert(w.end(), u.begin(), u.end());
      w.insert(w.end(), body.begin(), body.end());
      for (auto it = u.rbegin(); it != u.rend(); ++it) w.push_back(it->inverse());
    }
    Word word = Word::reduce(w);
    auto c = search_vk_certificate(word, g.oracle(2), 12, Budget{});
    if (c.status != Status::yes) continue;
    ++built;
    auto v = validate_diagram(*c.diagram, rels);
    ASSERT_TRUE(v.ok) << format_word(word) << ": " << v.errors.front().message;
    EXPECT_EQ(format_letters(contour_label(v)), format_word(word));
    EXPECT_LE(v.cell_count, 12u);
  }
  EXPECT_GT(built, 30);
}
