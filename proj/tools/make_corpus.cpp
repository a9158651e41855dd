// Writes the curated diagram corpus and its manifest of expected verdicts.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "burnlab/corpus.hpp"

using namespace burnlab;
namespace fs = std::filesystem;

namespace {

const Letter s1 = s_letter(1), S1 = s_letter(1, true), s2 = s_letter(2);
using DB = DiagramBuilder;

LetterVec power(const LetterVec& w, int n) {
  LetterVec out;
  for (int i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

Diagram single_cell(const LetterVec& w, std::optional<unsigned> rank = std::nullopt) {
  DB b;
  long v0 = b.vertex();
  auto p = b.path(v0, w, v0);
  b.face(p, rank);
  b.outer(DB::inverse_path(p));
  return b.get();
}

Diagram spike() {
  DB b;
  long v0 = b.vertex();
  auto p = b.path(v0, {s1, s1, s1}, v0);
  long tip = b.vertex();
  long sp = b.edge(v0, tip, kA);
  b.face({sp, DB::inv(sp), p[0], p[1], p[2]}, 1);
  b.outer(DB::inverse_path(p));
  return b.get();
}

Diagram mirror_one_edge() {
  DB b;
  long v0 = b.vertex();
  auto p = b.path(v0, {s1, s1, s1}, v0);
  long v1 = b.get().edges[static_cast<std::size_t>(p[0])].to;
  auto q = b.path(v0, {S1, S1}, v1);
  b.face(p, 1);
  b.face({DB::inv(p[0]), q[0], q[1]}, 1);
  b.outer(DB::inverse_path({p[1], p[2], q[0], q[1]}));
  return b.get();
}

Diagram mirror_two_edges() {
  DB b;
  long v0 = b.vertex();
  auto p = b.path(v0, {s1, s1, s1}, v0);
  long v2 = b.get().edges[static_cast<std::size_t>(p[1])].to;
  long f = b.edge(v0, v2, S1);
  b.face(p, 1);
  b.face({DB::inv(p[1]), DB::inv(p[0]), f}, 1);
  b.outer(DB::inverse_path({p[2], f}));
  return b.get();
}

Diagram tree() {
  DB b;
  long v0 = b.vertex();
  auto p = b.path(v0, {kA, kB});
  b.outer({p[0], p[1], DB::inv(p[1]), DB::inv(p[0])});
  return b.get();
}

Diagram annulus(const std::string& topology) {
  DB b(topology);
  long w = b.vertex();
  long e = b.edge(w, w, kA);
  b.outer({e});
  b.outer({DB::inv(e)});
  return b.get();
}

Diagram freely_trivial_cell() {
  DB b;
  long v0 = b.vertex(), v1 = b.vertex();
  long e = b.edge(v0, v1, kA), f = b.edge(v0, v1, kA);
  b.face({e, DB::inv(f)});
  b.outer({f, DB::inv(e)});
  return b.get();
}

Diagram certificate(const Word& w, const GradedPresentation& g, unsigned rank) {
  auto r = search_vk_certificate(w, g.oracle(rank), 16, Budget{});
  if (r.status != Status::yes) throw StateError("no certificate for " + format_word(w) + ": " + r.note);
  return *r.diagram;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_corpus <output-dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);
  PresentationCache cache;
  ojson entries = ojson::array();
  auto add = [&](const std::string& file, unsigned m, long k, unsigned rank, const Diagram& d, ojson expect) {
    std::ofstream(dir / file, std::ios::binary) << diagram_text(d);
    entries.push_back(ojson{{"file", file}, {"m", m}, {"k", k}, {"rank", rank}, {"expect", std::move(expect)}});
  };
  const ojson pass_all{{"A1", "pass"}, {"A2", "pass"}, {"A3", "pass"}};
  auto with = [](ojson base, const ojson& extra) {
    for (auto& [key, v] : extra.items()) base[key] = v;
    return base;
  };

  // k = 3 is below the range where Condition A is guaranteed: s1 s1 = S1
  add("s1_cubed.json", 1, 3, 1, single_cell({s1, s1, s1}, 1),
      {{"valid", "true"}, {"rank", "1"}, {"cells", "1"}, {"A1", "pass"}, {"A2", "fail"}, {"A3", "pass"}, {"reduced", "yes"}, {"gamma_cells", "1"}});
  add("as1_cubed.json", 1, 3, 2, single_cell(power({kA, s1}, 3), 2),
      with(pass_all, {{"valid", "true"}, {"rank", "2"}, {"cells", "1"}, {"reduced", "yes"}, {"gamma_cells", "1"}}));
  add("s1_fifth.json", 1, 5, 1, single_cell(power({s1}, 5), 1),
      with(pass_all, {{"valid", "true"}, {"rank", "1"}, {"cells", "1"}, {"gamma_cells", "1"}}));
  add("spike.json", 1, 3, 1, spike(), {{"valid", "true"}, {"A1", "fail"}, {"A2", "fail"}});
  add("non_relator.json", 2, 5, 1, single_cell({s1, s2}), {{"valid", "false"}, {"error", "non-relator"}});
  add("glued_one_edge.json", 1, 3, 1, mirror_one_edge(),
      {{"valid", "true"}, {"cells", "2"}, {"max_degree", "1/3"}, {"A3", "pass"}, {"reduced", "no"}});
  add("glued_two_edges.json", 1, 3, 1, mirror_two_edges(),
      {{"valid", "true"}, {"cells", "2"}, {"max_degree", "2/3"}, {"A3", "fail"}, {"reduced", "no"}});
  add("tree_abBA.json", 1, 3, 1, tree(),
      with(pass_all, {{"valid", "true"}, {"rank", "0"}, {"cells", "0"}, {"gamma_cells", "n/a"}}));
  add("annulus.json", 1, 3, 1, annulus("annular"), {{"valid", "true"}, {"cells", "0"}});
  add("annulus_as_disc.json", 1, 3, 1, annulus("circular"), {{"valid", "false"}, {"error", "topology"}});
  {
    Diagram d = single_cell(power({s1}, 5), 1);
    d.edges[1].inverse_id = 3;
    add("bad_inverse.json", 1, 5, 1, d, {{"valid", "false"}, {"error", "inverse-mismatch"}});
  }
  {
    Diagram d = single_cell(power({s1}, 5), 1);
    d.faces[0].boundary.pop_back();
    add("open_face.json", 1, 5, 1, d, {{"valid", "false"}, {"error", "open-face"}});
  }
  add("wrong_rank.json", 1, 5, 1, single_cell(power({s1}, 5), 2), {{"valid", "false"}, {"error", "rank-mismatch"}});
  add("freely_trivial_cell.json", 1, 3, 1, freely_trivial_cell(), {{"valid", "false"}, {"error", "rank-zero-cell"}});
  add("vk_s1_sixth.json", 1, 3, 1, certificate(Word::reduce(power({s1}, 6)), cache.get(1, 3, 1), 1),
      {{"valid", "true"}, {"cells", "2"}, {"max_degree", "0"}, {"A1", "pass"}, {"A3", "pass"}});
  {
    LetterVec w{kB};
    auto r = power({kA, s1}, 3);
    w.insert(w.end(), r.begin(), r.end());
    w.push_back(kBInv);
    add("vk_conjugated.json", 1, 3, 2, certificate(Word::reduce(w), cache.get(1, 3, 2), 2),
        with(pass_all, {{"valid", "true"}, {"rank", "2"}, {"cells", "1"}, {"reduced", "yes"}}));
  }
  std::ofstream(dir / "manifest.json", std::ios::binary) << ojson{{"diagrams", entries}}.dump(2) << "\n";
  std::cout << entries.size() << " diagrams written to " << dir.string() << "\n";
  return 0;
}
