#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "burnlab/config.hpp"
#include "burnlab/diagram.hpp"

namespace burnlab {

// A manifest lists diagram files with the presentation they are read against
// and the verdicts they should produce:
//   {"diagrams": [{"file": ..., "m": 1, "k": 3, "rank": 1,
//                  "expect": {"valid": true, "A1": "pass", ...}}]}
// Expected keys: valid, error, rank, cells, A1, A2, A3, reduced, gamma_cells,
// max_degree (largest cell-to-cell contiguity degree).

struct CorpusRow {
  std::string file;
  bool valid = false;
  std::string error;  // first validation error code
  bool roundtrip = false;
  bool euler_ok = true;
  std::map<std::string, std::string> actual;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty() && roundtrip && euler_ok; }
};

struct CorpusReport {
  std::vector<CorpusRow> rows;
  bool all_ok() const {
    for (const auto& r : rows)
      if (!r.ok()) return false;
    return true;
  }
};

class PresentationCache {
 public:
  explicit PresentationCache(OracleOptions opt = {}) : opt_(std::move(opt)) {}
  const GradedPresentation& get(unsigned m, long k, unsigned rank) {
    auto& p = cache_[{m, k, rank}];
    if (!p) {
      Params par;
      par.k = k;
      p = std::make_unique<GradedPresentation>(Alphabet(m), par, opt_);
      p->build_through(rank);
    }
    return *p;
  }

 private:
  OracleOptions opt_;
  std::map<std::tuple<unsigned, long, unsigned>, std::unique_ptr<GradedPresentation>> cache_;
};

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot open " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Canonical file text of a diagram.
inline std::string diagram_text(const Diagram& d) { return to_json(d).dump(2) + "\n"; }

inline CorpusRow check_corpus_entry(const std::filesystem::path& dir, const nlohmann::json& entry, PresentationCache& cache) {
  CorpusRow row;
  row.file = entry.at("file").get<std::string>();
  const unsigned m = entry.at("m").get<unsigned>(), rank = entry.at("rank").get<unsigned>();
  const long k = entry.at("k").get<long>();
  const auto& g = cache.get(m, k, rank);
  const std::string text = read_text(dir / row.file);
  Diagram d = diagram_from_json(nlohmann::json::parse(text), g.alphabet());
  row.roundtrip = diagram_text(d) == text;
  auto v = validate_diagram(d, *g.relators(rank));
  row.valid = v.ok;
  row.actual["valid"] = v.ok ? "true" : "false";
  if (!v.ok) {
    row.error = v.errors.front().code;
    row.actual["error"] = row.error;
  } else {
    row.euler_ok = v.euler == 2 && v.euler_cells == (d.topology == "annular" ? 0 : 1);
    row.actual["rank"] = std::to_string(v.rank);
    row.actual["cells"] = std::to_string(v.cell_count);
    CheckContext ctx;
    ctx.oracle = &g.oracle(v.rank);
    ctx.params = g.params();
    ctx.budget = g.options().budget;
    ctx.contiguity.side_cap = default_side_cap(g.params(), v.rank);
    auto a = check_condition_A(*v.index, ctx);
    row.actual["A1"] = to_string(a.A1);
    row.actual["A2"] = to_string(a.A2);
    row.actual["A3"] = to_string(a.A3);
    auto red = check_reduced(*v.index, g.oracle(v.rank), ctx.budget);
    row.actual["reduced"] = red.status == Status::yes ? "yes" : red.status == Status::no ? "no" : "unknown";
    auto gc = find_gamma_cells(*v.index, {}, ctx);
    row.actual["gamma_cells"] = gc.precondition ? std::to_string(gc.gamma.size()) : "n/a";
    Rational top(0);
    for (auto c : v.index->cells())
      for (auto t : v.index->cells())
        for (const auto& r : find_contiguity(*v.index, c, {t, {}}, ctx.contiguity)) top = std::max(top, r.degree);
    row.actual["max_degree"] = to_string(top);
  }
  for (auto& [key, want] : entry.at("expect").items()) {
    std::string w = want.is_string() ? want.get<std::string>() : want.dump();
    auto it = row.actual.find(key);
    std::string got = it == row.actual.end() ? "(absent)" : it->second;
    if (got != w) row.mismatches.push_back(key + ": expected " + w + ", got " + got);
  }
  if (!row.roundtrip) row.mismatches.push_back("file is not in canonical form");
  if (!row.euler_ok) row.mismatches.push_back("Euler characteristic");
  return row;
}

inline CorpusReport check_corpus(const std::filesystem::path& manifest, PresentationCache& cache) {
  CorpusReport rep;
  auto j = read_json_file(manifest.string());
  const auto dir = manifest.parent_path();
  try {
    for (const auto& e : j.at("diagrams")) rep.rows.push_back(check_corpus_entry(dir, e, cache));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(manifest.string() + ": " + e.what());
  }
  return rep;
}

}  // namespace burnlab
