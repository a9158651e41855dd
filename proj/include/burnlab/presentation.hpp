#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "burnlab/oracle.hpp"
#include "burnlab/parallel.hpp"

namespace burnlab {

enum class Simplicity { simple, not_simple, unknown };

inline const char* to_string(Simplicity s) {
  switch (s) {
    case Simplicity::simple: return "simple";
    case Simplicity::not_simple: return "not-simple";
    default: return "unknown";
  }
}

struct SimplicityVerdict {
  Simplicity status = Simplicity::unknown;
  std::string failed_condition;  // "S1", "S2", "S3" when not simple
  std::shared_ptr<const Witness> witness;
  std::string detail;
  BudgetUsed used;
};

struct RankEntry {
  Word word;
  std::string outcome;  // admitted, rejected, unknown
  std::string reason;
};

struct BuildReport {
  unsigned rank = 0;
  std::vector<Word> admitted;
  std::vector<RankEntry> entries;
  bool approximate = false;
  std::vector<std::string> caveats;
};

struct RankData {
  unsigned rank = 0;
  std::vector<Word> periods;
  bool approximate = false;
};

struct StructureRow {
  std::string property;
  Word period;
  unsigned rank = 0;
  Status status = Status::unknown;  // yes = property holds
  std::string detail;
};

struct StructureReport {
  std::vector<StructureRow> rows;
  std::size_t count(const std::string& prop, Status s) const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.property == prop && r.status == s;
    return n;
  }
  bool all_pass() const {
    for (const auto& r : rows)
      if (r.status != Status::yes) return false;
    return true;
  }
};

// Cyclically reduced words of length n that are least in their rotation class.
inline std::vector<Word> cyclic_class_reps(const Alphabet& alpha, std::size_t n, bool ab_only = false) {
  std::vector<Word> out;
  for_each_reduced_word(alpha, n, [&](const Word& w) {
    if (w.is_cyclically_reduced() && CyclicWord(w).canonical() == w) out.push_back(w);
  }, ab_only);
  return out;
}

class GradedPresentation {
 public:
  GradedPresentation(const Alphabet& alpha, const Params& params, OracleOptions opt = {}, std::size_t expansion_cap = kDefaultExpansionCap)
      : alpha_(alpha), params_(params), opt_(std::move(opt)), cap_(expansion_cap) {}

  GradedPresentation(const GradedPresentation& o) : alpha_(o.alpha_), params_(o.params_), opt_(o.opt_), cap_(o.cap_), ranks_(o.ranks_) {}

  const Alphabet& alphabet() const { return alpha_; }
  const Params& params() const { return params_; }
  const OracleOptions& options() const { return opt_; }
  std::size_t expansion_cap() const { return cap_; }
  unsigned built_through() const { return static_cast<unsigned>(ranks_.size()); }
  const RankData& rank(unsigned i) const { return ranks_.at(i - 1); }
  bool approximate() const {
    for (const auto& r : ranks_)
      if (r.approximate) return true;
    return false;
  }

  // Periods of rank i given explicitly (loading, hand-made presentations).
  void append_rank(std::vector<Word> periods, bool approximate = false) {
    RankData d;
    d.rank = built_through() + 1;
    d.periods = std::move(periods);
    d.approximate = approximate;
    ranks_.push_back(std::move(d));
    std::lock_guard lock(mu_);
    oracles_.resize(std::min<std::size_t>(oracles_.size(), ranks_.size()));
  }

  // Relators of ranks 1..i, in rank order.
  std::shared_ptr<const RelatorSet> relators(unsigned i) const { return oracle(i).relators_ptr(); }

  const Oracle& oracle(unsigned i) const {
    if (i > built_through()) throw StateError("rank " + std::to_string(i) + " not built (built through " + std::to_string(built_through()) + ")");
    std::lock_guard lock(mu_);
    if (oracles_.size() <= i) oracles_.resize(i + 1);
    if (!oracles_[i]) {
      auto rels = std::make_shared<RelatorSet>(alpha_, cap_);
      for (unsigned j = 1; j <= i; ++j)
        for (const Word& p : ranks_[j - 1].periods) rels->add(p, params_.k, j);
      oracles_[i] = std::make_shared<const Oracle>(rels, params_, opt_);
    }
    return *oracles_[i];
  }

  SimplicityVerdict is_simple(const Word& w, unsigned i) const { return is_simple(w, i, opt_.budget); }
  SimplicityVerdict is_simple(const Word& w, unsigned i, const Budget& b) const {
    const Oracle& o = oracle(i);
    SimplicityVerdict out;
    std::vector<std::string> open;
    auto fail = [&](const char* cond, const Verdict& v, std::string detail) {
      out.status = Simplicity::not_simple;
      out.failed_condition = cond;
      out.witness = v.witness;
      out.detail = std::move(detail);
      return out;
    };
    Verdict h = o.conjugate_into_H(w, b);
    out.used += h.used;
    if (h.yes()) return fail("S3", h, "conjugate to " + format_word(h.witness->target) + " in <a,b>");
    if (h.unknown()) open.push_back("S3");

    Verdict id = o.is_identity(w, b);
    out.used += id.used;
    if (id.yes()) return fail("S2", id, "trivial in rank " + std::to_string(i));
    if (id.unknown()) open.push_back("S2(trivial)");
    for (std::size_t len = 1; len < w.size(); ++len)
      for (const Word& c : cyclic_class_reps(alpha_, len)) {
        if (CyclicWord(c.inverse()).canonical() < c) continue;
        Verdict v = o.conjugate_to_power(w, c, b);
        out.used += v.used;
        if (v.yes()) return fail("S2", v, "conjugate to (" + format_word(c) + ")^" + std::to_string(v.witness->exponent));
        if (v.unknown()) open.push_back("S2(" + format_word(c) + ")");
      }
    for (unsigned j = 1; j <= i; ++j)
      for (const Word& p : rank(j).periods) {
        Verdict v = o.conjugate_to_power(w, p, b);
        out.used += v.used;
        if (v.yes()) return fail("S1", v, "conjugate to (" + format_word(p) + ")^" + std::to_string(v.witness->exponent));
        if (v.unknown()) open.push_back("S1(" + format_word(p) + ")");
      }
    if (open.empty()) {
      out.status = Simplicity::simple;
    } else {
      out.status = Simplicity::unknown;
      for (const auto& s : open) out.detail += (out.detail.empty() ? "uncertified: " : ", ") + s;
    }
    return out;
  }

  // Greedy shortlex admission of periods of rank built_through()+1.
  BuildReport build_next_rank(unsigned workers = 1) { return build_next_rank(opt_.budget, workers); }
  BuildReport build_next_rank(const Budget& b, unsigned workers) {
    const unsigned i = built_through();
    const unsigned next = i + 1;
    const Oracle& o = oracle(i);
    BuildReport rep;
    rep.rank = next;
    if (params_.small_k()) rep.caveats.push_back("small k: Condition-A guarantees of the construction are not implied");

    std::vector<Word> words;
    for_each_reduced_word(alpha_, next, [&](const Word& w) {
      if (w.is_cyclically_reduced()) words.push_back(w);
    });
    // one representative per class up to rotation and inversion
    std::vector<Word> reps;
    std::map<Word, std::size_t> rep_index;
    auto class_rep = [](const Word& w) { return std::min(CyclicWord(w).canonical(), CyclicWord(w.inverse()).canonical()); };
    for (const Word& w : words)
      if (class_rep(w) == w) {
        rep_index[w] = reps.size();
        reps.push_back(w);
      }
    auto simplicity = parallel_map<SimplicityVerdict>(reps.size(), workers, [&](std::size_t k) { return is_simple(reps[k], i, b); });

    std::vector<std::string> outcome(reps.size()), reason(reps.size());
    std::vector<Word> admitted;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const Word& w = reps[k];
      const auto& s = simplicity[k];
      if (s.status == Simplicity::not_simple) {
        outcome[k] = "rejected";
        reason[k] = s.failed_condition + ": " + s.detail;
        continue;
      }
      if (s.status == Simplicity::unknown) {
        outcome[k] = "unknown";
        reason[k] = s.detail;
        continue;
      }
      bool open = false;
      std::string clash;
      for (const Word& v : admitted) {
        for (const Word& t : {v, v.inverse()}) {
          Verdict c = o.conjugate(w, t, b);
          if (c.yes()) clash = "conjugate to " + format_word(t);
          if (c.unknown()) open = true;
          if (!clash.empty()) break;
        }
        if (!clash.empty()) break;
      }
      if (!clash.empty()) {
        outcome[k] = "rejected";
        reason[k] = clash;
      } else if (open) {
        outcome[k] = "unknown";
        reason[k] = "conjugacy to an admitted period uncertified";
      } else {
        outcome[k] = "admitted";
        admitted.push_back(w);
      }
    }
    for (const Word& w : words) {
      const Word r = class_rep(w);
      const std::size_t k = rep_index.at(r);
      if (r == w) {
        rep.entries.push_back({w, outcome[k], reason[k]});
      } else {
        bool inv = CyclicWord(w).canonical() != CyclicWord(r).canonical();
        std::string how = inv ? "conjugate to inverse of " : "rotation of ";
        std::string o2 = outcome[k] == "admitted" ? "rejected" : outcome[k];
        rep.entries.push_back({w, o2, how + format_word(r) + (outcome[k] == "admitted" ? " (admitted)" : "")});
      }
      if (rep.entries.back().outcome == "unknown") rep.approximate = true;
    }
    rep.admitted = admitted;
    append_rank(admitted, rep.approximate);
    return rep;
  }

  std::vector<BuildReport> build_through(unsigned max_rank, unsigned workers = 1) {
    std::vector<BuildReport> out;
    while (built_through() < max_rank) out.push_back(build_next_rank(opt_.budget, workers));
    return out;
  }

  StructureReport verify_structure() const { return verify_structure(opt_.budget.elevated()); }
  StructureReport verify_structure(const Budget& b) const {
    StructureReport rep;
    for (unsigned i = 1; i <= built_through(); ++i)
      for (const Word& p : rank(i).periods) {
        StructureRow r{"P1", p, i, Status::yes, ""};
        if (p.size() != i || !p.is_cyclically_reduced() || p.only_ab()) {
          r.status = Status::no;
          r.detail = "period length, reduction or alphabet violated";
        }
        rep.rows.push_back(r);
      }
    for (unsigned i = 1; i <= built_through(); ++i)
      for (const Word& p : rank(i).periods) {
        StructureRow r{"P2", p, i, Status::yes, ""};
        for (unsigned j = 0; j < i && r.status != Status::no; ++j) {
          auto s = is_simple(p, j, b);
          if (s.status == Simplicity::not_simple) {
            r.status = Status::no;
            r.detail = "not simple in rank " + std::to_string(j) + " (" + s.failed_condition + ")";
          } else if (s.status == Simplicity::unknown) {
            r.status = Status::unknown;
            r.detail = "rank " + std::to_string(j) + ": " + s.detail;
          }
        }
        rep.rows.push_back(r);
      }
    for (unsigned i = 1; i <= built_through(); ++i)
      for (const Word& p : rank(i).periods) {
        StructureRow r{"P3", p, i, Status::yes, ""};
        const Oracle& o = oracle(i - 1);
        for (std::size_t len = 0; len < p.size() && r.status != Status::no; ++len)
          for (const Word& c : cyclic_class_reps(alpha_, len)) {
            Verdict v = o.conjugate(p, c, b);
            if (v.yes()) {
              r.status = Status::no;
              r.detail = "conjugate to shorter " + format_word(c);
              break;
            }
            if (v.unknown()) r.status = Status::unknown;
          }
        rep.rows.push_back(r);
      }
    std::vector<std::pair<Word, unsigned>> all;
    for (unsigned i = 1; i <= built_through(); ++i)
      for (const Word& p : rank(i).periods) all.emplace_back(p, i);
    for (std::size_t x = 0; x < all.size(); ++x) {
      StructureRow r{"P4", all[x].first, all[x].second, Status::yes, ""};
      for (std::size_t y = 0; y < all.size() && r.status != Status::no; ++y) {
        if (x == y) continue;
        const unsigned lo = std::min(all[x].second, all[y].second) - 1;
        for (const Word& t : {all[y].first, all[y].first.inverse()}) {
          Verdict v = oracle(lo).conjugate(all[x].first, t, b);
          if (v.yes()) {
            r.status = Status::no;
            r.detail = "conjugate to " + format_word(t) + " (rank " + std::to_string(all[y].second) + ") in rank " + std::to_string(lo);
            break;
          }
          if (v.unknown()) r.status = Status::unknown;
        }
      }
      rep.rows.push_back(r);
    }
    return rep;
  }

 private:
  Alphabet alpha_;
  Params params_;
  OracleOptions opt_;
  std::size_t cap_;
  std::vector<RankData> ranks_;
  mutable std::mutex mu_;
  mutable std::vector<std::shared_ptr<const Oracle>> oracles_;
};

// ---- serialization --------------------------------------------------------

using ojson = nlohmann::ordered_json;

inline ojson params_to_json(const Params& p) {
  return ojson{{"k", p.k}, {"alpha", to_string(p.alpha)}, {"beta", to_string(p.beta)}, {"gamma", to_string(p.gamma)},
               {"epsilon", to_string(p.epsilon)}, {"zeta", to_string(p.zeta)}, {"h", to_string(p.h)}};
}

inline Rational json_rational(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number()) return parse_rational(j.dump());
  throw InputError("expected a rational number, got " + j.dump());
}

inline Params params_from_json(const nlohmann::json& j, Params p = {}) {
  if (!j.is_object()) throw InputError("params must be an object");
  for (auto& [key, v] : j.items()) {
    if (key == "k") {
      if (!v.is_number_integer()) throw InputError("params.k must be an integer");
      p.k = v.get<long>();
    } else if (key == "alpha") p.alpha = json_rational(v);
    else if (key == "beta") p.beta = json_rational(v);
    else if (key == "gamma") p.gamma = json_rational(v);
    else if (key == "epsilon") p.epsilon = json_rational(v);
    else if (key == "zeta") p.zeta = json_rational(v);
    else if (key == "h") p.h = json_rational(v);
    else throw InputError("unknown parameter \"" + key + "\"");
  }
  return p;
}

inline ojson to_json(const GradedPresentation& g) {
  ojson ranks = ojson::array();
  for (unsigned i = 1; i <= g.built_through(); ++i) {
    ojson periods = ojson::array();
    for (const Word& p : g.rank(i).periods) periods.push_back(format_word(p));
    ranks.push_back(ojson{{"rank", i}, {"periods", periods}, {"exponent", g.params().k}, {"approximate", g.rank(i).approximate}});
  }
  return ojson{{"format", "burnlab-presentation/1"},
               {"m", g.alphabet().m()},
               {"params", params_to_json(g.params())},
               {"expansion_cap", g.expansion_cap()},
               {"built_through", g.built_through()},
               {"ranks", ranks}};
}

inline GradedPresentation presentation_from_json(const nlohmann::json& j, OracleOptions opt = {}, bool allow_small_k = false) {
  try {
    if (j.value("format", "") != "burnlab-presentation/1") throw InputError("not a presentation file");
    Alphabet alpha(j.at("m").get<unsigned>());
    Params p = params_from_json(j.at("params"));
    require_params(p, allow_small_k);
    GradedPresentation g(alpha, p, std::move(opt), j.value("expansion_cap", kDefaultExpansionCap));
    unsigned expect = 1;
    for (const auto& r : j.at("ranks")) {
      if (r.at("rank").get<unsigned>() != expect++) throw InputError("ranks must be consecutive from 1");
      std::vector<Word> periods;
      for (const auto& w : r.at("periods")) periods.push_back(parse_word(w.get<std::string>(), alpha));
      g.append_rank(std::move(periods), r.value("approximate", false));
    }
    if (j.at("built_through").get<unsigned>() != g.built_through()) throw InputError("built_through disagrees with ranks");
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("presentation file: ") + e.what());
  }
}

inline ojson to_json(const BuildReport& r) {
  ojson entries = ojson::array();
  for (const auto& e : r.entries) entries.push_back(ojson{{"word", format_word(e.word)}, {"outcome", e.outcome}, {"reason", e.reason}});
  ojson admitted = ojson::array();
  for (const auto& w : r.admitted) admitted.push_back(format_word(w));
  return ojson{{"rank", r.rank}, {"admitted", admitted}, {"approximate", r.approximate}, {"caveats", r.caveats}, {"entries", entries}};
}

inline ojson to_json(const StructureReport& r) {
  ojson rows = ojson::array();
  for (const auto& x : r.rows)
    rows.push_back(ojson{{"property", x.property}, {"period", format_word(x.period)}, {"rank", x.rank}, {"status", x.status == Status::yes ? "pass" : x.status == Status::no ? "fail" : "unknown"}, {"detail", x.detail}});
  return ojson{{"rows", rows}};
}

}  // namespace burnlab
