#pragma once

#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "burnlab/cayley.hpp"
#include "burnlab/oracle.hpp"
#include "burnlab/parallel.hpp"

namespace burnlab {

// ---- laws -----------------------------------------------------------------------

// A reduced word in variables x1..xd; entries are +-(variable index + 1).
class GroupLaw {
 public:
  static GroupLaw parse(std::string_view text) {
    Parser p{text};
    std::vector<int> w = p.expr();
    p.skip();
    if (p.i != text.size()) throw InputError("law: unexpected '" + std::string(1, text[p.i]) + "' in \"" + std::string(text) + "\"");
    GroupLaw g;
    g.letters_ = reduce(std::move(w));
    if (g.letters_.empty()) throw InputError("law \"" + std::string(text) + "\" is trivial in the free group");
    g.text_ = std::string(text);
    for (int x : g.letters_) g.arity_ = std::max(g.arity_, static_cast<std::size_t>(std::abs(x)));
    return g;
  }

  std::size_t arity() const { return arity_; }
  const std::vector<int>& letters() const { return letters_; }
  const std::string& text() const { return text_; }

  Word evaluate(const std::vector<Word>& g) const {
    if (g.size() < arity_) throw InputError("law needs " + std::to_string(arity_) + " arguments");
    std::vector<Word> inv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) inv[i] = g[i].inverse();
    Word out;
    for (int x : letters_) out *= x > 0 ? g[x - 1] : inv[-x - 1];
    return out;
  }

 private:
  static std::vector<int> reduce(std::vector<int> w) {
    std::vector<int> out;
    for (int x : w) {
      if (!out.empty() && out.back() == -x) out.pop_back();
      else out.push_back(x);
    }
    return out;
  }
  static std::vector<int> invert(std::vector<int> w) {
    std::reverse(w.begin(), w.end());
    for (int& x : w) x = -x;
    return w;
  }

  struct Parser {
    std::string_view s;
    std::size_t i = 0;
    void skip() {
      while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == '*' || s[i] == '.')) ++i;
    }
    bool at(char c) {
      skip();
      return i < s.size() && s[i] == c;
    }
    std::vector<int> expr() {
      std::vector<int> out;
      while (true) {
        skip();
        if (i >= s.size() || s[i] == ')' || s[i] == ']' || s[i] == ',') break;
        auto f = factor();
        out.insert(out.end(), f.begin(), f.end());
      }
      return out;
    }
    std::vector<int> factor() {
      std::vector<int> base;
      skip();
      char c = s[i];
      if (c == '(') {
        ++i;
        base = expr();
        if (!at(')')) throw InputError("law: missing ')'");
        ++i;
      } else if (c == '[') {
        ++i;
        auto u = expr();
        if (!at(',')) throw InputError("law: commutator needs ','");
        ++i;
        auto v = expr();
        if (!at(']')) throw InputError("law: missing ']'");
        ++i;
        for (auto* part : {&u, &v}) base.insert(base.end(), part->begin(), part->end());
        auto ui = invert(u), vi = invert(v);
        base.insert(base.end(), ui.begin(), ui.end());
        base.insert(base.end(), vi.begin(), vi.end());
      } else if (c == 'x' || c == 'y' || c == 'z') {
        ++i;
        int idx = c == 'x' ? 1 : c == 'y' ? 2 : 3;
        if (c == 'x' && i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          idx = 0;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) idx = idx * 10 + (s[i++] - '0');
          if (idx < 1 || idx > 64) throw InputError("law: variable index out of range");
        }
        base.push_back(idx);
      } else {
        throw InputError("law: unexpected '" + std::string(1, c) + "'");
      }
      skip();
      if (i < s.size() && s[i] == '^') {
        ++i;
        skip();
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) throw InputError("law: exponent expected");
        long e = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
          e = e * 10 + (s[i++] - '0');
          if (e > 10000) throw InputError("law: exponent too large");
        }
        std::vector<int> one = neg ? invert(base) : base, out;
        for (long t = 0; t < e; ++t) out.insert(out.end(), one.begin(), one.end());
        return out;
      }
      return base;
    }
  };

  std::vector<int> letters_;
  std::size_t arity_ = 0;
  std::string text_;
};

// ---- randomness -----------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for one trial, whatever worker runs it.
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) { return std::mt19937_64(splitmix64(seed ^ splitmix64(trial))); }

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
inline std::size_t below(std::mt19937_64& rng, std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(unit(rng) * static_cast<double>(n))); }

// ---- step distributions -----------------------------------------------------------

class StepDistribution {
 public:
  StepDistribution(std::vector<std::pair<Word, double>> support) : support_(std::move(support)) {
    if (support_.empty()) throw InputError("step distribution has empty support");
    double total = 0;
    for (const auto& [w, p] : support_) {
      if (!(p > 0)) throw InputError("step distribution: probabilities must be positive");
      total += p;
      cumulative_.push_back(total);
    }
    if (std::abs(total - 1.0) > 1e-9) throw InputError("step distribution: probabilities sum to " + std::to_string(total));
  }

  // nu(1) = 1/2, the other half uniform over the letters.
  static StepDistribution lazy(const Alphabet& alpha) {
    std::vector<std::pair<Word, double>> s{{Word{}, 0.5}};
    const double q = 0.5 / alpha.letter_count();
    for (unsigned c = 0; c < alpha.letter_count(); ++c) s.push_back({Word::letter(alpha.letter(c)), q});
    return StepDistribution(std::move(s));
  }
  static StepDistribution uniform(const Alphabet& alpha) {
    std::vector<std::pair<Word, double>> s;
    for (unsigned c = 0; c < alpha.letter_count(); ++c) s.push_back({Word::letter(alpha.letter(c)), 1.0 / alpha.letter_count()});
    return StepDistribution(std::move(s));
  }
  // "lazy", "uniform", or "word:p,word:p,..."
  static StepDistribution parse(std::string_view text, const Alphabet& alpha) {
    if (text == "lazy") return lazy(alpha);
    if (text == "uniform") return uniform(alpha);
    std::vector<std::pair<Word, double>> s;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view item = text.substr(pos, end - pos);
      std::size_t colon = item.rfind(':');
      if (colon == std::string_view::npos) throw InputError("step distribution item \"" + std::string(item) + "\" lacks ':probability'");
      double p;
      try {
        p = to_double(parse_rational(std::string(item.substr(colon + 1))));
      } catch (const InputError&) {
        throw InputError("bad probability in \"" + std::string(item) + "\"");
      }
      s.push_back({parse_word(item.substr(0, colon), alpha), p});
      pos = end + 1;
    }
    return StepDistribution(std::move(s));
  }

  const std::vector<std::pair<Word, double>>& support() const { return support_; }

  const Word& draw(std::mt19937_64& rng) const {
    double u = unit(rng) * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return support_[std::min<std::size_t>(it - cumulative_.begin(), support_.size() - 1)].first;
  }

  // Whether positive products of at most `depth` support words reach every
  // letter (compared after Dehn reduction, so only sound hits count).
  bool generates_semigroup(const Oracle& o, std::size_t depth = 0) const {
    std::size_t longest = 1;
    for (const auto& [w, p] : support_) longest = std::max(longest, w.size());
    if (depth == 0) depth = 2 * longest;
    const Alphabet& alpha = o.relators().alphabet();
    std::set<Word> need;
    for (unsigned c = 0; c < alpha.letter_count(); ++c) need.insert(Word::letter(alpha.letter(c)));
    std::set<Word> layer{Word{}}, seen{Word{}};
    for (std::size_t d = 0; d < depth && !need.empty(); ++d) {
      std::set<Word> next;
      for (const Word& x : layer)
        for (const auto& [w, p] : support_) {
          Word y = o.dehn_reduce(x * w);
          need.erase(y);
          if (seen.insert(y).second && seen.size() < 200000) next.insert(y);
        }
      layer = std::move(next);
    }
    return need.empty();
  }

 private:
  std::vector<std::pair<Word, double>> support_;
  std::vector<double> cumulative_;
};

// ---- sampling -----------------------------------------------------------------

inline std::vector<std::size_t> sample_uniform_ball(const Ball& ball, std::size_t count, std::uint64_t seed, bool allow_inexact = false) {
  if (!ball.exact && !allow_inexact) throw InputError("ball has undecided merges; exact-uniform sampling refused (use interval mode)");
  std::vector<std::size_t> out(count);
  for (std::size_t t = 0; t < count; ++t) {
    auto rng = trial_rng(seed, t);
    out[t] = below(rng, ball.count());
  }
  return out;
}

inline Word walk(const Oracle& o, const StepDistribution& nu, std::size_t n, std::mt19937_64& rng) {
  Word w;
  for (std::size_t s = 0; s < n; ++s) w = o.dehn_reduce(w * nu.draw(rng));
  return w;
}

inline std::vector<Word> random_walk_sample(const Oracle& o, const StepDistribution& nu, std::size_t n, std::size_t count, std::uint64_t seed, unsigned workers = 1) {
  return parallel_map<Word>(count, workers, [&](std::size_t t) {
    auto rng = trial_rng(seed, t);
    return walk(o, nu, n, rng);
  });
}

// Exact law of the n-step walk over Dehn normal forms; only meaningful when
// the oracle's Dehn reduction is a normal form (exact modes).
inline std::map<Word, double> walk_distribution(const Oracle& o, const StepDistribution& nu, std::size_t n) {
  if (!o.exact()) throw InputError("exact walk distribution needs an exactly decidable presentation");
  std::map<Word, double> cur{{Word{}, 1.0}};
  for (std::size_t s = 0; s < n; ++s) {
    std::map<Word, double> next;
    for (const auto& [w, p] : cur)
      for (const auto& [x, q] : nu.support()) next[o.dehn_reduce(w * x)] += p * q;
    cur = std::move(next);
  }
  return cur;
}

// ---- estimates -----------------------------------------------------------------

struct Interval {
  double lo = 0, hi = 1;
};

inline Interval wilson(std::size_t successes, std::size_t trials, double z = 1.959963984540054) {
  if (trials == 0) return {0, 1};
  const double n = static_cast<double>(trials), p = static_cast<double>(successes) / n, z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

struct LawEstimate {
  std::size_t n = 0;
  std::size_t trials = 0, holds = 0, fails = 0, unknown = 0;
  bool exhaustive = false;
  double point() const { return trials ? static_cast<double>(holds) / static_cast<double>(trials) : 0; }
  // certified-holds and certified-holds + unknown, as fractions
  double interval_lo() const { return point(); }
  double interval_hi() const { return trials ? static_cast<double>(holds + unknown) / static_cast<double>(trials) : 1; }
  // Wilson bounds around the interval ends; exact when exhaustive
  Interval ci() const {
    if (exhaustive) return {interval_lo(), interval_hi()};
    return {wilson(holds, trials).lo, wilson(holds + unknown, trials).hi};
  }
};

inline LawEstimate tally_to_estimate(std::size_t n, const std::vector<Status>& results, bool exhaustive) {
  LawEstimate e;
  e.n = n;
  e.trials = results.size();
  e.exhaustive = exhaustive;
  for (Status s : results) {
    if (s == Status::yes) ++e.holds;
    else if (s == Status::no) ++e.fails;
    else ++e.unknown;
  }
  return e;
}

// Tuples drawn uniformly from an enumerated ball. With trials == 0 every tuple
// is visited once and the result is exact.
inline LawEstimate law_probability_ball(const Oracle& o, const GroupLaw& law, const Ball& ball, std::size_t trials, std::uint64_t seed,
                                        unsigned workers = 1, bool allow_inexact = false) {
  if (!ball.exact && !allow_inexact) throw InputError("ball has undecided merges; exact-uniform sampling refused (use interval mode)");
  const std::size_t d = law.arity(), g = ball.count();
  const bool exhaustive = trials == 0;
  std::size_t total = trials;
  if (exhaustive) {
    total = 1;
    for (std::size_t i = 0; i < d; ++i) {
      if (total > 50'000'000 / g) throw InputError("exhaustive law evaluation too large; give a trial count");
      total *= g;
    }
  }
  auto results = parallel_map<Status>(total, workers, [&](std::size_t t) {
    std::vector<Word> args(d);
    if (exhaustive) {
      std::size_t x = t;
      for (std::size_t i = 0; i < d; ++i, x /= g) args[i] = ball.elements[x % g];
    } else {
      auto rng = trial_rng(seed, t);
      for (auto& a : args) a = ball.elements[below(rng, g)];
    }
    return o.is_identity(law.evaluate(args), o.options().budget).status;
  });
  return tally_to_estimate(ball.radius, results, exhaustive);
}

inline LawEstimate law_probability_walk(const Oracle& o, const GroupLaw& law, const StepDistribution& nu, std::size_t n, std::size_t trials,
                                        std::uint64_t seed, unsigned workers = 1) {
  auto results = parallel_map<Status>(trials, workers, [&](std::size_t t) {
    auto rng = trial_rng(seed, t);
    std::vector<Word> args(law.arity());
    for (auto& a : args) a = walk(o, nu, n, rng);
    return o.is_identity(law.evaluate(args), o.options().budget).status;
  });
  return tally_to_estimate(n, results, false);
}

// ---- torsion dichotomy ------------------------------------------------------------

enum class Dichotomy { power_torsion, conjugate_into_H, both, unknown };

inline const char* to_string(Dichotomy d) {
  switch (d) {
    case Dichotomy::power_torsion: return "power-torsion";
    case Dichotomy::conjugate_into_H: return "conjugate-into-H";
    case Dichotomy::both: return "both";
    default: return "unknown";
  }
}

struct DichotomyResult {
  Dichotomy branch = Dichotomy::unknown;
  Verdict torsion;    // g^k = 1
  Verdict into_H;     // g conjugate into <a,b>
  bool witnesses_replay = true;
};

inline DichotomyResult torsion_dichotomy_test(const Oracle& o, const Word& g, const Budget& b) {
  DichotomyResult r;
  const Word gk = g.pow(o.params().k);
  r.torsion = o.is_identity(gk, b);
  r.into_H = o.conjugate_into_H(g, b);
  if (r.torsion.yes()) r.witnesses_replay = r.witnesses_replay && verify_equal(r.torsion, gk, Word{}, o.relators());
  if (r.into_H.yes()) r.witnesses_replay = r.witnesses_replay && verify_conjugate(r.into_H, g, o.relators());
  if (r.torsion.yes() && r.into_H.yes()) r.branch = Dichotomy::both;
  else if (r.torsion.yes()) r.branch = Dichotomy::power_torsion;
  else if (r.into_H.yes()) r.branch = Dichotomy::conjugate_into_H;
  return r;
}

// ---- the Burnside quotient ------------------------------------------------------------

// Same relators with a and b added as relators, so G / <<a,b>> is presented.
inline std::shared_ptr<RelatorSet> kill_ab(const RelatorSet& rels) {
  auto out = std::make_shared<RelatorSet>(rels.alphabet(), rels.expansion_cap());
  for (const auto& r : rels) out->add(r.period, r.exponent, r.rank);
  out->add(Word::letter(kA), 1, 0);
  out->add(Word::letter(kB), 1, 0);
  return out;
}

inline LawEstimate quotient_return_probability(const Oracle& quotient, const StepDistribution& nu, std::size_t n, std::size_t trials,
                                               std::uint64_t seed, unsigned workers = 1) {
  auto results = parallel_map<Status>(trials, workers, [&](std::size_t t) {
    auto rng = trial_rng(seed, t);
    return quotient.is_identity(walk(quotient, nu, n, rng), quotient.options().budget).status;
  });
  return tally_to_estimate(n, results, false);
}

}  // namespace burnlab
