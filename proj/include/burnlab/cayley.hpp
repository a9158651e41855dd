#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "burnlab/oracle.hpp"
#include "burnlab/parallel.hpp"
#include "burnlab/surd.hpp"

namespace burnlab {

struct Ball {
  std::size_t radius = 0;
  std::vector<Word> elements;       // canonical representatives, shortlex order
  std::vector<std::size_t> level;   // radius at which each element first appeared
  bool exact = true;                // no undecided merges
  std::size_t lower_count = 0;      // distinct elements even if every undecided merge held
  std::size_t count() const { return elements.size(); }
  std::size_t count_within(std::size_t r) const {
    return static_cast<std::size_t>(std::count_if(level.begin(), level.end(), [&](std::size_t x) { return x <= r; }));
  }
};

struct Located {
  std::optional<std::size_t> index;  // the match, or an undecided candidate
  Status status = Status::no;  // yes: found; no: certified absent; unknown: undecided
};

// Breadth-first ball in the group defined by an oracle's relators. Elements
// are merged when the oracle proves equality; undecided pairs stay apart.
class BallEnumerator {
 public:
  BallEnumerator(const Oracle& o, unsigned workers = 1) : o_(&o), workers_(workers) {}

  Ball enumerate(std::size_t n) {
    Ball out;
    out.radius = n;
    elems_.clear();
    level_.clear();
    where_.clear();
    buckets_.clear();
    undecided_.clear();
    const Alphabet& alpha = o_->relators().alphabet();
    if (o_->mode() == Oracle::Mode::free) {
      for (std::size_t len = 0; len <= n; ++len)
        for_each_reduced_word(alpha, len, [&](const Word& w) { add(w, len); });
    } else {
      add(Word{}, 0);
      std::size_t lo = 0;
      for (std::size_t r = 1; r <= n; ++r) {
        const std::size_t hi = elems_.size();
        const std::size_t span = hi - lo, letters = alpha.letter_count();
        auto cand = parallel_map<Word>(span * letters, workers_, [&](std::size_t t) {
          Word w = elems_[lo + t / letters] * Word::letter(alpha.letter(static_cast<unsigned>(t % letters)));
          return o_->dehn_reduce(w);
        });
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (const Word& c : cand) {
          if (where_.count(c)) continue;
          auto loc = locate_in_buckets(c);
          if (loc.status == Status::yes) continue;
          if (loc.status == Status::unknown) undecided_.emplace_back(*loc.index, elems_.size());
          add(c, r);
        }
        lo = hi;
      }
    }
    std::vector<std::size_t> order(elems_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return elems_[x] < elems_[y]; });
    std::vector<std::size_t> rank_of(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      out.elements.push_back(elems_[order[i]]);
      out.level.push_back(level_[order[i]]);
      rank_of[order[i]] = i;
    }
    // connected components of the undecided-merge graph
    std::vector<std::size_t> parent(elems_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t comps = elems_.size();
    for (auto [x, y] : undecided_) {
      auto a = find(x), b = find(y);
      if (a != b) {
        parent[a] = b;
        --comps;
      }
    }
    out.exact = undecided_.empty();
    out.lower_count = comps;
    // remap internal indices to the sorted order for later lookups
    std::vector<Word> sorted_elems = out.elements;
    elems_ = sorted_elems;
    level_ = out.level;
    where_.clear();
    for (std::size_t i = 0; i < elems_.size(); ++i) where_[elems_[i]] = i;
    for (auto& [key, v] : buckets_)
      for (auto& i : v) i = rank_of[i];
    return out;
  }

  // Index of the enumerated element equal to w, if the oracle can tell.
  Located locate(const Word& w) const {
    Word c = o_->dehn_reduce(w);
    if (auto it = where_.find(c); it != where_.end()) return {it->second, Status::yes};
    if (o_->exact()) return {std::nullopt, Status::no};
    return locate_in_buckets(c);
  }

 private:
  void add(const Word& w, std::size_t r) {
    where_[w] = elems_.size();
    if (o_->mode() == Oracle::Mode::general) buckets_[o_->quotients().key(w)].push_back(elems_.size());
    elems_.push_back(w);
    level_.push_back(r);
  }

  Located locate_in_buckets(const Word& c) const {
    if (o_->mode() != Oracle::Mode::general) return {std::nullopt, Status::no};
    auto it = buckets_.find(o_->quotients().key(c));
    if (it == buckets_.end()) return {std::nullopt, Status::no};
    std::optional<std::size_t> open;
    for (std::size_t i : it->second) {
      Verdict v = o_->equal(c, elems_[i]);
      if (v.yes()) return {i, Status::yes};
      if (v.unknown() && !open) open = i;
    }
    if (open) return {open, Status::unknown};
    return {std::nullopt, Status::no};
  }

  const Oracle* o_;
  unsigned workers_;
  std::vector<Word> elems_;
  std::vector<std::size_t> level_;
  std::unordered_map<Word, std::size_t, WordHash> where_;
  std::unordered_map<QuotientKey, std::vector<std::size_t>, QuotientKeyHash> buckets_;
  std::vector<std::pair<std::size_t, std::size_t>> undecided_;
};

inline Ball enumerate_ball(const Oracle& o, std::size_t n, unsigned workers = 1) { return BallEnumerator(o, workers).enumerate(n); }

// ---- growth -----------------------------------------------------------------

struct GrowthRow {
  std::size_t radius = 0;
  std::uint64_t gamma_G = 0;
  std::uint64_t gamma_H = 0;
  bool exact = true;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
};

// Reduced words over {a,b} of length <= r; the subgroup <a,b> is free.
inline std::uint64_t gamma_H(std::size_t r) {
  std::uint64_t n = 0;
  for (std::size_t len = 0; len <= r; ++len) for_each_reduced_word(Alphabet(0), len, [&](const Word&) { ++n; }, true);
  return n;
}

inline GrowthTable growth(const Oracle& o, std::size_t n_max, unsigned workers = 1) {
  Ball b = enumerate_ball(o, n_max, workers);
  GrowthTable t;
  for (std::size_t r = 0; r <= n_max; ++r) t.rows.push_back({r, b.count_within(r), gamma_H(r), b.exact});
  return t;
}

struct GrowthEstimate {
  std::vector<double> nth_root;                      // gamma(n)^(1/n), n >= 1
  std::vector<std::optional<double>> ball_ratio;     // gamma(n)/gamma(n-1)
  std::vector<std::optional<double>> sphere_ratio;   // sphere(n)/sphere(n-1)
  double estimate = 0;                               // last ball ratio
};

inline GrowthEstimate growth_exponent_estimate(const std::vector<std::uint64_t>& gamma, const std::vector<bool>& exact = {}) {
  std::size_t usable = 0;
  while (usable < gamma.size() && (exact.empty() || exact[usable])) ++usable;
  if (usable < 3) throw InputError("growth estimate needs at least 3 exact radii");
  GrowthEstimate e;
  auto sphere = [&](std::size_t n) { return static_cast<double>(gamma[n]) - (n ? static_cast<double>(gamma[n - 1]) : 0.0); };
  for (std::size_t n = 1; n < usable; ++n) {
    e.nth_root.push_back(std::pow(static_cast<double>(gamma[n]), 1.0 / static_cast<double>(n)));
    e.ball_ratio.push_back(gamma[n - 1] ? std::optional<double>(static_cast<double>(gamma[n]) / static_cast<double>(gamma[n - 1])) : std::nullopt);
    double prev = sphere(n - 1);
    e.sphere_ratio.push_back(prev != 0 ? std::optional<double>(sphere(n) / prev) : std::nullopt);
  }
  e.estimate = e.ball_ratio.back().value_or(0);
  return e;
}

// ---- density of conjugates of <a,b> ---------------------------------------------

struct DensityRow {
  std::size_t n = 0;
  std::uint64_t ball = 0;      // upper count
  std::uint64_t ball_lo = 0;
  std::uint64_t hg_count = 0;  // certified members
  std::uint64_t hg_hi = 0;
  std::uint64_t bound = 0;     // sum of gamma_H(i) gamma_G((n-i)/2)
  BigRational ratio_lo, ratio_hi;
  bool exact = true;
};

// Membership in the union of conjugates of <a,b>, found by forming V K V^-1.
class ConjugateDensity {
 public:
  ConjugateDensity(const Oracle& o, std::size_t n_max, unsigned workers = 1) : o_(&o), en_(o, workers), n_max_(n_max) {
    ball_ = en_.enumerate(n_max);
  }

  const Ball& ball() const { return ball_; }

  // Indices of ball elements of norm <= n of the form V K V^-1; the second
  // member counts products whose location stayed undecided.
  std::pair<std::vector<std::size_t>, std::size_t> union_members(std::size_t n) const {
    std::unordered_set<std::size_t> hit;
    std::size_t open = 0;
    for (std::size_t j = 0; j <= n; ++j) {
      const std::size_t vr = (n - j) / 2;
      std::vector<Word> ks;
      for (std::size_t len = 0; len <= j; ++len) for_each_reduced_word(Alphabet(0), len, [&](const Word& k) { ks.push_back(k); }, true);
      for (std::size_t vi = 0; vi < ball_.count(); ++vi) {
        if (ball_.level[vi] > vr) continue;
        const Word& v = ball_.elements[vi];
        const Word vinv = v.inverse();
        for (const Word& k : ks) {
          auto loc = en_.locate(v * k * vinv);
          if (loc.status == Status::yes) hit.insert(*loc.index);
          else if (loc.status == Status::unknown) ++open;
        }
      }
    }
    std::vector<std::size_t> out(hit.begin(), hit.end());
    std::sort(out.begin(), out.end());
    return {out, open};
  }

  // Ball elements whose cyclic core is a word over {a,b}; exact with no relators.
  std::vector<std::size_t> core_members(std::size_t n) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ball_.count(); ++i)
      if (ball_.level[i] <= n && cyclic_core(ball_.elements[i]).only_ab()) out.push_back(i);
    return out;
  }

  DensityRow row(std::size_t n) const {
    if (n > n_max_) throw InputError("density radius beyond enumerated ball");
    DensityRow r;
    r.n = n;
    r.ball = ball_.count_within(n);
    r.ball_lo = ball_.exact ? r.ball : std::min<std::uint64_t>(r.ball, ball_.lower_count);
    auto [members, open] = union_members(n);
    r.hg_count = members.size();
    r.hg_hi = std::min<std::uint64_t>(r.ball, members.size() + open);
    for (std::size_t i = 0; i <= n; ++i) r.bound += gamma_H(i) * ball_.count_within((n - i) / 2);
    r.exact = ball_.exact && open == 0;
    r.ratio_lo = BigRational(BigInt(r.hg_count), BigInt(r.ball));
    r.ratio_hi = BigRational(BigInt(r.hg_hi), BigInt(std::max<std::uint64_t>(r.ball_lo, 1)));
    return r;
  }

 private:
  const Oracle* o_;
  BallEnumerator en_;
  std::size_t n_max_;
  Ball ball_;
};

// ---- the density bound chain --------------------------------------------------

struct ChainLine {
  std::string id;
  std::string relation;  // "<=", "=", "<"
  Surd lhs, rhs;
  bool holds = false;
};

struct BoundChain {
  Rational alpha, C;
  std::size_t N = 1, n = 0;
  BigRational D, C_prime;
  std::vector<ChainLine> lines;
  std::vector<std::string> notes;
  bool hypothesis_H = true;  // gamma_H(i) <= C 3^i
  bool hypothesis_G = true;  // (alpha-1)^r <= gamma_G(r) <= (alpha+1)^r for r >= N
  Surd ratio_bound;  // C' ((3 + sqrt(alpha+1)) / (alpha-1))^n
  Surd base_ratio;   // (3 + sqrt(alpha+1)) / (alpha-1)
  bool all_hold() const {
    return std::all_of(lines.begin(), lines.end(), [](const ChainLine& l) { return l.holds; });
  }
};

// Smallest alpha with 3 + sqrt(alpha+1) < alpha - 1 for all larger alpha: (9 + sqrt 21)/2.
inline Surd chain_threshold() { return Surd(BigRational(9, 2), BigRational(1, 2), 21); }

inline bool chain_comparison_holds(const Rational& alpha) {
  BigRational a = big(alpha);
  Surd lhs = Surd::rational(3) + Surd::sqrt_of(a + 1);
  return lhs < Surd::rational(a - 1);
}

// Evaluates every inequality of the density estimate for growth functions
// gamma_G, gamma_H (defaults: alpha^r and C 3^r).
inline BoundChain density_bound_chain(std::size_t n, const Rational& alpha, const Rational& C, std::size_t N,
                                      std::vector<BigInt> gG = {}, std::vector<BigInt> gH = {}) {
  if (alpha <= Rational(1) || C <= Rational(0) || N < 1) throw InputError("bound chain needs alpha > 1, C > 0, N >= 1");
  BoundChain out;
  out.alpha = alpha;
  out.C = C;
  out.N = N;
  out.n = n;
  const BigRational a = big(alpha), c = big(C);
  const std::size_t need = std::max(n, N) + 1;
  if (gG.empty()) {
    if (alpha.denominator() != 1) throw InputError("default gamma_G model needs integer alpha");
    BigInt x = 1;
    for (std::size_t r = 0; r < need; ++r, x *= BigInt(alpha.numerator())) gG.push_back(x);
  }
  if (gH.empty()) {
    if (C.denominator() != 1) throw InputError("default gamma_H model needs integer C");
    BigInt x = BigInt(C.numerator());
    for (std::size_t r = 0; r < need; ++r, x *= 3) gH.push_back(x);
  }
  if (gG.size() < need || gH.size() < n + 1) throw InputError("growth tables too short for the bound chain");
  if (alpha <= Rational(7)) out.notes.push_back("alpha <= 7: outside the hypothesis of the final comparison");

  const Surd root = Surd::sqrt_of(a + 1);
  const BigInt& d = root.d();
  auto Q = [&](const BigRational& x) { return Surd::rational(x, d); };
  auto Qi = [&](const BigInt& x) { return Surd::rational(BigRational(x), d); };
  auto pow3 = [](std::size_t e) { BigInt x = 1; for (std::size_t i = 0; i < e; ++i) x *= 3; return x; };
  auto line = [&](std::string id, std::string rel, Surd l, Surd r) {
    bool h = rel == "=" ? l == r : rel == "<" ? l < r : l <= r;
    out.lines.push_back({std::move(id), std::move(rel), std::move(l), std::move(r), h});
  };

  // hypotheses on the growth tables
  for (std::size_t i = 0; i <= n; ++i) out.hypothesis_H = out.hypothesis_H && BigRational(gH[i]) <= c * BigRational(pow3(i));
  for (std::size_t r = N; r <= n; ++r) {
    Surd g = Surd::rational(BigRational(gG[r]));
    out.hypothesis_G = out.hypothesis_G && Surd::rational(a - 1).pow(static_cast<unsigned>(r)) <= g &&
                       g <= Surd::rational(a + 1).pow(static_cast<unsigned>(r));
  }
  if (!out.hypothesis_H) out.notes.push_back("gamma_H exceeds C 3^i");
  if (!out.hypothesis_G) out.notes.push_back("gamma_G outside [(alpha-1)^r, (alpha+1)^r] for some r >= N");

  const long split = static_cast<long>(n) - 2 * static_cast<long>(N);
  BigInt total = 0, low = 0, high = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    BigInt t = gH[i] * gG[(n - i) / 2];
    total += t;
    (static_cast<long>(i) <= split ? low : high) += t;
  }
  line("E1 sum split at n-2N", "=", Qi(total), Qi(low + high));
  out.D = BigRational(2 * static_cast<long>(N)) * c * BigRational(gG[N]);
  const BigInt p3n = pow3(n);
  line("E2 tail <= 2N C 3^n gamma_G(N)", "<=", Qi(high), Q(out.D * BigRational(p3n)));
  Surd head_bound = Q(0);
  for (long i = 0; i <= split; ++i) head_bound = head_bound + Q(c * BigRational(pow3(i))) * root.pow(static_cast<unsigned>(n - i));
  line("E3 head <= sum C 3^i (alpha+1)^((n-i)/2)", "<=", Qi(low), head_bound);
  Surd binom = Q(0);
  BigInt choose = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    binom = binom + Q(BigRational(choose) * BigRational(pow3(i))) * root.pow(static_cast<unsigned>(n - i));
    choose = choose * BigInt(n - i) / BigInt(i + 1);
  }
  binom = Q(c) * binom;
  line("E4 <= C sum binom(n,i) 3^i sqrt(alpha+1)^(n-i)", "<=", head_bound, binom);
  const Surd base = Q(3) + root;
  const Surd power = base.pow(static_cast<unsigned>(n));
  line("E5 = C (3 + sqrt(alpha+1))^n", "=", binom, Q(c) * power);
  out.C_prime = c + out.D;
  line("E6 C (3+sqrt(alpha+1))^n + D 3^n <= C' (3+sqrt(alpha+1))^n", "<=", Q(c) * power + Q(out.D * BigRational(p3n)), Q(out.C_prime) * power);
  line("E7 3 + sqrt(alpha+1) < alpha - 1", "<", base, Q(a - 1));
  // count/gamma_G(n) <= C'(3+sqrt)^n/(alpha-1)^n, cross-multiplied
  line("E8 sum / gamma_G(n) <= C' ((3+sqrt(alpha+1))/(alpha-1))^n", "<=", Qi(total) * Q(a - 1).pow(static_cast<unsigned>(n)),
       Q(out.C_prime) * power * Qi(gG[n]));
  out.base_ratio = base / Q(a - 1);
  out.ratio_bound = Q(out.C_prime) * out.base_ratio.pow(static_cast<unsigned>(n));
  return out;
}

}  // namespace burnlab
