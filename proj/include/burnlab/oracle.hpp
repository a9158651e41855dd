#pragma once

#include <chrono>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>

#include "burnlab/params.hpp"
#include "burnlab/quotient.hpp"
#include "burnlab/trace.hpp"

namespace burnlab {

enum class Status { yes, no, unknown };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::yes: return "yes";
    case Status::no: return "no";
    default: return "unknown";
  }
}

// How a "no" was certified.
enum class Refutation { none, free_reduction, free_product, dehn_complete, finite_quotient };

inline const char* to_string(Refutation r) {
  switch (r) {
    case Refutation::free_reduction: return "free-reduction";
    case Refutation::free_product: return "free-product-normal-form";
    case Refutation::dehn_complete: return "dehn-complete";
    case Refutation::finite_quotient: return "finite-quotient";
    default: return "none";
  }
}

struct Budget {
  std::size_t max_ball_radius = 6;
  std::size_t max_relator_applications = 20000;
  std::optional<std::size_t> max_conjugator_length;
  std::optional<double> time_cap_seconds;  // makes verdicts timing dependent

  Budget elevated(std::size_t factor = 4) const {
    Budget b = *this;
    b.max_relator_applications *= factor;
    b.max_ball_radius += 1;
    return b;
  }
};

struct BudgetUsed {
  std::size_t states = 0;
  std::size_t relator_applications = 0;
  BudgetUsed& operator+=(const BudgetUsed& o) {
    states += o.states;
    relator_applications += o.relator_applications;
    return *this;
  }
};

// For conjugacy questions U = conjugator * target * conjugator^-1, and the
// trace rewrites conjugator.target.conjugator^-1.U^-1 (raw) to the empty word.
// For equality questions the trace rewrites U.V^-1 (raw) to the empty word.
struct Witness {
  Word conjugator;
  Word target;
  long exponent = 1;
  Trace trace;
};

struct Verdict {
  Status status = Status::unknown;
  std::shared_ptr<const Witness> witness;
  Refutation refutation = Refutation::none;
  int quotient = -1;
  BudgetUsed used;

  bool yes() const { return status == Status::yes; }
  bool no() const { return status == Status::no; }
  bool unknown() const { return status == Status::unknown; }

  static Verdict refuted(Refutation r, int q = -1) {
    Verdict v;
    v.status = Status::no;
    v.refutation = r;
    v.quotient = q;
    return v;
  }
  static Verdict proved(Witness w) {
    Verdict v;
    v.status = Status::yes;
    v.witness = std::make_shared<const Witness>(std::move(w));
    return v;
  }
};

struct NormBound {
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool exact = false;
  Word representative;  // a word of length upper equal to the input
};

inline LetterVec equality_start(const Word& u, const Word& v) {
  Word vi = v.inverse();
  return concat({u.span(), vi.span()});
}

inline LetterVec conjugacy_start(const Word& z, const Word& target, const Word& u) {
  Word zi = z.inverse(), ui = u.inverse();
  return concat({z.span(), target.span(), zi.span(), ui.span()});
}

// Replay checks for yes-witnesses.
inline bool verify_equal(const Verdict& v, const Word& u, const Word& w, const RelatorSet& rels) {
  return v.yes() && v.witness && v.witness->trace.start == equality_start(u, w) && replays_to(v.witness->trace, rels, {});
}

inline bool verify_conjugate(const Verdict& v, const Word& u, const RelatorSet& rels) {
  if (!v.yes() || !v.witness) return false;
  const auto& w = *v.witness;
  return w.trace.start == conjugacy_start(w.conjugator, w.target, u) && replays_to(w.trace, rels, {});
}

struct OracleOptions {
  Budget budget;
  QuotientConfig quotients;
  bool use_quotients = true;
};

class Oracle {
 public:
  enum class Mode { free, free_product, general };

  Oracle(std::shared_ptr<const RelatorSet> rels, Params params, OracleOptions opt = {})
      : rels_(std::move(rels)), params_(params), opt_(std::move(opt)) {
    for (std::size_t i = 0; i < rels_->size(); ++i) {
      if (!rels_->expandable(i)) {
        skipped_relators_ = true;
        continue;
      }
      const auto& r = (*rels_)[i];
      for (int sign : {1, -1}) forms_.push_back({i, sign, r.expand(sign), r.period.size()});
    }
    by_letter_.resize(rels_->alphabet().letter_count());
    for (std::size_t f = 0; f < forms_.size(); ++f)
      for (std::size_t t = 0; t < forms_[f].period; ++t) by_letter_[forms_[f].word[t].code()].push_back({f, t});
    if (rels_->empty()) {
      mode_ = Mode::free;
    } else if (auto orders = rels_->letter_power_orders(); orders && !skipped_relators_) {
      mode_ = Mode::free_product;
      orders_ = *orders;
    } else {
      mode_ = Mode::general;
      small_cancellation_ = !skipped_relators_ && check_c16();
    }
  }

  const RelatorSet& relators() const { return *rels_; }
  std::shared_ptr<const RelatorSet> relators_ptr() const { return rels_; }
  const Params& params() const { return params_; }
  const OracleOptions& options() const { return opt_; }
  Mode mode() const { return mode_; }
  // Dehn rewriting decides the word problem: free groups, free products of
  // cyclic groups and verified C'(1/6) relator sets.
  bool dehn_complete() const { return mode_ != Mode::general || small_cancellation_; }
  bool exact() const { return mode_ != Mode::general; }
  const std::vector<long>& generator_orders() const { return orders_; }

  const QuotientFamily& quotients() const {
    std::call_once(quotient_once_, [&] {
      if (opt_.use_quotients && mode_ == Mode::general)
        quotients_ = std::make_unique<QuotientFamily>(*rels_, params_.k, opt_.quotients);
      else
        quotients_ = std::make_unique<QuotientFamily>();
    });
    return *quotients_;
  }

  // ---- Dehn rewriting ------------------------------------------------------

  // Equal in G; no relator subword longer than half remains (linearly).
  Word dehn_reduce(const Word& w) const {
    if (mode_ == Mode::free) return w;
    LetterVec cur = w.to_vector();
    while (auto m = best_move(cur, 0, cur.size(), false)) apply_move(cur, *m, 0);
    return Word::reduce(cur);
  }

  // Equal in G; the cyclic core admits no Dehn move even across its ends.
  Word cyclic_dehn(const Word& w) const {
    if (mode_ == Mode::free) return w;
    LetterVec cur = w.to_vector();
    while (true) {
      std::size_t o = conj_length(cur);
      auto m = best_move(cur, o, cur.size() - 2 * o, true);
      if (!m) break;
      apply_move(cur, *m, o);
    }
    return Word::reduce(cur);
  }

  // ---- questions -------------------------------------------------------------

  Verdict equal(const Word& u, const Word& v) const { return equal(u, v, opt_.budget); }
  Verdict equal(const Word& u, const Word& v, const Budget& b) const {
    if (mode_ == Mode::free) {
      if (u != v) return Verdict::refuted(Refutation::free_reduction);
      TraceBuilder tb(*rels_, equality_start(u, v));
      tb.free_reduce();
      return Verdict::proved({{}, {}, 1, std::move(tb).finish()});
    }
    return to_identity(equality_start(u, v), b);
  }

  Verdict is_identity(const Word& w, const Budget& b) const { return equal(w, Word{}, b); }

  // U = Z V Z^-1 in G.
  Verdict conjugate(const Word& u, const Word& v) const { return conjugate(u, v, opt_.budget); }
  Verdict conjugate(const Word& u, const Word& v, const Budget& b) const {
    if (mode_ == Mode::free) {
      auto z = rotation_conjugator(u, v);
      if (!z) return Verdict::refuted(Refutation::free_reduction);
      return conjugacy_witness(u, v, *z, b);
    }
    Word u1 = cyclic_dehn(u), v1 = cyclic_dehn(v);
    if (auto z = rotation_conjugator(u1, v1)) {
      Verdict r = conjugacy_witness(u, v, *z, b);
      if (r.yes() || mode_ == Mode::free_product) return r;
    }
    if (mode_ == Mode::free_product) return Verdict::refuted(Refutation::free_product);
    if (auto q = quotients().separates_classes(u, v)) return Verdict::refuted(Refutation::finite_quotient, static_cast<int>(*q));
    return conjugator_search(u, v, b);
  }

  Verdict conjugate_into_H(const Word& u) const { return conjugate_into_H(u, opt_.budget); }
  Verdict conjugate_into_H(const Word& u, const Budget& b) const {
    Word u1 = cyclic_dehn(u);
    auto split = cyclic_split(u1);
    if (split.core.only_ab()) {
      Verdict r = conjugacy_witness(u, split.core, split.conjugator, b);
      if (r.yes() || mode_ != Mode::general) return r;
    }
    if (mode_ == Mode::free) return Verdict::refuted(Refutation::free_reduction);
    if (mode_ == Mode::free_product) return Verdict::refuted(Refutation::free_product);
    const auto& qs = quotients();
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const auto& g = *qs[i].group;
      if (!qs.ab_classes(i)[g.class_of(qs[i].image_of(u))]) return Verdict::refuted(Refutation::finite_quotient, static_cast<int>(i));
    }
    BudgetUsed used;
    Verdict last;
    for (std::size_t len = 0; len <= u.size(); ++len) {
      std::vector<Word> reps;
      for_each_reduced_word(rels_->alphabet(), len, [&](const Word& k) {
        if (k.is_cyclically_reduced() && CyclicWord(k).canonical() == k) reps.push_back(k);
      }, true);
      for (const auto& k : reps) {
        if (used.states > b.max_relator_applications) break;
        Verdict r = conjugator_search(u, k, b);
        used += r.used;
        if (r.yes()) {
          r.used = used;
          return r;
        }
      }
    }
    last.used = used;
    return last;
  }

  // U conjugate to C^n for some integer n (n = 0 allowed).
  Verdict conjugate_to_power(const Word& u, const Word& c, const Budget& b) const {
    Word u1 = cyclic_core(cyclic_dehn(u));
    Word c1 = cyclic_core(cyclic_dehn(c));
    if (u1.empty()) {
      Verdict r = is_identity(u, b);
      if (r.yes()) return conjugacy_witness(u, Word{}, Word{}, b, 0);
    }
    std::vector<long> candidates;
    if (mode_ != Mode::general) {
      if (c1.empty() || u1.empty()) return Verdict::refuted(refutation_kind());
      long syllable_gen = single_syllable(c1);
      if (syllable_gen >= 0) {
        long o = mode_ == Mode::free ? 0 : orders_[syllable_gen];
        if (single_syllable(u1) != syllable_gen) return Verdict::refuted(refutation_kind());
        if (o == 0) {
          long t = signed_run(c1), s = signed_run(u1);
          if (s % t) return Verdict::refuted(refutation_kind());
          candidates.push_back(s / t);
        } else {
          for (long n = 1; n < o; ++n) candidates.push_back(n);
        }
      } else {
        if (u1.size() % c1.size()) return Verdict::refuted(refutation_kind());
        long n = static_cast<long>(u1.size() / c1.size());
        candidates = {n, -n};
      }
      for (long n : candidates) {
        Verdict r = conjugate(u, c.pow(n), b);
        if (r.yes()) return with_exponent(std::move(r), n);
      }
      return Verdict::refuted(refutation_kind());
    }
    // general mode: refute for every exponent at once through a quotient
    if (!u1.empty()) {
      Verdict r = is_identity(u, b);
      if (r.yes()) return conjugacy_witness(u, Word{}, Word{}, b, 0);
    }
    const auto& qs = quotients();
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const auto& g = *qs[i].group;
      auto cls = QuotientFamily::power_classes(g, qs[i].image_of(c));
      if (!cls[g.class_of(qs[i].image_of(u))]) return Verdict::refuted(Refutation::finite_quotient, static_cast<int>(i));
    }
    long reach = static_cast<long>(u.size()) + 2;
    if (is_relator_period(c)) reach = std::min(reach, params_.k / 2);
    BudgetUsed used;
    for (long n = 1; n <= reach; ++n)
      for (long s : {n, -n}) {
        Verdict r = conjugate(u, c.pow(s), b);
        used += r.used;
        if (r.yes()) return with_exponent(std::move(r), s);
        if (used.states > b.max_relator_applications) break;
      }
    Verdict out;
    out.used = used;
    return out;
  }

  NormBound norm(const Word& u) const { return norm(u, opt_.budget); }
  NormBound norm(const Word& u, const Budget& b) const {
    NormBound out;
    if (mode_ == Mode::free) return {u.size(), u.size(), true, u};
    Word d = dehn_reduce(u);
    if (mode_ == Mode::free_product) return {d.size(), d.size(), true, d};
    out.upper = d.size();
    out.representative = d;
    out.lower = std::min(out.upper, b.max_ball_radius + 1);
    std::size_t first_open = out.lower;
    const auto& idx = key_index(b.max_ball_radius);
    auto it = idx.find(quotients().key(u));
    if (it != idx.end()) {
      for (const Word& w : it->second) {
        if (w.size() >= out.upper) break;
        if (w.size() >= first_open) break;
        Verdict r = equal(w, u, b);
        if (r.yes()) {
          out.upper = w.size();
          out.representative = w;
          break;
        }
        if (r.unknown()) first_open = std::min(first_open, w.size());
      }
    }
    out.lower = std::min({first_open, out.upper, b.max_ball_radius + 1});
    out.exact = out.lower == out.upper;
    return out;
  }

  using KeyIndex = std::unordered_map<QuotientKey, std::vector<Word>, QuotientKeyHash>;

  // Every reduced word of length <= radius, bucketed by quotient image.
  const KeyIndex& key_index(std::size_t radius) const {
    std::lock_guard lock(index_mu_);
    auto& slot = indices_[radius];
    if (!slot) {
      slot = std::make_unique<KeyIndex>();
      const auto& qs = quotients();
      for (std::size_t len = 0; len <= radius; ++len)
        for_each_reduced_word(rels_->alphabet(), len, [&](const Word& w) { (*slot)[qs.key(w)].push_back(w); });
    }
    return *slot;
  }

  Refutation refutation_kind() const {
    switch (mode_) {
      case Mode::free: return Refutation::free_reduction;
      case Mode::free_product: return Refutation::free_product;
      default: return Refutation::dehn_complete;
    }
  }

  std::size_t conjugator_bound(const Word& u, const Word& v, const Budget& b) const {
    if (b.max_conjugator_length) return *b.max_conjugator_length;
    Rational x = params_.alpha_bar() * Rational(static_cast<std::int64_t>(u.size() + v.size()));
    return static_cast<std::size_t>((x.numerator() + x.denominator() - 1) / x.denominator());
  }

 private:
  struct Form {
    std::size_t relator;
    int sign;
    LetterVec word;
    std::size_t period;
  };
  // Searches are deterministic in (word, budget), so failures can be replayed from here.
  struct MemoKey {
    Word word;
    std::size_t applications, radius;
    friend bool operator==(const MemoKey&, const MemoKey&) = default;
  };
  struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const { return k.word.hash() ^ (k.applications * 0x9e3779b97f4a7c15ull) ^ (k.radius << 7); }
  };
  struct Move {
    std::size_t q = 0, len = 0, form = 0, t = 0;
    long gain = -1;
  };

  static std::size_t conj_length(const LetterVec& w) {
    std::size_t i = 0, n = w.size();
    while (2 * i + 1 < n && w[i] == w[n - 1 - i].inverse()) ++i;
    return i;
  }

  // Best Dehn move on w[o, o+c); cyclic matches may wrap around the core.
  std::optional<Move> best_move(const LetterVec& w, std::size_t o, std::size_t c, bool cyclic) const {
    Move best;
    for (std::size_t q = 0; q < c; ++q) {
      for (auto [f, t] : by_letter_[w[o + q].code()]) {
        const Form& form = forms_[f];
        const std::size_t L = form.word.size();
        const std::size_t limit = std::min(L, cyclic ? c : c - q);
        std::size_t len = 0;
        while (len < limit && w[o + (q + len) % c] == form.word[(t + len) % L]) ++len;
        long gain = 2 * static_cast<long>(len) - static_cast<long>(L);
        bool tie = gain == 0 && mode_ == Mode::free_product && form.sign < 0;
        if ((gain > 0 || tie) && gain > best.gain) best = {q, len, f, t, gain};
      }
    }
    if (best.gain < 0) return std::nullopt;
    return best;
  }

  // Linear realization of a (possibly wrapping) move on the core at offset o.
  template <class Sink>
  static void realize(const Move& m, std::size_t o, std::size_t c, std::size_t L, Sink&& sink) {
    if (m.q + m.len <= c) {
      sink(o + m.q, m.len, m.t);
    } else {
      std::size_t x = c - m.q;
      sink(o, m.len - x, (m.t + x) % L);
    }
  }

  void apply_move(LetterVec& w, const Move& m, std::size_t o) const {
    const Form& form = forms_[m.form];
    const std::size_t L = form.word.size();
    realize(m, o, w.size() - 2 * o, L, [&](std::size_t pos, std::size_t len, std::size_t t) {
      LetterVec out(w.begin(), w.begin() + pos);
      for (std::size_t j = L; j-- > len;) out.push_back(form.word[(t + j) % L].inverse());
      out.insert(out.end(), w.begin() + pos + len, w.end());
      w = Word::reduce(out).to_vector();
    });
  }

  void apply_move(TraceBuilder& tb, const Move& m, std::size_t o) const {
    const Form& form = forms_[m.form];
    const std::size_t L = form.word.size();
    realize(m, o, tb.current().size() - 2 * o, L,
            [&](std::size_t pos, std::size_t len, std::size_t t) { tb.replace(pos, len, form.relator, form.sign, t); });
  }

  void dehn_trace(TraceBuilder& tb, BudgetUsed& used) const {
    tb.free_reduce();
    while (true) {
      std::size_t o = conj_length(tb.current());
      auto m = best_move(tb.current(), o, tb.current().size() - 2 * o, true);
      if (!m) break;
      apply_move(tb, *m, o);
      ++used.relator_applications;
    }
  }

  Verdict to_identity(const LetterVec& start, const Budget& b) const {
    BudgetUsed used;
    TraceBuilder tb(*rels_, start);
    dehn_trace(tb, used);
    if (tb.current().empty()) {
      Verdict v = Verdict::proved({{}, {}, 1, std::move(tb).finish()});
      v.used = used;
      return v;
    }
    Word residue = Word::reduce(tb.current());
    if (dehn_complete()) {
      Verdict v = Verdict::refuted(refutation_kind());
      v.used = used;
      return v;
    }
    if (auto q = quotients().separates_from_one(residue)) {
      Verdict v = Verdict::refuted(Refutation::finite_quotient, static_cast<int>(*q));
      v.used = used;
      return v;
    }
    MemoKey key{residue, b.max_relator_applications, b.max_ball_radius};
    {
      std::shared_lock lock(memo_mu_);
      if (identity_memo_.count(key)) {
        Verdict v;
        v.used = used;
        return v;
      }
    }
    Verdict v = rewrite_search(std::move(tb), b, used);
    if (v.unknown() && !b.time_cap_seconds) {
      std::unique_lock lock(memo_mu_);
      identity_memo_.insert(key);
    }
    return v;
  }

  // Best-first search over partial relator replacements, shortest words first.
  Verdict rewrite_search(TraceBuilder tb, const Budget& b, BudgetUsed used) const {
    struct Node {
      Word word;
      std::size_t parent;
      std::size_t pos, len, form, t;
    };
    Word start = Word::reduce(tb.current());
    const std::size_t max_len = start.size() + b.max_ball_radius;
    std::vector<Node> nodes{{start, SIZE_MAX, 0, 0, 0, 0}};
    std::unordered_set<Word, WordHash> seen{start};
    std::vector<std::deque<std::size_t>> buckets(max_len + 1);
    buckets[start.size()].push_back(0);
    auto t0 = std::chrono::steady_clock::now();
    std::size_t found = SIZE_MAX;
    while (found == SIZE_MAX) {
      std::size_t len = 0;
      while (len <= max_len && buckets[len].empty()) ++len;
      if (len > max_len) break;
      std::size_t id = buckets[len].front();
      buckets[len].pop_front();
      if (++used.states > b.max_relator_applications) break;
      if (b.time_cap_seconds && std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > *b.time_cap_seconds) break;
      const Word w = nodes[id].word;
      for (std::size_t pos = 0; pos < w.size() && found == SIZE_MAX; ++pos) {
        for (auto [f, t] : by_letter_[w[pos].code()]) {
          const Form& form = forms_[f];
          const std::size_t L = form.word.size();
          std::size_t m = 0;
          while (m < L && pos + m < w.size() && w[pos + m] == form.word[(t + m) % L]) ++m;
          for (std::size_t l = 1; l <= m; ++l) {
            LetterVec out(w.begin(), w.begin() + pos);
            for (std::size_t j = L; j-- > l;) out.push_back(form.word[(t + j) % L].inverse());
            out.insert(out.end(), w.begin() + pos + l, w.end());
            Word nw = Word::reduce(out);
            if (nw.size() > max_len || !seen.insert(nw).second) continue;
            nodes.push_back({nw, id, pos, l, f, t});
            if (nw.empty()) {
              found = nodes.size() - 1;
              break;
            }
            buckets[nw.size()].push_back(nodes.size() - 1);
          }
          if (found != SIZE_MAX) break;
        }
      }
    }
    if (found == SIZE_MAX) {
      Verdict v;
      v.used = used;
      return v;
    }
    std::vector<std::size_t> path;
    for (std::size_t x = found; x != 0; x = nodes[x].parent) path.push_back(x);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const Node& n = nodes[*it];
      tb.replace(n.pos, n.len, forms_[n.form].relator, forms_[n.form].sign, n.t);
      ++used.relator_applications;
    }
    if (!tb.current().empty()) {
      Verdict v;
      v.used = used;
      return v;
    }
    Verdict v = Verdict::proved({{}, {}, 1, std::move(tb).finish()});
    v.used = used;
    return v;
  }

  static std::size_t conj_length(const Word& w) {
    std::size_t i = 0, n = w.size();
    while (2 * i + 1 < n && w[i] == w[n - 1 - i].inverse()) ++i;
    return i;
  }

  // Z with U = Z V Z^-1 in F when the cyclic cores are rotations of each other.
  static std::optional<Word> rotation_conjugator(const Word& u, const Word& v) {
    const std::size_t iu = conj_length(u), iv = conj_length(v);
    const std::size_t n = u.size() - 2 * iu;
    if (n != v.size() - 2 * iv) return std::nullopt;
    std::optional<Word> best;
    for (std::size_t s = 0; s < std::max<std::size_t>(n, 1); ++s) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) ok = u[iu + i] == v[iv + (i + s) % n];
      if (ok) {
        // core_V = x y with |x| = s, core_U = y x = x^-1 core_V x
        // equally core_U = y core_V y^-1
        Word x = v.subword(iv, s), y = v.subword(iv + s, n - s);
        for (const Word& m : {x.inverse(), y}) {
          Word z = u.subword(0, iu) * m * v.subword(0, iv).inverse();
          if (!best || z < *best) best = std::move(z);
        }
      }
    }
    return best;
  }

  Verdict conjugacy_witness(const Word& u, const Word& v, const Word& z, const Budget& b, long exponent = 1) const {
    Verdict eq = to_identity_or_free(conjugacy_start(z, v, u), b);
    if (!eq.yes()) {
      Verdict out;
      out.used = eq.used;
      return out;
    }
    Witness w{z, v, exponent, eq.witness->trace};
    Verdict out = Verdict::proved(std::move(w));
    out.used = eq.used;
    return out;
  }

  Verdict to_identity_or_free(const LetterVec& start, const Budget& b) const {
    if (mode_ == Mode::free) {
      TraceBuilder tb(*rels_, start);
      tb.free_reduce();
      if (!tb.current().empty()) return Verdict::refuted(Refutation::free_reduction);
      return Verdict::proved({{}, {}, 1, std::move(tb).finish()});
    }
    return to_identity(start, b);
  }

  static Verdict with_exponent(Verdict v, long n) {
    Witness w = *v.witness;
    w.exponent = n;
    BudgetUsed used = v.used;
    Verdict out = Verdict::proved(std::move(w));
    out.used = used;
    return out;
  }

  // Bounded search over conjugators; only ever answers yes or unknown.
  Verdict conjugator_search(const Word& u, const Word& v, const Budget& b) const {
    const std::size_t bound = conjugator_bound(u, v, b);
    Word v1 = cyclic_dehn(v);
    BudgetUsed used;
    for (std::size_t len = 0; len <= bound; ++len) {
      bool stop = false;
      std::optional<Word> hit;
      for_each_reduced_word(rels_->alphabet(), len, [&](const Word& z) {
        if (hit || stop) return;
        if (++used.states > b.max_relator_applications) {
          stop = true;
          return;
        }
        Word probe = cyclic_dehn(z * v1 * z.inverse() * u.inverse());
        if (probe.empty()) hit = z;
      });
      if (hit) {
        // v1 = v in G, so z v z^-1 = u as well
        Verdict r = conjugacy_witness(u, v, *hit, b);
        r.used += used;
        if (r.yes()) return r;
      }
      if (stop) break;
    }
    Verdict out;
    out.used = used;
    return out;
  }

  static long single_syllable(const Word& c) {
    if (c.empty()) return -1;
    for (Letter l : c)
      if (l.generator() != c[0].generator()) return -1;
    return c[0].generator();
  }
  static long signed_run(const Word& c) { return c[0].is_inverse() ? -static_cast<long>(c.size()) : static_cast<long>(c.size()); }

  bool is_relator_period(const Word& c) const {
    for (const auto& r : *rels_)
      if (r.exponent == params_.k && CyclicWord(r.period) == CyclicWord(c)) return true;
    return false;
  }

  // C'(1/6): every common prefix of two distinct symmetrized relators is
  // shorter than a sixth of each.
  bool check_c16() const {
    std::vector<LetterVec> sym;
    for (const auto& f : forms_)
      for (std::size_t t = 0; t < f.period; ++t) {
        LetterVec w(f.word.begin() + t, f.word.end());
        w.insert(w.end(), f.word.begin(), f.word.begin() + t);
        sym.push_back(std::move(w));
      }
    std::sort(sym.begin(), sym.end());
    sym.erase(std::unique(sym.begin(), sym.end()), sym.end());
    if (sym.size() > 4000) return false;
    for (std::size_t i = 0; i < sym.size(); ++i)
      for (std::size_t j = i + 1; j < sym.size(); ++j) {
        std::size_t n = 0;
        while (n < sym[i].size() && n < sym[j].size() && sym[i][n] == sym[j][n]) ++n;
        if (6 * n >= sym[i].size() || 6 * n >= sym[j].size()) return false;
      }
    return true;
  }

  std::shared_ptr<const RelatorSet> rels_;
  Params params_;
  OracleOptions opt_;
  Mode mode_ = Mode::free;
  bool small_cancellation_ = false;
  bool skipped_relators_ = false;
  std::vector<long> orders_;
  std::vector<Form> forms_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_letter_;

  mutable std::once_flag quotient_once_;
  mutable std::unique_ptr<QuotientFamily> quotients_;
  mutable std::mutex index_mu_;
  mutable std::map<std::size_t, std::unique_ptr<KeyIndex>> indices_;
  mutable std::shared_mutex memo_mu_;
  mutable std::unordered_set<MemoKey, MemoKeyHash> identity_memo_;
};

}  // namespace burnlab
