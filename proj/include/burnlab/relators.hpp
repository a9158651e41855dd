#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "burnlab/words.hpp"

namespace burnlab {

inline constexpr std::size_t kDefaultExpansionCap = 10000;

// Relator stored symbolically as period^exponent.
struct Relator {
  Word period;
  long exponent = 1;
  unsigned rank = 0;
  std::size_t length() const { return period.size() * static_cast<std::size_t>(exponent); }

  // Letter i of relator^sign.
  Letter at(std::size_t i, int sign) const {
    const std::size_t p = period.size();
    if (sign > 0) return period[i % p];
    return period[p - 1 - (i % p)].inverse();
  }

  LetterVec expand(int sign = 1, std::size_t shift = 0) const {
    const std::size_t n = length();
    LetterVec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = at((i + shift) % n, sign);
    return out;
  }
};

// Relators usable by the rewriting engines are the ones whose expansion fits the cap.
class RelatorSet {
 public:
  explicit RelatorSet(const Alphabet& alpha, std::size_t expansion_cap = kDefaultExpansionCap)
      : alpha_(alpha), cap_(expansion_cap) {}

  std::size_t add(const Word& period, long exponent, unsigned rank) {
    if (period.empty() || exponent < 1) throw InputError("relator: period must be nonempty and exponent positive");
    if (!period.is_cyclically_reduced()) throw InputError("relator: period " + format_word(period) + " is not cyclically reduced");
    for (Letter l : period)
      if (!alpha_.contains(l)) throw InputError("relator: letter outside alphabet in " + format_word(period));
    rels_.push_back({period, exponent, rank});
    return rels_.size() - 1;
  }

  const Alphabet& alphabet() const { return alpha_; }
  std::size_t expansion_cap() const { return cap_; }
  std::size_t size() const { return rels_.size(); }
  bool empty() const { return rels_.empty(); }
  const Relator& operator[](std::size_t i) const { return rels_.at(i); }
  auto begin() const { return rels_.begin(); }
  auto end() const { return rels_.end(); }

  bool expandable(std::size_t i) const { return rels_[i].length() <= cap_; }
  bool all_expandable() const {
    for (std::size_t i = 0; i < size(); ++i)
      if (!expandable(i)) return false;
    return true;
  }

  // If every relator is a power g^n of one letter and each generator has a
  // single such n, returns the order of each generator (0 = infinite).
  std::optional<std::vector<long>> letter_power_orders() const {
    std::vector<long> order(alpha_.generator_count(), 0);
    for (const auto& r : rels_) {
      Letter l = r.period[0];
      for (Letter x : r.period)
        if (x != l) return std::nullopt;
      long n = static_cast<long>(r.period.size()) * r.exponent;
      long& o = order[l.generator()];
      if (o != 0 && o != n) return std::nullopt;
      o = n;
    }
    return order;
  }

 private:
  Alphabet alpha_;
  std::size_t cap_;
  std::vector<Relator> rels_;
};

}  // namespace burnlab
