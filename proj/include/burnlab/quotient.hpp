#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <unordered_map>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "burnlab/relators.hpp"

namespace burnlab {

// Element of PSL(2,p) as a normalized 2x2 matrix packed into 32 bits.
using Mat = std::uint32_t;

class PSL2 {
 public:
  explicit PSL2(unsigned p) : p_(p) {
    if (p < 5 || p > 251) throw InputError("PSL2: prime out of range");
    for (unsigned a = 0; a < p; ++a)
      for (unsigned b = 0; b < p; ++b)
        for (unsigned c = 0; c < p; ++c)
          for (unsigned d = 0; d < p; ++d)
            if ((a * d + p * p - (b * c) % p) % p == 1 % p) {
              Mat m = normalize(a, b, c, d);
              if (index_.emplace(m, static_cast<int>(elements_.size())).second) elements_.push_back(m);
            }
    compute_classes();
  }

  unsigned p() const { return p_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Mat>& elements() const { return elements_; }
  Mat identity() const { return pack(1, 0, 0, 1); }
  int index(Mat m) const { return index_.at(m); }
  int class_of(Mat m) const { return class_id_[index(m)]; }
  std::size_t class_count() const { return class_count_; }

  static unsigned entry(Mat m, int i) { return (m >> (8 * (3 - i))) & 0xffu; }

  Mat mul(Mat x, Mat y) const {
    unsigned a = entry(x, 0), b = entry(x, 1), c = entry(x, 2), d = entry(x, 3);
    unsigned e = entry(y, 0), f = entry(y, 1), g = entry(y, 2), h = entry(y, 3);
    return normalize((a * e + b * g) % p_, (a * f + b * h) % p_, (c * e + d * g) % p_, (c * f + d * h) % p_);
  }
  Mat inv(Mat x) const {
    unsigned a = entry(x, 0), b = entry(x, 1), c = entry(x, 2), d = entry(x, 3);
    return normalize(d, (p_ - b) % p_, (p_ - c) % p_, a);
  }
  Mat pow(Mat x, long n) const {
    if (n < 0) return pow(inv(x), -n);
    Mat r = identity();
    while (n) {
      if (n & 1) r = mul(r, x);
      x = mul(x, x);
      n >>= 1;
    }
    return r;
  }
  Mat make(unsigned a, unsigned b, unsigned c, unsigned d) const { return normalize(a % p_, b % p_, c % p_, d % p_); }

 private:
  static Mat pack(unsigned a, unsigned b, unsigned c, unsigned d) { return (a << 24) | (b << 16) | (c << 8) | d; }
  // Picks the sign so the first nonzero entry is at most (p-1)/2.
  Mat normalize(unsigned a, unsigned b, unsigned c, unsigned d) const {
    unsigned first = a ? a : b ? b : c ? c : d;
    if (2 * first > p_) return pack((p_ - a) % p_, (p_ - b) % p_, (p_ - c) % p_, (p_ - d) % p_);
    return pack(a, b, c, d);
  }

  void compute_classes() {
    const std::size_t n = elements_.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    const Mat gens[2] = {pack(0, p_ - 1, 1, 0), pack(1, 1, 0, 1)};
    for (std::size_t i = 0; i < n; ++i)
      for (Mat g : gens) {
        Mat c = mul(mul(g, elements_[i]), inv(g));
        int a = find(static_cast<int>(i)), b = find(index(c));
        if (a != b) parent[a] = b;
      }
    std::unordered_map<int, int> ids;
    class_id_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto [it, fresh] = ids.emplace(find(static_cast<int>(i)), static_cast<int>(ids.size()));
      class_id_[i] = it->second;
    }
    class_count_ = ids.size();
  }

  unsigned p_;
  std::vector<Mat> elements_;
  std::unordered_map<Mat, int> index_;
  std::vector<int> class_id_;
  std::size_t class_count_ = 0;
};

inline std::shared_ptr<const PSL2> psl2(unsigned p) {
  static std::mutex mu;
  static std::unordered_map<unsigned, std::shared_ptr<const PSL2>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = std::make_shared<PSL2>(p);
  return slot;
}

// Homomorphism F(S) -> PSL(2,p) killing every usable relator.
struct Hom {
  std::shared_ptr<const PSL2> group;
  std::vector<Mat> images;

  Mat image(Letter l) const {
    Mat g = images[l.generator()];
    return l.is_inverse() ? group->inv(g) : g;
  }
  template <class Range>
  Mat image_of(const Range& letters) const {
    Mat r = group->identity();
    for (Letter l : letters) r = group->mul(r, image(l));
    return r;
  }
  Mat relator_image(const Relator& r) const { return group->pow(image_of(r.period), r.exponent); }
  bool kills(const RelatorSet& rels) const {
    for (std::size_t i = 0; i < rels.size(); ++i)
      if (relator_image(rels[i]) != group->identity()) return false;
    return true;
  }
};

struct QuotientConfig {
  std::vector<unsigned> primes;  // empty: chosen from k
  unsigned homs_per_prime = 2;
  unsigned max_primes = 5;
  std::uint64_t seed = 0x5eed;
  std::size_t search_cap = 4000000;  // element checks per hom search
};

inline bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Element orders in PSL(2,p) are the divisors of p, (p-1)/2 and (p+1)/2.
inline std::vector<unsigned> default_primes(long k, unsigned count) {
  std::vector<unsigned> out;
  for (unsigned p = 7; p <= 61 && out.size() < count; ++p) {
    if (!is_prime(p)) continue;
    auto divides = [&](unsigned n) { return n % k == 0; };
    if (k <= 1 || divides(p) || divides((p - 1) / 2) || divides((p + 1) / 2)) out.push_back(p);
  }
  return out;
}

namespace detail {

// Backtracking search for generator images, most-constrained generators first.
class HomSearch {
 public:
  HomSearch(const RelatorSet& rels, std::shared_ptr<const PSL2> g, std::uint64_t seed, std::size_t cap)
      : rels_(rels), g_(std::move(g)), rng_(seed), cap_(cap) {
    const unsigned n = rels.alphabet().generator_count();
    std::vector<std::size_t> weight(n, 0);
    for (const auto& r : rels)
      for (Letter l : r.period) ++weight[l.generator()];
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);
    std::stable_sort(order_.begin(), order_.end(), [&](unsigned x, unsigned y) { return weight[x] > weight[y]; });
    std::vector<unsigned> pos(n);
    for (unsigned i = 0; i < n; ++i) pos[order_[i]] = i;
    by_level_.resize(n);
    for (std::size_t i = 0; i < rels.size(); ++i) {
      unsigned last = 0;
      for (Letter l : rels[i].period) last = std::max(last, pos[l.generator()]);
      by_level_[last].push_back(i);
    }
    images_.assign(n, g_->identity());
  }

  std::optional<Hom> run() {
    if (!descend(0)) return std::nullopt;
    return Hom{g_, images_};
  }

 private:
  bool descend(unsigned level) {
    if (level == order_.size()) return true;
    std::vector<Mat> cand = g_->elements();
    std::shuffle(cand.begin(), cand.end(), rng_);
    auto id = std::find(cand.begin(), cand.end(), g_->identity());
    std::rotate(id, id + 1, cand.end());  // identity only as last resort
    unsigned accepted = 0;
    const unsigned breadth = level + 1 == order_.size() ? 1 : 3;
    for (Mat c : cand) {
      if (++checks_ > cap_) return false;
      images_[order_[level]] = c;
      bool ok = true;
      for (std::size_t r : by_level_[level]) {
        Mat x = g_->identity();
        for (Letter l : rels_[r].period) x = g_->mul(x, l.is_inverse() ? g_->inv(images_[l.generator()]) : images_[l.generator()]);
        if (g_->pow(x, rels_[r].exponent) != g_->identity()) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (descend(level + 1)) return true;
      if (++accepted >= breadth) break;
    }
    images_[order_[level]] = g_->identity();
    return false;
  }

  const RelatorSet& rels_;
  std::shared_ptr<const PSL2> g_;
  std::mt19937_64 rng_;
  std::size_t cap_;
  std::size_t checks_ = 0;
  std::vector<unsigned> order_;
  std::vector<std::vector<std::size_t>> by_level_;
  std::vector<Mat> images_;
};

}  // namespace detail

using QuotientKey = boost::container::small_vector<Mat, 12>;

struct QuotientKeyHash {
  std::size_t operator()(const QuotientKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (Mat m : k) h = (h ^ m) * 0x100000001b3ull + (h >> 31);
    return static_cast<std::size_t>(h);
  }
};

// A family of finite images of the group presented by a relator set.
class QuotientFamily {
 public:
  QuotientFamily() = default;
  QuotientFamily(const RelatorSet& rels, long k, const QuotientConfig& cfg) {
    auto primes = cfg.primes.empty() ? default_primes(k, cfg.max_primes) : cfg.primes;
    std::uint64_t seed = cfg.seed;
    for (unsigned p : primes) {
      auto g = psl2(p);
      for (unsigned t = 0; t < cfg.homs_per_prime; ++t) {
        seed = seed * 6364136223846793005ull + 1442695040888963407ull;
        auto h = detail::HomSearch(rels, g, seed ^ (std::uint64_t(p) << 32) ^ t, cfg.search_cap).run();
        if (!h || !h->kills(rels)) continue;
        bool trivial = std::all_of(h->images.begin(), h->images.end(), [&](Mat m) { return m == g->identity(); });
        bool dup = std::any_of(homs_.begin(), homs_.end(), [&](const Hom& o) { return o.group == h->group && o.images == h->images; });
        if (!trivial && !dup) homs_.push_back(std::move(*h));
      }
    }
  }

  std::size_t size() const { return homs_.size(); }
  const Hom& operator[](std::size_t i) const { return homs_[i]; }

  template <class Range>
  QuotientKey key(const Range& letters) const {
    QuotientKey k(homs_.size());
    for (std::size_t i = 0; i < homs_.size(); ++i) k[i] = homs_[i].image_of(letters);
    return k;
  }
  QuotientKey extend(const QuotientKey& k, Letter l) const {
    QuotientKey out(homs_.size());
    for (std::size_t i = 0; i < homs_.size(); ++i) out[i] = homs_[i].group->mul(k[i], homs_[i].image(l));
    return out;
  }

  // First quotient where the word has nontrivial image.
  template <class Range>
  std::optional<std::size_t> separates_from_one(const Range& letters) const {
    for (std::size_t i = 0; i < homs_.size(); ++i)
      if (homs_[i].image_of(letters) != homs_[i].group->identity()) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> separates_classes(const Word& u, const Word& v) const {
    for (std::size_t i = 0; i < homs_.size(); ++i) {
      const auto& g = *homs_[i].group;
      if (g.class_of(homs_[i].image_of(u)) != g.class_of(homs_[i].image_of(v))) return i;
    }
    return std::nullopt;
  }

  // Classes met by the image of <a,b>, cached per quotient.
  const std::vector<char>& ab_classes(std::size_t i) const {
    std::call_once(ab_once_, [&] {
      for (const auto& h : homs_) ab_classes_.push_back(subgroup_classes(h, {h.images[0], h.images[1]}));
    });
    return ab_classes_[i];
  }

  // Classes met by powers of x.
  static std::vector<char> power_classes(const PSL2& g, Mat x) {
    std::vector<char> out(g.class_count(), 0);
    Mat y = g.identity();
    do {
      out[g.class_of(y)] = 1;
      y = g.mul(y, x);
    } while (y != g.identity());
    return out;
  }

  static std::vector<char> subgroup_classes(const Hom& h, std::vector<Mat> gens) {
    const auto& g = *h.group;
    std::vector<char> seen(g.order(), 0), cls(g.class_count(), 0);
    std::vector<Mat> stack{g.identity()};
    seen[g.index(g.identity())] = 1;
    while (!stack.empty()) {
      Mat x = stack.back();
      stack.pop_back();
      cls[g.class_of(x)] = 1;
      for (Mat s : gens)
        for (Mat y : {g.mul(x, s), g.mul(x, g.inv(s))}) {
          int id = g.index(y);
          if (!seen[id]) {
            seen[id] = 1;
            stack.push_back(y);
          }
        }
    }
    return cls;
  }

 private:
  std::vector<Hom> homs_;
  mutable std::once_flag ab_once_;
  mutable std::vector<std::vector<char>> ab_classes_;
};

}  // namespace burnlab
