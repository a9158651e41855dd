#pragma once

// Deliberately simple reference implementations used as test oracles.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "burnlab/words.hpp"

namespace naive {

using Codes = std::vector<int>;

inline Codes codes(const burnlab::Word& w) {
  Codes out;
  for (auto l : w) out.push_back(static_cast<int>(l.code()));
  return out;
}

inline Codes reduce(Codes w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if ((w[i] ^ 1) == w[i + 1]) {
        w.erase(w.begin() + i, w.begin() + i + 2);
        changed = true;
        break;
      }
  }
  return w;
}

inline Codes inverse(Codes w) {
  std::reverse(w.begin(), w.end());
  for (int& c : w) c ^= 1;
  return w;
}

inline Codes cyclic_reduce(Codes w) {
  w = reduce(w);
  while (w.size() >= 2 && (w.front() ^ 1) == w.back()) w = Codes(w.begin() + 1, w.end() - 1);
  return w;
}

inline bool shortlex_less(const Codes& x, const Codes& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

inline Codes least_rotation(const Codes& w) {
  Codes best = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    Codes r(w.begin() + s, w.end());
    r.insert(r.end(), w.begin(), w.begin() + s);
    best = std::min(best, r);
  }
  return best;
}

inline Codes conj_class(const Codes& w) { return least_rotation(cyclic_reduce(w)); }

inline bool free_equal(const Codes& u, const Codes& v) {
  Codes w = u;
  Codes vi = inverse(v);
  w.insert(w.end(), vi.begin(), vi.end());
  return reduce(w).empty();
}

// All reduced words of length <= n, built by extending and reducing.
inline std::vector<Codes> ball(int letters, int n) {
  std::vector<Codes> all{{}};
  std::vector<Codes> layer{{}};
  for (int r = 1; r <= n; ++r) {
    std::vector<Codes> next;
    for (const auto& w : layer)
      for (int c = 0; c < letters; ++c)
        if (w.empty() || (w.back() ^ 1) != c) {
          Codes x = w;
          x.push_back(c);
          next.push_back(x);
        }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

inline burnlab::Word word(const Codes& c) {
  burnlab::LetterVec v;
  for (int x : c) v.push_back(burnlab::Letter::from_code(x));
  return burnlab::Word::reduce(v);
}

inline Codes random_word(std::mt19937_64& rng, int letters, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), let(0, letters - 1);
  Codes w(len(rng));
  for (int& c : w) c = let(rng);
  return w;
}

}  // namespace naive

namespace naive {

// Free product of cyclic groups <g_i | g_i^{o_i}>, o_i = 0 meaning infinite.
struct FreeProduct {
  std::vector<long> order;
  using Syl = std::vector<std::pair<int, long>>;

  long canon(int g, long e) const {
    long o = order[g];
    if (o == 0) return e;
    e %= o;
    if (e < 0) e += o;
    if (2 * e > o) e -= o;
    return e;
  }

  Syl normal(const Codes& w) const {
    Syl st;
    for (int c : w) {
      int g = c >> 1;
      long e = (c & 1) ? -1 : 1;
      if (!st.empty() && st.back().first == g) {
        e = canon(g, st.back().second + e);
        st.pop_back();
      } else {
        e = canon(g, e);
      }
      if (e != 0) st.push_back({g, e});
    }
    return st;
  }

  std::size_t length(const Syl& s) const {
    std::size_t n = 0;
    for (auto& [g, e] : s) n += std::labs(e);
    return n;
  }

  Syl cyclic(Syl s) const {
    while (s.size() >= 2 && s.front().first == s.back().first) {
      long e = canon(s.front().first, s.front().second + s.back().second);
      int g = s.front().first;
      s.pop_back();
      s.erase(s.begin());
      if (e != 0) s.insert(s.begin(), {g, e});
    }
    return s;
  }

  Syl conj_class(const Codes& w) const {
    Syl s = cyclic(normal(w));
    Syl best = s;
    for (std::size_t r = 1; r < s.size(); ++r) {
      Syl t(s.begin() + r, s.end());
      t.insert(t.end(), s.begin(), s.begin() + r);
      best = std::min(best, t);
    }
    return best;
  }

  bool equal(const Codes& u, const Codes& v) const {
    Codes w = u;
    Codes vi = inverse(v);
    w.insert(w.end(), vi.begin(), vi.end());
    return normal(w).empty();
  }
};

}  // namespace naive
