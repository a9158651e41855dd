#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "burnlab/errors.hpp"

namespace burnlab {

// Generator 0 is a, 1 is b, 2.. are s1..sm. The code 2*g+inv puts a letter
// right before its inverse, so code order is the shortlex letter order.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(unsigned generator, bool inverse)
      : code_(static_cast<std::uint8_t>(2 * generator + (inverse ? 1 : 0))) {}

  static constexpr Letter from_code(unsigned code) {
    Letter l;
    l.code_ = static_cast<std::uint8_t>(code);
    return l;
  }

  constexpr unsigned code() const { return code_; }
  constexpr unsigned generator() const { return code_ >> 1; }
  constexpr bool is_inverse() const { return code_ & 1; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1u); }
  constexpr bool is_ab() const { return generator() < 2; }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  std::uint8_t code_ = 0;
};

inline constexpr Letter kA{0, false};
inline constexpr Letter kAInv{0, true};
inline constexpr Letter kB{1, false};
inline constexpr Letter kBInv{1, true};
inline constexpr Letter s_letter(unsigned j, bool inverse = false) { return Letter{j + 1, inverse}; }

// Alphabet {a, b, s1..sm} together with inverses.
class Alphabet {
 public:
  explicit Alphabet(unsigned m) : m_(m) {
    if (m > 60) throw InputError("alphabet: m must be at most 60");
  }
  unsigned m() const { return m_; }
  unsigned generator_count() const { return m_ + 2; }
  unsigned letter_count() const { return 2 * (m_ + 2); }
  bool contains(Letter l) const { return l.generator() < generator_count(); }
  Letter letter(unsigned code) const { return Letter::from_code(code); }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  unsigned m_;
};

using LetterVec = std::vector<Letter>;

// Freely reduced word. Comparison is shortlex.
class Word {
 public:
  using storage = boost::container::small_vector<Letter, 14>;
  using const_iterator = storage::const_iterator;

  Word() = default;

  static Word reduce(std::span<const Letter> letters) {
    Word w;
    w.letters_.reserve(letters.size());
    for (Letter l : letters) w.push_reduce(l);
    return w;
  }
  static Word reduce(std::initializer_list<Letter> letters) {
    return reduce(std::span<const Letter>(letters.begin(), letters.size()));
  }
  static Word letter(Letter l) {
    Word w;
    w.letters_.push_back(l);
    return w;
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  const_iterator begin() const { return letters_.begin(); }
  const_iterator end() const { return letters_.end(); }
  std::span<const Letter> span() const { return {letters_.data(), letters_.size()}; }
  LetterVec to_vector() const { return LetterVec(begin(), end()); }

  Word inverse() const {
    Word w;
    w.letters_.reserve(size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
  }

  Word& operator*=(const Word& rhs) {
    for (Letter l : rhs.letters_) push_reduce(l);
    return *this;
  }
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  Word pow(long n) const {
    Word base = n < 0 ? inverse() : *this;
    Word out;
    for (long i = 0; i < (n < 0 ? -n : n); ++i) out *= base;
    return out;
  }

  // Subwords of reduced words are reduced.
  Word subword(std::size_t pos, std::size_t len) const {
    Word w;
    w.letters_.assign(letters_.begin() + pos, letters_.begin() + pos + len);
    return w;
  }

  bool only_ab() const {
    return std::all_of(begin(), end(), [](Letter l) { return l.is_ab(); });
  }
  bool is_cyclically_reduced() const { return size() < 2 || front() != back().inverse(); }

  friend bool operator==(const Word& x, const Word& y) { return x.letters_ == y.letters_; }
  friend std::strong_ordering operator<=>(const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() <=> y.size();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != y[i]) return x[i] <=> y[i];
    return std::strong_ordering::equal;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (Letter l : letters_) {
      h ^= l.code() + 1;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

 private:
  void push_reduce(Letter l) {
    if (!letters_.empty() && letters_.back() == l.inverse())
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  storage letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const { return w.hash(); }
};

// w = conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicSplit {
  Word conjugator;
  Word core;
};

inline CyclicSplit cyclic_split(const Word& w) {
  std::size_t i = 0, n = w.size();
  while (2 * i + 1 < n && w[i] == w[n - 1 - i].inverse()) ++i;
  return {w.subword(0, i), w.subword(i, n - 2 * i)};
}

inline Word cyclic_core(const Word& w) { return cyclic_split(w).core; }

inline Word rotate(const Word& w, std::size_t shift) {
  if (w.empty()) return w;
  shift %= w.size();
  LetterVec v(w.begin() + shift, w.end());
  v.insert(v.end(), w.begin(), w.begin() + shift);
  return Word::reduce(v);
}

// Least rotation by Booth's algorithm; returns the shift.
inline std::size_t least_rotation(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    Letter sj = s[j % n];
    long i = f[j - k - 1];
    while (i != -1 && sj != s[(k + i + 1) % n]) {
      if (sj < s[(k + i + 1) % n]) k = j - i - 1;
      i = f[i];
    }
    if (i == -1 && sj != s[(k + i + 1) % n]) {
      if (sj < s[(k + i + 1) % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k;
}

// Conjugacy-class representative in the free group: least rotation of the core.
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(const Word& w) {
    Word core = cyclic_core(w);
    canonical_ = rotate(core, least_rotation(core.span()));
  }
  const Word& canonical() const { return canonical_; }
  std::size_t size() const { return canonical_.size(); }
  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend auto operator<=>(const CyclicWord& x, const CyclicWord& y) { return x.canonical_ <=> y.canonical_; }

 private:
  Word canonical_;
};

// Smallest d with w a rotation of itself by d; w is a proper power iff d < |w|.
inline std::size_t primitive_period(std::span<const Letter> w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return d;
  }
  return n;
}

// ---- text codec -----------------------------------------------------------
// a A b B are single characters; s-letters are s<j> and S<j>. Words using any
// s-letter are written dot-separated, pure a/b words are concatenated. The
// empty word is "1".

inline std::string letter_name(Letter l) {
  switch (l.generator()) {
    case 0: return l.is_inverse() ? "A" : "a";
    case 1: return l.is_inverse() ? "B" : "b";
    default: return (l.is_inverse() ? "S" : "s") + std::to_string(l.generator() - 1);
  }
}

template <class Range>
std::string format_letters(const Range& letters) {
  bool dotted = false;
  std::size_t count = 0;
  for (Letter l : letters) {
    dotted |= !l.is_ab();
    ++count;
  }
  if (count == 0) return "1";
  std::string out;
  for (Letter l : letters) {
    if (dotted && !out.empty()) out += '.';
    out += letter_name(l);
  }
  return out;
}

inline std::string format_word(const Word& w) { return format_letters(w); }

// Unreduced letter sequence; dots and whitespace are separators.
inline LetterVec parse_letters(std::string_view text, const Alphabet& alpha) {
  LetterVec out;
  std::size_t i = 0;
  if (text == "1") return out;
  while (i < text.size()) {
    char c = text[i];
    if (c == '.' || c == ' ' || c == '\t' || c == '*') {
      ++i;
      continue;
    }
    if (c == 'a' || c == 'A' || c == 'b' || c == 'B') {
      out.emplace_back(c == 'a' || c == 'A' ? 0u : 1u, c == 'A' || c == 'B');
      ++i;
      continue;
    }
    if (c == 's' || c == 'S') {
      std::size_t j = i + 1;
      unsigned idx = 0;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9' && idx < 1000) idx = idx * 10 + (text[j++] - '0');
      if (j == i + 1) throw InputError("word: missing index after '" + std::string(1, c) + "' in \"" + std::string(text) + "\"");
      if (idx < 1 || idx > alpha.m())
        throw InputError("word: letter " + std::string(text.substr(i, j - i)) + " outside alphabet with m=" + std::to_string(alpha.m()));
      out.emplace_back(idx + 1, c == 'S');
      i = j;
      continue;
    }
    throw InputError("word: unexpected character '" + std::string(1, c) + "' in \"" + std::string(text) + "\"");
  }
  return out;
}

inline Word parse_word(std::string_view text, const Alphabet& alpha) { return Word::reduce(parse_letters(text, alpha)); }

// All reduced words of length exactly n in shortlex order.
template <class Fn>
void for_each_reduced_word(const Alphabet& alpha, std::size_t n, Fn&& fn, bool ab_only = false) {
  const unsigned letters = ab_only ? 4 : alpha.letter_count();
  if (n == 0) {
    fn(Word{});
    return;
  }
  std::vector<unsigned> code(n, 0);
  LetterVec buf(n);
  // depth-first with pruning of cancelling pairs
  std::size_t pos = 0;
  code[0] = 0;
  while (true) {
    if (code[pos] >= letters) {
      if (pos == 0) return;
      --pos;
      ++code[pos];
      continue;
    }
    if (pos > 0 && (code[pos] ^ 1u) == code[pos - 1]) {
      ++code[pos];
      continue;
    }
    buf[pos] = Letter::from_code(code[pos]);
    if (pos + 1 == n) {
      fn(Word::reduce(buf));
      ++code[pos];
    } else {
      ++pos;
      code[pos] = 0;
    }
  }
}

}  // namespace burnlab

template <>
struct std::hash<burnlab::Word> {
  std::size_t operator()(const burnlab::Word& w) const { return w.hash(); }
};
