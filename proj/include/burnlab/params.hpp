#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "burnlab/errors.hpp"

namespace burnlab {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

// Accepts "p/q", "-p/q", integers and plain decimals ("0.001", "1e-3").
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return InputError("not a rational number: \"" + std::string(text) + "\""); };
  if (text.empty()) throw fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t p = 0, q = 0;
    auto a = std::from_chars(text.data(), text.data() + slash, p);
    auto b = std::from_chars(text.data() + slash + 1, text.data() + text.size(), q);
    if (a.ec != std::errc{} || a.ptr != text.data() + slash || b.ec != std::errc{} || b.ptr != text.data() + text.size() || q == 0)
      throw fail();
    return Rational(p, q);
  }
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '-' || text[i] == '+') neg = text[i++] == '-';
  std::int64_t num = 0, den = 1;
  bool digits = false, dot = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      if (num > (INT64_MAX / 10) - 10 || (dot && den > INT64_MAX / 10)) throw fail();
      num = num * 10 + (c - '0');
      if (dot) den *= 10;
      digits = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!digits) throw fail();
  int exp10 = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw fail();
    auto r = std::from_chars(text.data() + i + 1 + (text[i + 1] == '+'), text.data() + text.size(), exp10);
    if (r.ec != std::errc{} || r.ptr != text.data() + text.size() || exp10 > 18 || exp10 < -18) throw fail();
  }
  Rational out(neg ? -num : num, den);
  for (; exp10 > 0; --exp10) out *= 10;
  for (; exp10 < 0; ++exp10) out /= 10;
  return out;
}

// Constants of the construction. Defaults are placeholders satisfying the
// order constraints; the paper leaves numerics to the small cancellation book.
struct Params {
  long k = 3;
  Rational alpha{1, 100};
  Rational beta{1, 200};
  Rational gamma{1, 300};
  Rational epsilon{1, 1000};
  Rational zeta{1, 2000};
  Rational h{12};

  Rational alpha_bar() const { return Rational(1, 2) + alpha; }
  Rational gamma_bar() const { return Rational(1) - gamma; }
  bool small_k() const { return epsilon * Rational(k) <= Rational(2); }
};

enum class ParamViolation { kNotOdd, kOrder, kAlphaBarGamma, kEpsilonK, kH };

struct ParamCheck {
  std::vector<std::pair<ParamViolation, std::string>> errors;
  std::vector<std::string> caveats;
  bool ok() const { return errors.empty(); }
};

// With allow_small_k the epsilon*k>2 failure becomes a caveat; nothing else is relaxed.
inline ParamCheck check_params(const Params& p, bool allow_small_k = false) {
  ParamCheck out;
  if (p.k < 3 || p.k % 2 == 0) out.errors.emplace_back(ParamViolation::kNotOdd, "exponent k must be an odd integer >= 3 (got " + std::to_string(p.k) + ")");
  if (!(p.alpha > p.beta && p.beta > p.gamma && p.gamma > p.epsilon && p.epsilon > p.zeta && p.zeta > 0))
    out.errors.emplace_back(ParamViolation::kOrder, "constants must satisfy alpha > beta > gamma > epsilon > zeta > 0");
  if (!(p.alpha_bar() + p.epsilon < p.gamma_bar()))
    out.errors.emplace_back(ParamViolation::kAlphaBarGamma, "constants must satisfy alpha_bar + epsilon < gamma_bar, i.e. 1/2 + alpha + epsilon < 1 - gamma");
  if (p.small_k()) {
    std::string msg = "epsilon*k must exceed 2 (epsilon*k = " + to_string(p.epsilon * Rational(p.k)) + ")";
    if (allow_small_k)
      out.caveats.push_back(msg + "; small k accepted at desk scale, Condition-A guarantees are not implied");
    else
      out.errors.emplace_back(ParamViolation::kEpsilonK, msg);
  }
  if (!(p.h > 0)) out.errors.emplace_back(ParamViolation::kH, "constant h must be positive");
  return out;
}

inline void require_params(const Params& p, bool allow_small_k = false) {
  auto c = check_params(p, allow_small_k);
  if (!c.ok()) {
    std::string msg;
    for (auto& [code, text] : c.errors) msg += (msg.empty() ? "" : "; ") + text;
    throw InputError("invalid parameters: " + msg);
  }
}

}  // namespace burnlab
