#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

#include "burnlab/errors.hpp"
#include "burnlab/params.hpp"

namespace burnlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigRational big(const Rational& r) { return BigRational(BigInt(r.numerator()), BigInt(r.denominator())); }

// Exact numbers a + b*sqrt(d) over the rationals, d a positive integer that is
// not a perfect square (d == 1 means the field is Q and b stays 0).
class Surd {
 public:
  Surd() = default;
  Surd(BigRational a, BigRational b, BigInt d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) { normalize(); }
  static Surd rational(BigRational a, const BigInt& d = 1) { return Surd(std::move(a), 0, d); }

  // sqrt(x) for a nonnegative rational x, as an element of Q(sqrt(d)).
  static Surd sqrt_of(const BigRational& x) {
    if (x < 0) throw InputError("square root of a negative number");
    BigInt p = boost::multiprecision::numerator(x), q = boost::multiprecision::denominator(x);
    BigInt d = p * q;  // sqrt(p/q) = sqrt(pq)/q
    BigInt s = boost::multiprecision::sqrt(d);
    if (s * s == d) return rational(BigRational(s, q));
    return Surd(0, BigRational(1, q), d);
  }

  const BigRational& a() const { return a_; }
  const BigRational& b() const { return b_; }
  const BigInt& d() const { return d_; }

  int sign() const {
    int sa = a_ > 0 ? 1 : a_ < 0 ? -1 : 0, sb = b_ > 0 ? 1 : b_ < 0 ? -1 : 0;
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    BigRational lhs = a_ * a_, rhs = b_ * b_ * BigRational(d_);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  Surd operator-() const { return Surd(-a_, -b_, d_); }
  friend Surd operator+(const Surd& x, const Surd& y) { return Surd(x.a_ + y.a_, x.b_ + y.b_, join(x, y)); }
  friend Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }
  friend Surd operator*(const Surd& x, const Surd& y) {
    BigInt d = join(x, y);
    return Surd(x.a_ * y.a_ + x.b_ * y.b_ * BigRational(d), x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend Surd operator/(const Surd& x, const Surd& y) {
    // multiply by the conjugate of y
    BigInt d = join(x, y);
    BigRational n = y.a_ * y.a_ - y.b_ * y.b_ * BigRational(d);
    if (n == 0) throw InputError("division by zero");
    Surd c(y.a_ / n, -y.b_ / n, d);
    return x * c;
  }
  Surd pow(unsigned e) const {
    Surd r = rational(1, d_), base = *this;
    for (; e; e >>= 1) {
      if (e & 1) r = r * base;
      base = base * base;
    }
    return r;
  }

  friend bool operator==(const Surd& x, const Surd& y) { return (x - y).sign() == 0; }
  friend bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }
  friend bool operator<=(const Surd& x, const Surd& y) { return (x - y).sign() <= 0; }

  double to_double() const {
    return static_cast<double>(a_) + static_cast<double>(b_) * std::sqrt(static_cast<double>(d_));
  }
  std::string str() const {
    std::string s = a_.str();
    if (b_ != 0) s += (b_ > 0 ? " + " : " - ") + BigRational(abs(b_)).str() + "*sqrt(" + d_.str() + ")";
    return s;
  }

 private:
  static BigInt join(const Surd& x, const Surd& y) {
    if (x.d_ == 1) return y.d_;
    if (y.d_ == 1 || x.d_ == y.d_) return x.d_;
    throw InputError("surds from different fields");
  }
  void normalize() {
    if (d_ < 1) throw InputError("surd radicand must be positive");
    if (d_ == 1) {
      a_ += b_;
      b_ = 0;
    }
  }

  BigRational a_ = 0, b_ = 0;
  BigInt d_ = 1;
};

}  // namespace burnlab
