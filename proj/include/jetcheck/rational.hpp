#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "jetcheck/errors.hpp"

namespace jetcheck {

/// Exact rational constant. Always normalized: den > 0, gcd(|num|, den) = 1.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked(i128(a.num_) * b.den_ + i128(b.num_) * a.den_),
                    checked(i128(a.den_) * b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked(i128(a.num_) * b.num_),
                    checked(i128(a.den_) * b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw SingularPointError("rational division by zero");
    return Rational(checked(i128(a.num_) * b.den_),
                    checked(i128(a.den_) * b.num_));
  }
  Rational operator-() const { return Rational(-num_, den_); }

  Rational pow(int k) const {
    if (k < 0) {
      if (num_ == 0) throw SingularPointError("0 raised to negative power");
      return Rational(1, 1) / pow(-k);
    }
    Rational r(1), base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  static std::int64_t checked(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw Error("rational overflow in constant folding");
    return static_cast<std::int64_t>(v);
  }

  void normalize() {
    if (den_ == 0) throw SingularPointError("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_{0};
  std::int64_t den_{1};
};

}  // namespace jetcheck
