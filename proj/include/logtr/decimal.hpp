#pragma once

#include <gmpxx.h>

#include <string>

#include "logtr/rat.hpp"

namespace logtr {

// Fixed-point high-precision decimal: value = mant / 10^digits. Used only at
// the final finite-difference comparisons (everything upstream is exact) and
// to render log terms numerically.
class Dec {
public:
  static constexpr long kDigits = 100;

  Dec() : mant_(0) {}
  explicit Dec(const Rat& r);
  static Dec from_mantissa(mpz_class m) {
    Dec d;
    d.mant_ = std::move(m);
    return d;
  }

  const mpz_class& mantissa() const { return mant_; }
  bool is_zero() const { return mant_ == 0; }
  int sign() const { return sgn(mant_); }
  Dec abs() const;

  Dec operator-() const;
  friend Dec operator+(const Dec& a, const Dec& b) { return from_mantissa(a.mant_ + b.mant_); }
  friend Dec operator-(const Dec& a, const Dec& b) { return from_mantissa(a.mant_ - b.mant_); }
  friend Dec operator*(const Dec& a, const Dec& b);
  friend Dec operator/(const Dec& a, const Dec& b);
  friend bool operator<(const Dec& a, const Dec& b) { return a.mant_ < b.mant_; }
  friend bool operator<=(const Dec& a, const Dec& b) { return a.mant_ <= b.mant_; }
  friend bool operator==(const Dec& a, const Dec& b) { return a.mant_ == b.mant_; }

  // Natural log of a positive value.
  Dec ln() const;

  std::string str(long display_digits = 40) const;

private:
  mpz_class mant_;
};

}  // namespace logtr
