#pragma once

#include <string>
#include <vector>

#include "logtr/rat.hpp"

namespace logtr {

// Truncated Laurent series over Rat in a tagged local variable.
//
// Coefficients are known exactly on the window [lo, trunc]; everything above
// trunc is unknown (not zero), everything below lo is known to vanish. A
// series that is zero up to its truncation is stored with an empty
// coefficient vector and lo = trunc + 1. Every operation tracks the valid
// window of its result conservatively, so coefficient queries distinguish
// "known zero" from "unknown" (the latter raises OutOfRange).
class Series {
public:
  Series() : lo_(1), trunc_(0) {}

  static Series zero(std::string tag, long trunc);
  static Series monomial(std::string tag, long degree, Rat coeff, long trunc);
  static Series constant(std::string tag, Rat value, long trunc) {
    return monomial(std::move(tag), 0, std::move(value), trunc);
  }
  // t itself (degree-1 monomial with coefficient 1)
  static Series identity(std::string tag, long trunc) {
    return monomial(std::move(tag), 1, Rat(1), trunc);
  }
  static Series from_coeffs(std::string tag, long lo, std::vector<Rat> coeffs, long trunc);

  const std::string& tag() const { return tag_; }
  long truncation() const { return trunc_; }
  long window_lo() const { return lo_; }
  bool is_zero_upto_trunc() const { return c_.empty(); }
  // First degree with a nonzero coefficient; trunc+1 for a zero series.
  long valuation() const { return lo_; }

  // Coefficient of degree k: exact value for k <= trunc, OutOfRange above.
  const Rat& coeff(long k) const;
  Rat residue() const { return coeff(-1); }

  Series truncated(long new_trunc) const;
  // Multiply by t^k (shift all degrees).
  Series shifted(long k) const;

  Series operator-() const;
  friend Series operator+(const Series& a, const Series& b);
  friend Series operator-(const Series& a, const Series& b);
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator/(const Series& a, const Series& b);
  Series& operator+=(const Series& b) { return *this = *this + b; }
  Series& operator-=(const Series& b) { return *this = *this - b; }
  Series& operator*=(const Series& b) { return *this = *this * b; }

  Series scaled(const Rat& c) const;
  Series plus_const(const Rat& c) const;
  Series pow_int(long e) const;  // negative exponents via inversion
  Series inverse() const { return pow_int(-1); }

  // f(g): needs this->lo >= 0 and g.valuation() >= 1.
  Series compose(const Series& g) const;
  // g with f(g(t)) = t + O(t^{trunc+1}); needs valuation 1. Postcondition
  // checked internally.
  Series revert() const;
  // Square root of a series with valuation exactly 2 whose leading
  // coefficient is a rational square; branch fixed by the positive root.
  Series sqrt_even() const;
  // n-th root of a series whose valuation is divisible by n and whose
  // leading coefficient has a rational n-th root (positive root chosen).
  Series nth_root(long n) const;

  Series derivative() const;
  // Term-by-term antiderivative with integration constant 0; the degree -1
  // coefficient must be known zero (ResidueObstruction otherwise).
  Series antiderivative() const;

  // exp/log of a series with valuation >= 1 (no constant term).
  Series exp_positive() const;
  Series log1p() const;

  bool operator==(const Series& o) const;
  std::string str() const;  // diagnostic rendering

private:
  void normalize();
  static void check_tags(const Series& a, const Series& b);

  std::string tag_;
  long lo_ = 1;     // lowest known degree; coeffs_[0] has this degree
  long trunc_ = 0;  // highest known degree
  std::vector<Rat> c_;
};

}  // namespace logtr
