#pragma once

#include <utility>
#include <vector>

#include "logtr/rat.hpp"
#include "logtr/series.hpp"

namespace logtr {

// Dense univariate polynomial over Rat, ascending degree, no leading zeros.
// The zero polynomial has an empty coefficient vector and degree() == -1.
class Poly {
public:
  Poly() = default;
  explicit Poly(Rat c) { if (!c.is_zero()) c_.push_back(std::move(c)); }
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }
  static Poly x();                       // the monomial z
  static Poly linear(const Rat& root);   // z - root

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rat& coeff(long k) const;
  const Rat& lead() const;
  const std::vector<Rat>& coeffs() const { return c_; }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rat& k) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  // Quotient and remainder with deg(r) < deg(b).
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  static Poly gcd(Poly a, Poly b);  // monic gcd

  Poly derivative() const;
  Rat eval(const Rat& z) const;
  Poly shifted_arg(const Rat& a) const;  // p(u + a) as a polynomial in u
  Poly reversed() const;                 // z^deg * p(1/z)
  Poly monic() const;

  Series to_series(const std::string& tag, long trunc) const;

  std::string str() const;

private:
  void normalize();
  std::vector<Rat> c_;
};

// Rational roots of p with multiplicities. The remaining factor after
// deflating all rational roots is returned as well (constant when p splits
// over the rationals). Root search scales to an integer polynomial and
// enumerates divisor candidates; raises Unsupported if the bound is exceeded.
struct RootList {
  std::vector<std::pair<Rat, long>> roots;  // (root, multiplicity)
  Poly residual;                            // rational-rootless cofactor
};
RootList rational_roots(const Poly& p);

// Rational function in canonical form: gcd(num, den) = 1, den monic.
class RatFun {
public:
  RatFun() : num_(), den_(Poly(Rat(1))) {}
  RatFun(Poly num, Poly den);
  explicit RatFun(Rat c) : num_(Poly(std::move(c))), den_(Poly(Rat(1))) {}
  static RatFun x() { return RatFun(Poly::x(), Poly(Rat(1))); }
  // 1/(z-a)^k scaled
  static RatFun pole(const Rat& a, long k, const Rat& coeff);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun scaled(const Rat& k) const;
  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }

  RatFun derivative() const;
  Rat eval(const Rat& z) const;  // EvaluationAtPole at poles
  bool defined_at(const Rat& z) const;
  // Order of vanishing at z = a (negative for a pole); Unsupported for 0/0
  // after normalization (cannot happen, kept as a guard).
  long order_at(const Rat& a) const;
  long order_at_infinity() const;  // z^{-k} behaviour: returns k

  Series series_at(const Rat& a, const std::string& tag, long trunc) const;
  // Expansion in w = 1/z around infinity.
  Series series_at_infinity(const std::string& tag, long trunc) const;

  std::string str() const;

private:
  Poly num_, den_;
};

}  // namespace logtr
