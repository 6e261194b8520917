#pragma once

#include <map>
#include <vector>

#include "logtr/poly.hpp"
#include "logtr/rat.hpp"

namespace logtr {

// One elementary pole factor dz/(z - pole)^order attached to a variable slot.
struct Factor {
  Rat pole;
  long order = 1;
  friend bool operator<(const Factor& a, const Factor& b) {
    if (a.pole != b.pole) return a.pole < b.pole;
    return a.order < b.order;
  }
  friend bool operator==(const Factor& a, const Factor& b) {
    return a.pole == b.pole && a.order == b.order;
  }
};

using Term = std::vector<Factor>;  // one factor per slot, slot order fixed

// A symmetric n-variable differential stored as a sparse sum of products of
// elementary pole factors: sum_terms c * prod_i dz_i/(z_i - p_i)^{k_i}.
// Terms are stored per ordered slot assignment; a symmetric form shows up as
// a slot-permutation-invariant coefficient map (checked, not enforced).
class PoleSum {
public:
  explicit PoleSum(long arity = 1) : arity_(arity) {}

  long arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Term, Rat>& terms() const { return terms_; }

  void add_term(const Term& t, const Rat& c);
  PoleSum& operator+=(const PoleSum& o);
  PoleSum& operator-=(const PoleSum& o);
  friend PoleSum operator+(PoleSum a, const PoleSum& b) { return a += b; }
  friend PoleSum operator-(PoleSum a, const PoleSum& b) { return a -= b; }
  PoleSum scaled(const Rat& c) const;
  bool operator==(const PoleSum& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
  bool operator!=(const PoleSum& o) const { return !(*this == o); }

  // Scalar value of the coefficient of prod dz_i at the given points.
  Rat eval(const std::vector<Rat>& points) const;

  bool is_symmetric() const;
  // order-1 factors never appear by construction; guard used in tests
  bool is_residue_free() const;
  long max_order_at(const Rat& pole) const;
  std::vector<Rat> pole_locations() const;

  // Arity-1 sums convert to an honest rational function (coefficient of dz).
  RatFun to_ratfun() const;

  std::string str_text(const std::string& var = "z") const;
  std::string str_latex(const std::string& var = "z") const;

private:
  long arity_;
  std::map<Term, Rat> terms_;
};

// Rational antiderivative of an arity-1 residue-free pole sum, normalized to
// vanish at the basepoint: F(z) = const + sum c_k (z-p)^{-k}.
class PoleIntegral {
public:
  PoleIntegral() = default;
  PoleIntegral(const PoleSum& w, const Rat& basepoint);

  Rat eval(const Rat& z) const;
  Rat eval_at_infinity() const;  // limit z -> inf (constant term)
  Series series_at(const Rat& a, const std::string& tag, long trunc) const;
  const Rat& constant() const { return const_; }

private:
  std::vector<std::pair<Factor, Rat>> parts_;  // factor (pole, k>=1) with coeff: c/(z-p)^k
  Rat const_;
};

}  // namespace logtr
