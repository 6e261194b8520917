#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "logtr/error.hpp"

namespace logtr {

// Exact rational scalar. Always in lowest terms with positive denominator
// (mpq_class canonical form). All arithmetic is exact.
class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit by design
  Rat(long n, long d);
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  static Rat parse(const std::string& s);  // "p", "-p", "p/q"

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat abs() const { return sign() < 0 ? -*this : *this; }

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  Rat inv() const;
  Rat pow(long e) const;  // integer exponent, negative allowed

  // Exact square root if this is a square of a rational, else nullopt.
  std::optional<Rat> sqrt_exact() const;
  // Exact n-th root (n >= 1) if it exists, else nullopt.
  std::optional<Rat> nth_root_exact(unsigned long n) const;

  // Canonical rendering: "p" or "p/q".
  std::string str() const;

private:
  mpq_class v_;
};

inline Rat operator*(long a, const Rat& b) { return Rat(a) * b; }

struct RatHash {
  size_t operator()(const Rat& r) const;
};

}  // namespace logtr
