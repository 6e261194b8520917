#pragma once

#include <map>
#include <string>

#include "logtr/rat.hpp"

namespace logtr {

// A rational number plus a finite formal sum of rational multiples of
// log(rational argument). No log-law rewriting is performed: log(ab) is never
// split, so equality is structural on the normalized term map. log(1) terms
// and zero coefficients are normalized away. Arguments may be negative; they
// stay formal (numeric rendering uses the principal branch and reports the
// i*pi coefficient separately).
class LogValue {
public:
  LogValue() = default;
  LogValue(Rat rational) : rat_(std::move(rational)) {}  // NOLINT
  static LogValue log_term(const Rat& argument, const Rat& coefficient);

  const Rat& rational_part() const { return rat_; }
  const std::map<Rat, Rat>& log_terms() const { return logs_; }
  bool is_rational() const { return logs_.empty(); }
  bool is_zero() const { return rat_.is_zero() && logs_.empty(); }

  LogValue operator-() const;
  LogValue& operator+=(const LogValue& o);
  LogValue& operator-=(const LogValue& o);
  LogValue& operator*=(const Rat& c);
  friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
  friend LogValue operator-(LogValue a, const LogValue& b) { return a -= b; }
  friend LogValue operator*(LogValue a, const Rat& c) { return a *= c; }
  friend LogValue operator*(const Rat& c, LogValue a) { return a *= c; }

  friend bool operator==(const LogValue& a, const LogValue& b) {
    return a.rat_ == b.rat_ && a.logs_ == b.logs_;
  }
  friend bool operator!=(const LogValue& a, const LogValue& b) { return !(a == b); }

  // "3/4 + 1/2*log(-2) - log(3)"
  std::string str() const;

private:
  void add_log(const Rat& arg, const Rat& coeff);
  Rat rat_;
  std::map<Rat, Rat> logs_;  // argument -> coefficient
};

}  // namespace logtr
