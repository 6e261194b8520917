#include "logtr/decimal.hpp"

namespace logtr {

namespace {

const mpz_class& unit() {
  static mpz_class u = [] {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), 10, Dec::kDigits);
    return t;
  }();
  return u;
}

// atanh(y) for |y| < 1/2, via the odd series.
Dec atanh_small(const Dec& y) {
  Dec y2 = y * y;
  Dec term = y;
  Dec acc = y;
  for (long j = 1; j < 4 * Dec::kDigits; ++j) {
    term = term * y2;
    if (term.is_zero()) break;
    acc = acc + Dec::from_mantissa(term.mantissa() / (2 * j + 1));
  }
  return acc;
}

const Dec& ln2() {
  static Dec v = Dec::from_mantissa(2 * atanh_small(Dec(Rat(1, 3))).mantissa());
  return v;
}

}  // namespace

Dec::Dec(const Rat& r) {
  mpz_class scaled = r.num() * unit();
  mpz_fdiv_q(mant_.get_mpz_t(), scaled.get_mpz_t(), r.den().get_mpz_t());
}

Dec Dec::abs() const { return from_mantissa(::abs(mant_)); }

Dec Dec::operator-() const { return from_mantissa(-mant_); }

Dec operator*(const Dec& a, const Dec& b) {
  mpz_class m = a.mant_ * b.mant_;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), m.get_mpz_t(), unit().get_mpz_t());
  return Dec::from_mantissa(std::move(q));
}

Dec operator/(const Dec& a, const Dec& b) {
  if (b.is_zero()) fail(Err::Internal, "decimal division by zero");
  mpz_class m = a.mant_ * unit();
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), m.get_mpz_t(), b.mant_.get_mpz_t());
  return Dec::from_mantissa(std::move(q));
}

Dec Dec::ln() const {
  if (sign() <= 0) fail(Err::Internal, "log of nonpositive decimal");
  Dec x = *this;
  long k = 0;
  Dec three_half(Rat(3, 2)), three_quarter(Rat(3, 4));
  while (three_half <= x) {
    x = Dec::from_mantissa(x.mant_ / 2);
    ++k;
  }
  while (x < three_quarter) {
    x = Dec::from_mantissa(x.mant_ * 2);
    --k;
  }
  // ln x = 2 atanh((x-1)/(x+1)), |arg| <= 1/3 on [3/4, 3/2]
  Dec one(Rat(1));
  Dec y = (x - one) / (x + one);
  Dec res = Dec::from_mantissa(2 * atanh_small(y).mantissa());
  if (k != 0) res = res + Dec::from_mantissa(k * ln2().mantissa());
  return res;
}

std::string Dec::str(long display_digits) const {
  mpz_class drop;
  mpz_ui_pow_ui(drop.get_mpz_t(), 10, kDigits - display_digits);
  mpz_class m = mant_ / drop;
  bool neg = m < 0;
  mpz_class a = ::abs(m);
  mpz_class scale_disp;
  mpz_ui_pow_ui(scale_disp.get_mpz_t(), 10, display_digits);
  mpz_class ip = a / scale_disp;
  mpz_class fp = a % scale_disp;
  std::string frac = fp.get_str();
  frac.insert(frac.begin(), display_digits - frac.size(), '0');
  return (neg ? "-" : "") + ip.get_str() + "." + frac;
}

}  // namespace logtr
