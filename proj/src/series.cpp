#include "logtr/series.hpp"

#include <algorithm>
#include <sstream>

#include "logtr/special.hpp"

namespace logtr {

namespace {
const Rat kZero(0);
}

Series Series::zero(std::string tag, long trunc) {
  Series s;
  s.tag_ = std::move(tag);
  s.trunc_ = trunc;
  s.lo_ = trunc + 1;
  return s;
}

Series Series::monomial(std::string tag, long degree, Rat coeff, long trunc) {
  if (coeff.is_zero() || degree > trunc) return zero(std::move(tag), trunc);
  Series s;
  s.tag_ = std::move(tag);
  s.lo_ = degree;
  s.trunc_ = trunc;
  s.c_.resize(trunc - degree + 1, Rat(0));
  s.c_[0] = std::move(coeff);
  return s;
}

Series Series::from_coeffs(std::string tag, long lo, std::vector<Rat> coeffs, long trunc) {
  Series s;
  s.tag_ = std::move(tag);
  s.lo_ = lo;
  s.trunc_ = trunc;
  s.c_ = std::move(coeffs);
  if (static_cast<long>(s.c_.size()) != trunc - lo + 1)
    fail(Err::Internal, "coefficient vector does not match window");
  s.normalize();
  return s;
}

void Series::normalize() {
  size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    lo_ = trunc_ + 1;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    lo_ += static_cast<long>(lead);
  }
}

void Series::check_tags(const Series& a, const Series& b) {
  if (a.tag_ != b.tag_)
    fail(Err::TagMismatch, "series in '" + a.tag_ + "' combined with series in '" + b.tag_ + "'");
}

const Rat& Series::coeff(long k) const {
  if (k > trunc_)
    fail(Err::OutOfRange,
         "coefficient of degree " + std::to_string(k) + " unknown (truncation " +
             std::to_string(trunc_) + " in '" + tag_ + "')");
  if (k < lo_) return kZero;
  return c_[k - lo_];
}

Series Series::truncated(long new_trunc) const {
  if (new_trunc >= trunc_) return *this;
  Series s;
  s.tag_ = tag_;
  s.trunc_ = new_trunc;
  if (c_.empty() || lo_ > new_trunc) {
    s.lo_ = new_trunc + 1;
    return s;
  }
  s.lo_ = lo_;
  s.c_.assign(c_.begin(), c_.begin() + (new_trunc - lo_ + 1));
  s.normalize();
  return s;
}

Series Series::shifted(long k) const {
  Series s = *this;
  s.lo_ += k;
  s.trunc_ += k;
  return s;
}

Series Series::operator-() const {
  Series s = *this;
  for (auto& c : s.c_) c = -c;
  return s;
}

Series operator+(const Series& a, const Series& b) {
  Series::check_tags(a, b);
  long trunc = std::min(a.trunc_, b.trunc_);
  long lo = std::min(a.lo_, b.lo_);
  if (lo > trunc) return Series::zero(a.tag_, trunc);
  std::vector<Rat> c(trunc - lo + 1, Rat(0));
  for (long k = std::max(lo, a.lo_); k <= std::min(trunc, a.trunc_); ++k) c[k - lo] += a.c_[k - a.lo_];
  for (long k = std::max(lo, b.lo_); k <= std::min(trunc, b.trunc_); ++k) c[k - lo] += b.c_[k - b.lo_];
  return Series::from_coeffs(a.tag_, lo, std::move(c), trunc);
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
  Series::check_tags(a, b);
  long trunc = std::min(a.trunc_ + b.lo_, b.trunc_ + a.lo_);
  long lo = a.lo_ + b.lo_;
  if (a.c_.empty() || b.c_.empty() || lo > trunc) return Series::zero(a.tag_, trunc);
  std::vector<Rat> c(trunc - lo + 1, Rat(0));
  for (long i = a.lo_; i <= a.trunc_; ++i) {
    const Rat& ai = a.c_[i - a.lo_];
    if (ai.is_zero()) continue;
    long jmax = std::min(b.trunc_, trunc - i);
    for (long j = b.lo_; j <= jmax; ++j) {
      const Rat& bj = b.c_[j - b.lo_];
      if (!bj.is_zero()) c[i + j - lo] += ai * bj;
    }
  }
  return Series::from_coeffs(a.tag_, lo, std::move(c), trunc);
}

Series Series::scaled(const Rat& k) const {
  if (k.is_zero()) return zero(tag_, trunc_);
  Series s = *this;
  for (auto& c : s.c_) c *= k;
  return s;
}

Series Series::plus_const(const Rat& k) const { return *this + constant(tag_, k, trunc_); }

Series Series::pow_int(long e) const {
  if (e >= 0) {
    // seed the unit with a generous window; multiplication trims it
    Series result = constant(tag_, Rat(1), trunc_ + std::abs(lo_) * e + 1);
    Series base = *this;
    long k = e;
    while (k > 0) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return result.truncated(std::min(result.truncation(), trunc_ + lo_ * std::max(e - 1, 0L)));
  }
  // inversion then positive power
  if (c_.empty())
    fail(Err::DivisionByZeroSeries, "inverting a series that vanishes up to truncation");
  long v = lo_;
  Rat lead = c_[0];
  // this = lead * t^v * (1 + u), invert the unit part by recurrence
  long n = trunc_ - v;  // unit part known to order n
  std::vector<Rat> u(n + 1, Rat(0));
  for (long k = 0; k <= n; ++k) u[k] = c_[k] / lead;
  std::vector<Rat> w(n + 1, Rat(0));
  w[0] = Rat(1);
  for (long k = 1; k <= n; ++k) {
    Rat acc(0);
    for (long j = 1; j <= k; ++j)
      if (!u[j].is_zero()) acc += u[j] * w[k - j];
    w[k] = -acc;
  }
  Series inv_unit = from_coeffs(tag_, 0, std::move(w), n);
  Series inv = inv_unit.scaled(lead.inv()).shifted(-v);
  if (e == -1) return inv;
  return inv.pow_int(-e);
}

Series operator/(const Series& a, const Series& b) {
  Series::check_tags(a, b);
  if (b.is_zero_upto_trunc())
    fail(Err::DivisionByZeroSeries, "division by a series that is zero up to truncation");
  return a * b.pow_int(-1);
}

Series Series::compose(const Series& g) const {
  check_tags(*this, g);
  if (lo_ < 0) fail(Err::InvalidValuation, "composition needs a power series on the outside");
  if (g.is_zero_upto_trunc()) {
    // f(0 + O(..)): constant term of f, valid to g's guaranteed vanishing order
    return constant(tag_, c_.empty() ? Rat(0) : coeff(0), g.trunc_);
  }
  if (g.valuation() < 1)
    fail(Err::InvalidValuation, "inner series must have positive valuation");
  long vg = g.valuation();
  long target = std::min(g.trunc_, (trunc_ + 1) * vg - 1);
  Series gt = g.truncated(target);
  Series acc = zero(tag_, target);
  for (long k = trunc_; k >= 0; --k) {
    acc = acc * gt;
    acc = acc + constant(tag_, coeff(k), target);
  }
  return acc;
}

Series Series::revert() const {
  if (is_zero_upto_trunc() || valuation() != 1)
    fail(Err::NotInvertible, "reversion needs valuation exactly 1");
  const Rat& c1 = c_[0];
  long n = trunc_;
  Series g = monomial(tag_, 1, c1.inv(), n);
  for (long k = 2; k <= n; ++k) {
    Series fg = compose(g);
    Rat corr = -fg.coeff(k) / c1;
    if (!corr.is_zero()) g = g + monomial(tag_, k, corr, n);
  }
  Series check = compose(g);
  for (long k = check.window_lo(); k <= check.truncation(); ++k) {
    if (check.coeff(k) != (k == 1 ? Rat(1) : Rat(0)))
      fail(Err::Internal, "series reversion postcondition failed");
  }
  return g;
}

Series Series::sqrt_even() const {
  if (is_zero_upto_trunc() || valuation() != 2)
    fail(Err::NonSquareLeading, "sqrt_even needs valuation exactly 2");
  auto root = c_[0].sqrt_exact();
  if (!root)
    fail(Err::NonSquareLeading, "leading coefficient " + c_[0].str() + " has no rational square root");
  Rat s = root->sign() < 0 ? -*root : *root;
  // this = c2 t^2 (1 + A); sqrt(1+A) by the direct convolution recurrence.
  long n = trunc_ - 2;
  std::vector<Rat> a(n + 1, Rat(0));
  for (long k = 0; k <= n; ++k) a[k] = c_[k] / c_[0];
  std::vector<Rat> h(n + 1, Rat(0));
  h[0] = Rat(1);
  for (long k = 1; k <= n; ++k) {
    Rat acc = a[k];
    for (long j = 1; j < k; ++j) acc -= h[j] * h[k - j];
    h[k] = acc / Rat(2);
  }
  return from_coeffs(tag_, 0, std::move(h), n).scaled(s).shifted(1);
}

Series Series::nth_root(long n) const {
  if (n == 1) return *this;
  if (n == 2 && !is_zero_upto_trunc() && valuation() == 2) return sqrt_even();
  if (is_zero_upto_trunc()) fail(Err::NonSquareLeading, "nth_root of zero series");
  long v = valuation();
  if (v % n != 0) fail(Err::NonSquareLeading, "valuation not divisible by root order");
  auto root = c_[0].nth_root_exact(static_cast<unsigned long>(n));
  if (!root)
    fail(Err::NonSquareLeading,
         "leading coefficient " + c_[0].str() + " has no rational root of order " + std::to_string(n));
  Rat s = (n % 2 == 0 && root->sign() < 0) ? -*root : *root;
  Series unit = shifted(-v).scaled(c_[0].inv());  // 1 + A
  Series a = unit.plus_const(Rat(-1));
  Series h = a.log1p().scaled(Rat(1, n)).exp_positive();
  return h.scaled(s).shifted(v / n);
}

Series Series::derivative() const {
  Series s;
  s.tag_ = tag_;
  s.trunc_ = trunc_ - 1;
  if (c_.empty()) {
    s.lo_ = s.trunc_ + 1;
    return s;
  }
  s.lo_ = lo_ - 1;
  s.c_.resize(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) s.c_[i] = c_[i] * Rat(lo_ + static_cast<long>(i));
  s.normalize();
  return s;
}

Series Series::antiderivative() const {
  if (-1 > trunc_)
    fail(Err::TruncationExhausted, "cannot certify residue-freeness before integrating");
  if (!coeff(-1).is_zero())
    fail(Err::ResidueObstruction, "nonzero residue " + coeff(-1).str() + " obstructs integration");
  Series s;
  s.tag_ = tag_;
  s.trunc_ = trunc_ + 1;
  if (c_.empty()) {
    s.lo_ = s.trunc_ + 1;
    return s;
  }
  s.lo_ = lo_ + 1;
  s.c_.resize(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) {
    long k = lo_ + static_cast<long>(i);
    s.c_[i] = (k == -1) ? Rat(0) : c_[i] / Rat(k + 1);
  }
  s.normalize();
  return s;
}

Series Series::exp_positive() const {
  if (!is_zero_upto_trunc() && valuation() < 1)
    fail(Err::InvalidValuation, "exp needs a series without constant term");
  Series acc = constant(tag_, Rat(1), trunc_);
  Series p = constant(tag_, Rat(1), trunc_);
  for (long k = 1; k <= trunc_; ++k) {
    p = p * *this;
    if (p.is_zero_upto_trunc()) break;
    acc = acc + p.scaled(factorial(k).inv());
  }
  return acc;
}

Series Series::log1p() const {
  if (!is_zero_upto_trunc() && valuation() < 1)
    fail(Err::InvalidValuation, "log1p needs a series without constant term");
  Series acc = zero(tag_, trunc_);
  Series p = constant(tag_, Rat(1), trunc_);
  for (long k = 1; k <= trunc_; ++k) {
    p = p * *this;
    if (p.is_zero_upto_trunc()) break;
    acc = acc + p.scaled(Rat(k % 2 == 1 ? 1 : -1, k));
  }
  return acc;
}

bool Series::operator==(const Series& o) const {
  if (tag_ != o.tag_) return false;
  long hi = std::min(trunc_, o.trunc_);
  long lo = std::min(lo_, o.lo_);
  for (long k = lo; k <= hi; ++k)
    if (coeff(k) != o.coeff(k)) return false;
  return true;
}

std::string Series::str() const {
  std::ostringstream os;
  bool first = true;
  for (long k = lo_; k <= trunc_; ++k) {
    const Rat& c = coeff(k);
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    os << c.str() << "*" << tag_ << "^" << k;
    first = false;
  }
  if (first) os << "0";
  os << " + O(" << tag_ << "^" << (trunc_ + 1) << ")";
  return os.str();
}

}  // namespace logtr
