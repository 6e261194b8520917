#include "logtr/poly.hpp"

#include <algorithm>
#include <sstream>

namespace logtr {

namespace {
const Rat kZero(0);
}

void Poly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::x() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

Poly Poly::linear(const Rat& root) { return Poly(std::vector<Rat>{-root, Rat(1)}); }

const Rat& Poly::coeff(long k) const {
  if (k < 0 || k >= static_cast<long>(c_.size())) return kZero;
  return c_[k];
}

const Rat& Poly::lead() const {
  if (c_.empty()) fail(Err::Internal, "lead of zero polynomial");
  return c_.back();
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& c : p.c_) c = -c;
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(c));
}

Poly Poly::scaled(const Rat& k) const {
  if (k.is_zero()) return Poly();
  Poly p = *this;
  for (auto& c : p.c_) c *= k;
  return p;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(Err::Internal, "polynomial division by zero");
  Poly r = a;
  std::vector<Rat> q;
  long db = b.degree();
  if (r.degree() >= db) q.assign(r.degree() - db + 1, Rat(0));
  while (!r.is_zero() && r.degree() >= db) {
    long k = r.degree() - db;
    Rat f = r.lead() / b.lead();
    q[k] = f;
    std::vector<Rat> sub(k + b.c_.size(), Rat(0));
    for (size_t i = 0; i < b.c_.size(); ++i) sub[k + i] = b.c_[i] * f;
    r = r - Poly(std::move(sub));
  }
  return {Poly(std::move(q)), r};
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rat> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return Poly(std::move(d));
}

Rat Poly::eval(const Rat& z) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::shifted_arg(const Rat& a) const {
  // Horner in (u + a)
  Poly acc;
  Poly u = Poly(std::vector<Rat>{a, Rat(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * u + Poly(*it);
  return acc;
}

Poly Poly::reversed() const {
  std::vector<Rat> c(c_.rbegin(), c_.rend());
  return Poly(std::move(c));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead().inv());
}

Series Poly::to_series(const std::string& tag, long trunc) const {
  if (trunc < 0) return Series::zero(tag, trunc);
  // degrees above trunc are genuinely known, but the Series window cannot
  // carry them; callers pick trunc at least the degree where that matters
  std::vector<Rat> c(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(c_.size(), trunc + 1));
  c.resize(trunc + 1, Rat(0));
  return Series::from_coeffs(tag, 0, std::move(c), trunc);
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long k = degree(); k >= 0; --k) {
    const Rat& c = coeff(k);
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    os << c.str();
    if (k > 0) os << "*z^" << k;
    first = false;
  }
  return os.str();
}

namespace {

std::vector<mpz_class> divisors_bounded(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  std::vector<mpz_class> divs;
  if (n == 0) return divs;
  if (!n.fits_ulong_p())
    fail(Err::Unsupported, "rational root search bound exceeded for " + n_in.get_str());
  unsigned long v = n.get_ui();
  for (unsigned long d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      divs.push_back(mpz_class(d));
      if (v / d != d) divs.push_back(mpz_class(v / d));
    }
  }
  return divs;
}

}  // namespace

RootList rational_roots(const Poly& p) {
  RootList out;
  if (p.is_zero()) fail(Err::Internal, "roots of zero polynomial");
  Poly q = p;
  // factor out z^k
  long zmult = 0;
  while (!q.is_zero() && q.coeff(0).is_zero()) {
    std::vector<Rat> c(q.coeffs().begin() + 1, q.coeffs().end());
    q = Poly(std::move(c));
    ++zmult;
  }
  if (zmult > 0) out.roots.emplace_back(Rat(0), zmult);
  if (q.degree() <= 0) {
    out.residual = q;
    return out;
  }
  // scale to integer coefficients
  mpz_class den_lcm(1);
  for (const Rat& c : q.coeffs()) {
    mpz_class d = c.den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    den_lcm = den_lcm / g * d;
  }
  std::vector<mpz_class> ic(q.coeffs().size());
  for (size_t i = 0; i < ic.size(); ++i)
    ic[i] = q.coeffs()[i].num() * (den_lcm / q.coeffs()[i].den());
  mpz_class content(0);
  for (auto& c : ic) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  if (content > 1)
    for (auto& c : ic) c /= content;
  auto p_divs = divisors_bounded(ic.front());
  auto q_divs = divisors_bounded(ic.back());
  std::vector<Rat> candidates;
  for (const auto& pn : p_divs)
    for (const auto& qd : q_divs) {
      Rat r(mpq_class(pn, qd));
      candidates.push_back(r);
      candidates.push_back(-r);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const Rat& r : candidates) {
    long mult = 0;
    while (!q.is_zero() && q.degree() >= 1 && q.eval(r).is_zero()) {
      q = Poly::divmod(q, Poly::linear(r)).first;
      ++mult;
    }
    if (mult > 0) out.roots.emplace_back(r, mult);
    if (q.degree() < 1) break;
  }
  out.residual = q;
  std::sort(out.roots.begin(), out.roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(Err::Internal, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(Rat(1));
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = Poly::divmod(num_, g).first;
    den_ = Poly::divmod(den_, g).first;
  }
  Rat lead = den_.lead();
  if (!lead.is_one()) {
    den_ = den_.scaled(lead.inv());
    num_ = num_.scaled(lead.inv());
  }
}

RatFun RatFun::pole(const Rat& a, long k, const Rat& coeff) {
  Poly den(Rat(1));
  Poly lin = Poly::linear(a);
  for (long i = 0; i < k; ++i) den = den * lin;
  return RatFun(Poly(coeff), den);
}

RatFun RatFun::operator-() const {
  RatFun f = *this;
  f.num_ = -f.num_;
  return f;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) fail(Err::Internal, "division by zero rational function");
  return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

RatFun RatFun::scaled(const Rat& k) const { return RatFun(num_.scaled(k), den_); }

RatFun RatFun::derivative() const {
  return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

bool RatFun::defined_at(const Rat& z) const { return !den_.eval(z).is_zero(); }

Rat RatFun::eval(const Rat& z) const {
  Rat d = den_.eval(z);
  if (d.is_zero()) fail(Err::EvaluationAtPole, "evaluation at pole z = " + z.str());
  return num_.eval(z) / d;
}

long RatFun::order_at(const Rat& a) const {
  if (is_zero()) fail(Err::Internal, "order of zero function");
  auto mult = [&](const Poly& p) {
    long m = 0;
    Poly q = p;
    while (!q.is_zero() && q.eval(a).is_zero()) {
      q = Poly::divmod(q, Poly::linear(a)).first;
      ++m;
    }
    return m;
  };
  return mult(num_) - mult(den_);
}

long RatFun::order_at_infinity() const {
  if (is_zero()) fail(Err::Internal, "order of zero function");
  return den_.degree() - num_.degree();
}

Series RatFun::series_at(const Rat& a, const std::string& tag, long trunc) const {
  Poly n = num_.shifted_arg(a);
  Poly d = den_.shifted_arg(a);
  long vd = 0;
  while (d.coeff(vd).is_zero()) ++vd;
  long pad = trunc + 2 * vd + 2;  // the unit part of 1/d is only known to pad - 2 vd
  Series sn = n.to_series(tag, pad);
  Series sd = d.to_series(tag, pad);
  return (sn / sd).truncated(trunc);
}

Series RatFun::series_at_infinity(const std::string& tag, long trunc) const {
  if (is_zero()) return Series::zero(tag, trunc);
  // f(1/w) = w^{deg den - deg num} rev(num)(w) / rev(den)(w)
  Poly rn = num_.reversed();
  Poly rd = den_.reversed();
  long shift = den_.degree() - num_.degree();
  long vd = 0;
  while (rd.coeff(vd).is_zero()) ++vd;
  long pad = trunc + 2 * vd + std::abs(shift) + 2;
  Series sn = rn.to_series(tag, pad);
  Series sd = rd.to_series(tag, pad);
  return ((sn / sd).shifted(shift)).truncated(trunc);
}

std::string RatFun::str() const {
  if (is_polynomial()) return num_.scaled(den_.coeff(0).inv()).str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

}  // namespace logtr
