#include "logtr/polesum.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace logtr {

void PoleSum::add_term(const Term& t, const Rat& c) {
  if (static_cast<long>(t.size()) != arity_)
    fail(Err::Internal, "term arity mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(t);
  if (it == terms_.end()) {
    terms_.emplace(t, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PoleSum& PoleSum::operator+=(const PoleSum& o) {
  if (arity_ != o.arity_) fail(Err::Internal, "pole sum arity mismatch");
  for (auto& [t, c] : o.terms_) add_term(t, c);
  return *this;
}

PoleSum& PoleSum::operator-=(const PoleSum& o) {
  if (arity_ != o.arity_) fail(Err::Internal, "pole sum arity mismatch");
  for (auto& [t, c] : o.terms_) add_term(t, -c);
  return *this;
}

PoleSum PoleSum::scaled(const Rat& c) const {
  PoleSum r(arity_);
  if (c.is_zero()) return r;
  for (auto& [t, co] : terms_) r.terms_.emplace(t, co * c);
  return r;
}

Rat PoleSum::eval(const std::vector<Rat>& points) const {
  if (static_cast<long>(points.size()) != arity_)
    fail(Err::Internal, "evaluation arity mismatch");
  Rat acc(0);
  for (auto& [t, c] : terms_) {
    Rat v = c;
    for (long i = 0; i < arity_; ++i) {
      Rat d = points[i] - t[i].pole;
      if (d.is_zero()) fail(Err::EvaluationAtPole, "evaluation point hits pole " + t[i].pole.str());
      v *= d.pow(-t[i].order);
    }
    acc += v;
  }
  return acc;
}

bool PoleSum::is_symmetric() const {
  if (arity_ <= 1) return true;
  for (auto& [t, c] : terms_) {
    for (long i = 0; i + 1 < arity_; ++i) {
      Term s = t;
      std::swap(s[i], s[i + 1]);
      auto it = terms_.find(s);
      if (it == terms_.end() || it->second != c) return false;
    }
  }
  return true;
}

bool PoleSum::is_residue_free() const {
  for (auto& [t, c] : terms_)
    for (auto& f : t)
      if (f.order <= 1) return false;
  return true;
}

long PoleSum::max_order_at(const Rat& pole) const {
  long m = 0;
  for (auto& [t, c] : terms_)
    for (auto& f : t)
      if (f.pole == pole) m = std::max(m, f.order);
  return m;
}

std::vector<Rat> PoleSum::pole_locations() const {
  std::set<Rat> s;
  for (auto& [t, c] : terms_)
    for (auto& f : t) s.insert(f.pole);
  return std::vector<Rat>(s.begin(), s.end());
}

RatFun PoleSum::to_ratfun() const {
  if (arity_ != 1) fail(Err::Internal, "to_ratfun needs arity 1");
  RatFun acc;
  for (auto& [t, c] : terms_) acc = acc + RatFun::pole(t[0].pole, t[0].order, c);
  return acc;
}

std::string PoleSum::str_text(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [t, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (long i = 0; i < arity_; ++i) {
      std::string v = arity_ == 1 ? var : var + std::to_string(i + 1);
      os << " * d" << v << "/(" << v;
      if (t[i].pole.sign() >= 0)
        os << "-" << t[i].pole.str();
      else
        os << "+" << (-t[i].pole).str();
      os << ")^" << t[i].order;
    }
  }
  return os.str();
}

std::string PoleSum::str_latex(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [t, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (c.den() == 1) {
      os << c.num().get_str();
    } else {
      os << "\\frac{" << c.num().get_str() << "}{" << c.den().get_str() << "}";
    }
    for (long i = 0; i < arity_; ++i) {
      std::string v = arity_ == 1 ? var : var + "_{" + std::to_string(i + 1) + "}";
      os << "\\,\\frac{d" << v << "}{(" << v;
      if (t[i].pole.sign() >= 0)
        os << "-" << t[i].pole.str();
      else
        os << "+" << (-t[i].pole).str();
      os << ")^{" << t[i].order << "}}";
    }
  }
  return os.str();
}

PoleIntegral::PoleIntegral(const PoleSum& w, const Rat& basepoint) : const_(0) {
  if (w.arity() != 1) fail(Err::Internal, "integral needs arity 1");
  for (auto& [t, c] : w.terms()) {
    long k = t[0].order;
    if (k <= 1) fail(Err::ResidueObstruction, "pole sum carries a residue");
    parts_.emplace_back(Factor{t[0].pole, k - 1}, -c / Rat(k - 1));
  }
  Rat at_base(0);
  for (auto& [f, c] : parts_) {
    Rat d = basepoint - f.pole;
    if (d.is_zero()) fail(Err::EvaluationAtPole, "basepoint hits a pole");
    at_base += c * d.pow(-f.order);
  }
  const_ = -at_base;
}

Rat PoleIntegral::eval(const Rat& z) const {
  Rat acc = const_;
  for (auto& [f, c] : parts_) {
    Rat d = z - f.pole;
    if (d.is_zero()) fail(Err::EvaluationAtPole, "evaluation at pole");
    acc += c * d.pow(-f.order);
  }
  return acc;
}

Rat PoleIntegral::eval_at_infinity() const { return const_; }

Series PoleIntegral::series_at(const Rat& a, const std::string& tag, long trunc) const {
  Series acc = Series::constant(tag, const_, trunc);
  for (auto& [f, c] : parts_) {
    Series piece;
    if (f.pole == a) {
      piece = Series::monomial(tag, -f.order, Rat(1), trunc);
    } else {
      piece = Series::identity(tag, trunc).plus_const(a - f.pole).pow_int(-f.order);
    }
    acc = acc + piece.scaled(c);
  }
  return acc;
}

}  // namespace logtr
