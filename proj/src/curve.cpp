#include "logtr/curve.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "logtr/logvalue.hpp"

namespace logtr {

namespace {

RatFun log_pole(const Rat& b, const Rat& w) { return RatFun::pole(b, 1, w); }

RatFun dx_of(const CurveSpec& s) {
  RatFun d = s.x_rat.derivative();
  for (auto& lt : s.x_logs) d = d + log_pole(lt.point, lt.weight);
  return d;
}

RatFun dy_of(const CurveSpec& s) {
  RatFun d = s.y_rat.derivative();
  for (auto& lt : s.y_logs) d = d + log_pole(lt.point, lt.weight);
  return d;
}

bool has_log_at(const std::vector<LogTerm>& logs, const Rat& a) {
  for (auto& lt : logs)
    if (lt.point == a) return true;
  return false;
}

Rat log_weight_at(const std::vector<LogTerm>& logs, const Rat& a) {
  for (auto& lt : logs)
    if (lt.point == a) return lt.weight;
  return Rat(0);
}

// value of x at a finite point where x is regular, log constants kept formal
LogValue x_value_at(const CurveSpec& s, const Rat& a) {
  LogValue v(s.x_rat.eval(a));
  for (auto& lt : s.x_logs) {
    v += LogValue::log_term(a - lt.point, lt.weight);
    v -= LogValue::log_term(lt.norm, lt.weight);
  }
  return v;
}

}  // namespace

std::string AdmissReport::str() const {
  std::ostringstream os;
  for (auto& c : checks)
    os << (c.pass ? "pass" : "FAIL") << "  " << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]")
       << "\n";
  os << (admissible ? "admissible" : (unsupported ? "unsupported" : "not admissible")) << "\n";
  return os.str();
}

AdmissReport Curve::validate(const CurveSpec& spec) {
  AdmissReport rep;
  bool hard_fail = false, soft_fail = false;
  auto check = [&](const std::string& name, bool ok, const std::string& detail, bool soft = false) {
    rep.checks.push_back({name, ok, ok ? "" : detail});
    if (!ok) (soft ? soft_fail : hard_fail) = true;
    return ok;
  };

  // schema-level distinctness of log points
  auto distinct = [](const std::vector<LogTerm>& v) {
    std::set<Rat> s;
    for (auto& lt : v)
      if (!s.insert(lt.point).second) return false;
    return true;
  };
  bool weights_ok = true, norms_ok = true;
  for (auto& lt : spec.x_logs) {
    if (lt.weight.is_zero()) weights_ok = false;
    if (lt.norm.is_zero()) norms_ok = false;
  }
  for (auto& lt : spec.y_logs) {
    if (lt.weight.is_zero()) weights_ok = false;
    if (lt.norm.is_zero()) norms_ok = false;
  }
  check("log-points-distinct", distinct(spec.x_logs) && distinct(spec.y_logs),
        "duplicate log point within a log list");
  check("log-weights-nonzero", weights_ok && norms_ok, "zero log weight or normalization");
  if (hard_fail) {
    rep.admissible = false;
    return rep;
  }

  RatFun dx = dx_of(spec);
  RatFun dy = dy_of(spec);
  if (!check("dx-nonzero", !dx.is_zero(), "dx vanishes identically")) {
    rep.admissible = false;
    return rep;
  }

  // ramification points: zeros of dx
  RootList roots = rational_roots(dx.num());
  bool rational_split = roots.residual.degree() <= 0;
  check("ramification-rational", rational_split,
        "dx has zeros with no rational coordinate (factor " + roots.residual.str() + ")", true);
  bool simple = true;
  std::vector<Rat> ram_pts;
  for (auto& [r, m] : roots.roots) {
    ram_pts.push_back(r);
    if (m > 1) simple = false;
  }
  check("ramification-simple", simple, "dx has a multiple zero");

  long inf_ord = dx.order_at_infinity() - 2;  // order of dx dz at infinity
  check("no-ramification-at-infinity", inf_ord <= 0, "dx has a zero at infinity", true);

  bool dy_reg = true, dy_nonzero_at_ram = true;
  for (auto& p : ram_pts) {
    if (dy.is_zero()) {
      dy_nonzero_at_ram = false;
    } else if (!dy.defined_at(p)) {
      dy_reg = false;
    } else if (dy.eval(p).is_zero()) {
      dy_nonzero_at_ram = false;
    }
  }
  check("dy-regular-at-ramification", dy_reg, "dy has a pole at a ramification point");
  if (!dy.is_zero()) {
    Poly g = Poly::gcd(dx.num(), dy.num());
    check("zero-loci-disjoint", g.degree() <= 0 && dy_nonzero_at_ram, "dx and dy share a zero");
  } else {
    check("zero-loci-disjoint", dy_nonzero_at_ram || ram_pts.empty(),
          "dy vanishes identically at a ramification point");
  }

  // square-root normalization of x - x(p) at ramification points
  bool sqrt_ok = true;
  std::string sqrt_detail;
  for (auto& p : ram_pts) {
    if (!spec.x_rat.defined_at(p)) { sqrt_ok = false; sqrt_detail = "x singular at its own ramification point"; break; }
    // leading coefficient of x - x(p): from the derivative, dx = 2c t + ...
    Rat c = dx.derivative().eval(p) / Rat(2);
    if (!c.sqrt_exact()) {
      sqrt_ok = false;
      sqrt_detail = "x''(p)/2 = " + c.str() + " has no rational square root at p = " + p.str();
      break;
    }
  }
  check("sqrt-normalization", sqrt_ok, sqrt_detail, true);

  if (!spec.declared_ramification.empty()) {
    std::set<Rat> declared(spec.declared_ramification.begin(), spec.declared_ramification.end());
    std::set<Rat> found(ram_pts.begin(), ram_pts.end());
    check("declared-ramification", declared == found, "declared ramification list disagrees");
  }

  hard_fail = false;
  soft_fail = false;
  for (auto& c : rep.checks) {
    if (c.pass) continue;
    if (c.name == "ramification-rational" || c.name == "no-ramification-at-infinity" ||
        c.name == "sqrt-normalization")
      soft_fail = true;
    else
      hard_fail = true;
  }
  rep.admissible = !hard_fail && !soft_fail;
  rep.unsupported = !hard_fail && soft_fail;
  return rep;
}

Curve Curve::analyze(const CurveSpec& spec) {
  AdmissReport rep = validate(spec);
  if (!rep.admissible) {
    for (auto& c : rep.checks) {
      if (c.pass || c.name == "sqrt-normalization") continue;
      Err kind = Err::Unsupported;
      if (c.name == "ramification-simple") kind = Err::NonSimpleRamification;
      else if (c.name == "dy-regular-at-ramification") kind = Err::DySingularAtRamification;
      else if (c.name == "zero-loci-disjoint") kind = Err::SharedZeroLoci;
      else if (c.name == "ramification-rational") kind = Err::IrrationalRamification;
      else if (c.name == "no-ramification-at-infinity") kind = Err::RamificationAtInfinity;
      else if (c.name == "log-points-distinct") kind = Err::VitalAtLogCutConflict;
      else if (c.name == "log-weights-nonzero") kind = Err::ParseError;
      fail(kind, c.name + (c.detail.empty() ? "" : ": " + c.detail));
    }
    // only the sqrt normalization failed: proceed, y_prime stays empty
  }

  Curve c;
  c.spec_ = spec;
  c.dx_ = dx_of(spec);
  c.dy_ = dy_of(spec);

  RootList roots = rational_roots(c.dx_.num());
  for (auto& [p, m] : roots.roots) {
    RamPoint rp;
    rp.p = p;
    rp.x_lead = c.dx_.derivative().eval(p) / Rat(2);
    if (auto s = rp.x_lead.sqrt_exact()) {
      Rat root = s->sign() < 0 ? -*s : *s;
      rp.y_prime = c.dy_.eval(p) / root;
    }
    c.ram_.push_back(std::move(rp));
  }
  std::sort(c.ram_.begin(), c.ram_.end(), [](const RamPoint& a, const RamPoint& b) { return a.p < b.p; });

  for (auto& lt : spec.y_logs) {
    const Rat& a = lt.point;
    bool dy_simple = spec.y_rat.is_zero() || spec.y_rat.defined_at(a);
    bool dx_regular = spec.x_rat.defined_at(a) && !has_log_at(spec.x_logs, a);
    if (dy_simple && dx_regular) {
      VitalPoint v;
      v.a = a;
      v.weight = lt.weight;
      v.x_prime = c.dx_.eval(a);
      v.norm = lt.norm;
      if (v.x_prime.is_zero()) fail(Err::Internal, "dx vanishes at a vital point");
      c.vital_.push_back(std::move(v));
    }
  }
  std::sort(c.vital_.begin(), c.vital_.end(),
            [](const VitalPoint& a, const VitalPoint& b) { return a.a < b.a; });

  // basepoint o: smallest nonnegative integer clear of all special points,
  // with x(o) structurally distinct from x at finite poles and ram points
  if (spec.basepoint) {
    c.basepoint_ = *spec.basepoint;
  } else {
    std::set<Rat> avoid;
    for (auto& r : c.ram_) avoid.insert(r.p);
    for (auto& lt : spec.x_logs) avoid.insert(lt.point);
    for (auto& lt : spec.y_logs) avoid.insert(lt.point);
    for (auto& poly : {c.dx_.den(), c.dy_.den(), spec.x_rat.den(), spec.y_rat.den()}) {
      if (poly.degree() >= 1) {
        RootList pr = rational_roots(poly);
        for (auto& [p, m] : pr.roots) avoid.insert(p);
      }
    }
    std::vector<LogValue> xvals;
    for (auto& r : c.ram_) xvals.push_back(x_value_at(spec, r.p));
    for (auto& v : c.vital_) xvals.push_back(x_value_at(spec, v.a));
    for (long k = 0;; ++k) {
      Rat cand(k);
      if (avoid.count(cand)) continue;
      LogValue xv = x_value_at(spec, cand);
      bool clash = false;
      for (auto& other : xvals) clash |= (xv == other);
      if (!clash) {
        c.basepoint_ = cand;
        break;
      }
      if (k > 1000) fail(Err::Internal, "no basepoint found");
    }
  }
  return c;
}

Series Curve::x_minus_x_at(const Rat& a, long T) const {
  if (!spec_.x_rat.defined_at(a) || has_log_at(spec_.x_logs, a))
    fail(Err::Internal, "x is singular at " + a.str());
  Series s = spec_.x_rat.series_at(a, var(), T);
  s = s + Series::constant(var(), -s.coeff(0), T);
  for (auto& lt : spec_.x_logs) {
    Series frac = Series::identity(var(), T).scaled((a - lt.point).inv());
    s = s + frac.log1p().scaled(lt.weight);
  }
  return s;
}

Series Curve::xprime_at(const Rat& a, long T) const { return dx_.series_at(a, var(), T); }

Series Curve::dyfun_at(const Rat& a, long T) const { return dy_.series_at(a, var(), T); }

Series Curve::y_loc_at(const Rat& a, long T) const {
  if (!spec_.y_rat.is_zero() && !spec_.y_rat.defined_at(a))
    fail(Err::Internal, "y_rat singular at " + a.str());
  if (has_log_at(spec_.y_logs, a)) fail(Err::Internal, "y has a log at " + a.str());
  Series s = spec_.y_rat.is_zero() ? Series::zero(var(), T) : spec_.y_rat.series_at(a, var(), T);
  for (auto& lt : spec_.y_logs) {
    Series frac = Series::identity(var(), T).scaled((a - lt.point).inv());
    s = s + frac.log1p().scaled(lt.weight);
  }
  return s;
}

Series Curve::zeta_at(size_t i, long T) const {
  return x_minus_x_at(ram_[i].p, T + 2).sqrt_even().truncated(T);
}

// sigma solves x(sigma(t)) = x(t) with sigma'(0) = -1; the coefficient
// equations are linear over the rationals, no square root enters.
Series Curve::sigma_at(size_t i, long T) const {
  Series xm = x_minus_x_at(ram_[i].p, T + 2);
  const Rat a2 = xm.coeff(2);
  Series sigma = Series::monomial(var(), 1, Rat(-1), T + 1);
  for (long m = 2; m <= T; ++m) {
    Series diff = xm.compose(sigma) - xm;
    Rat cm = diff.coeff(m + 1) / (Rat(2) * a2);
    if (!cm.is_zero()) sigma = sigma + Series::monomial(var(), m, cm, T + 1);
  }
  Series check = (xm.compose(sigma) - xm).truncated(T + 1);
  if (!check.is_zero_upto_trunc())
    fail(Err::Internal, "involution postcondition failed at p = " + ram_[i].p.str());
  return sigma.truncated(T);
}

RatFun Curve::ytilde_dx() const { return spec_.y_rat * dx_; }

std::vector<SpherePt> Curve::ytilde_dx_poles() const {
  std::vector<SpherePt> pts;
  RatFun f = ytilde_dx();
  if (f.is_zero()) return pts;
  if (f.den().degree() >= 1) {
    RootList roots = rational_roots(f.den());
    if (roots.residual.degree() > 0)
      fail(Err::Unsupported, "y~dx has an irrational singular point");
    for (auto& [p, m] : roots.roots) pts.push_back(SpherePt::at(p));
  }
  if (f.order_at_infinity() - 2 < 0) pts.push_back(SpherePt::inf());
  return pts;
}

Series Curve::form_series(const RatFun& coeff, const SpherePt& p, const std::string& tag,
                          long T) const {
  if (coeff.is_zero()) return Series::zero(tag, T);
  if (!p.infinite) return coeff.series_at(p.z, tag, T);
  return -coeff.series_at_infinity(tag, T + 2).shifted(-2).truncated(T);
}

std::pair<Series, LocalCoordKind> Curve::local_coordinate(const SpherePt& a, long T) const {
  const std::string tag = a.infinite ? "w" : var();
  if (!a.infinite) {
    const Rat& z0 = a.z;
    bool x_rat_pole = !spec_.x_rat.defined_at(z0);
    Rat xi = log_weight_at(spec_.x_logs, z0);
    if (!x_rat_pole && xi.is_zero()) {
      // pole of dy with x regular
      return {x_minus_x_at(z0, T), LocalCoordKind::XShift};
    }
    if (x_rat_pole) {
      if (!xi.is_zero())
        fail(Err::UnsupportedLocalModel,
             "x has both a pole and a log at " + z0.str());
      long d = -spec_.x_rat.order_at(z0);
      Series x_ser = spec_.x_rat.series_at(z0, tag, T + d);
      for (auto& lt : spec_.x_logs) {
        Series frac = Series::identity(tag, T + d).scaled((z0 - lt.point).inv());
        x_ser = x_ser + frac.log1p().scaled(lt.weight);
      }
      return {x_ser.pow_int(-1).nth_root(d).truncated(T), LocalCoordKind::InverseRoot};
    }
    // simple pole of dx with residue xi at z0
    Series reg = spec_.x_rat.is_zero() ? Series::zero(tag, T) : spec_.x_rat.series_at(z0, tag, T);
    if (!spec_.x_rat.is_zero()) reg = reg + Series::constant(tag, -reg.coeff(0), T);
    for (auto& lt : spec_.x_logs) {
      if (lt.point == z0) continue;
      Series frac = Series::identity(tag, T).scaled((z0 - lt.point).inv());
      reg = reg + frac.log1p().scaled(lt.weight);
    }
    Series za = Series::identity(tag, T) * reg.scaled(xi.inv()).exp_positive();
    return {za, LocalCoordKind::ExpOverResidue};
  }

  // infinity
  long n = spec_.x_rat.is_zero() ? -1000000 : -spec_.x_rat.order_at_infinity();
  Rat xi_sum(0);
  for (auto& lt : spec_.x_logs) xi_sum += lt.weight;
  if (n >= 1) {
    if (!xi_sum.is_zero())
      fail(Err::UnsupportedLocalModel, "x has both a pole and a log at infinity");
    Series x_ser = spec_.x_rat.series_at_infinity(tag, T + n);
    for (auto& lt : spec_.x_logs) {
      Series frac = Series::identity(tag, T + n).scaled(-lt.point);
      x_ser = x_ser + frac.log1p().scaled(lt.weight);
    }
    return {x_ser.pow_int(-1).nth_root(n).truncated(T), LocalCoordKind::InverseRoot};
  }
  if (!xi_sum.is_zero()) {
    // x ~ (sum xi_b) * (-log w): simple pole of dx at infinity
    Rat x_inf = -xi_sum;  // residue of dx at infinity
    Series reg = Series::zero(tag, T);
    if (!spec_.x_rat.is_zero()) {
      reg = spec_.x_rat.series_at_infinity(tag, T);
      reg = reg + Series::constant(tag, -reg.coeff(0), T);
    }
    for (auto& lt : spec_.x_logs) {
      Series frac = Series::identity(tag, T).scaled(-lt.point);
      reg = reg + frac.log1p().scaled(lt.weight);
    }
    Series za = Series::identity(tag, T) * reg.scaled(x_inf.inv()).exp_positive();
    return {za, LocalCoordKind::ExpOverResidue};
  }
  // x regular at infinity: pole of dy only
  Series x_ser = Series::zero(tag, T);
  if (!spec_.x_rat.is_zero()) {
    x_ser = spec_.x_rat.series_at_infinity(tag, T);
    x_ser = x_ser + Series::constant(tag, -x_ser.coeff(0), T);
  }
  for (auto& lt : spec_.x_logs) {
    Series frac = Series::identity(tag, T).scaled(-lt.point);
    x_ser = x_ser + frac.log1p().scaled(lt.weight);
  }
  return {x_ser, LocalCoordKind::XShift};
}

TimesData Curve::extract_times(const SpherePt& a, long extra_order) const {
  RatFun f = ytilde_dx();
  TimesData td;
  td.location = a;
  long P;  // pole order of y~dx at a
  if (f.is_zero()) {
    P = 0;
  } else if (a.infinite) {
    P = -(f.order_at_infinity() - 2);
  } else {
    P = -f.order_at(a.z);
  }
  if (P < 0) P = 0;
  const std::string tag = a.infinite ? "w" : var();
  long T = P + 4 + extra_order;
  auto [za, kind] = local_coordinate(a, T);
  td.kind = kind;
  td.experimental = (kind == LocalCoordKind::ExpOverResidue);
  td.local_degree = 1;
  if (kind == LocalCoordKind::InverseRoot) {
    td.local_degree = a.infinite ? -spec_.x_rat.order_at_infinity() : -spec_.x_rat.order_at(a.z);
  } else if (kind == LocalCoordKind::ExpOverResidue) {
    td.local_degree = 0;
  }
  td.order = std::max(0L, P - 1);
  Series fser = form_series(f, a, tag, T);
  td.monodromy = fser.residue();
  for (long k = 1; k <= td.order; ++k) {
    Rat rk = (za.pow_int(k) * fser).residue();
    td.irregular.push_back(-rk / Rat(k));
  }
  return td;
}

std::vector<TimesData> Curve::all_times() const {
  std::vector<TimesData> out;
  for (auto& p : ytilde_dx_poles()) out.push_back(extract_times(p));
  return out;
}

RatFun Curve::b_form(const SpherePt& a, long k, const Rat& oprime) const {
  if (k == 0) {
    if (a.infinite) return -RatFun::pole(oprime, 1, Rat(1));
    return RatFun::pole(a.z, 1, Rat(1)) - RatFun::pole(oprime, 1, Rat(1));
  }
  const std::string tag = a.infinite ? "w" : var();
  long T = k + 2;
  auto [za, kind] = local_coordinate(a, T);
  Series zk = za.pow_int(-k);
  RatFun acc;
  for (long j = 0; j + 1 <= k; ++j) {
    Rat c = zk.coeff(-1 - j);
    if (c.is_zero()) continue;
    if (a.infinite) {
      std::vector<Rat> cv(j + 1, Rat(0));
      cv[j] = c * Rat(j + 1);
      acc = acc + RatFun(Poly(std::move(cv)), Poly(Rat(1)));
    } else {
      acc = acc - RatFun::pole(a.z, j + 2, c * Rat(j + 1));
    }
  }
  return acc;
}

std::pair<RatFun, RatFun> Curve::decomposition_roundtrip(const Rat& oprime) const {
  RatFun lhs = ytilde_dx();
  RatFun rhs;
  for (auto& td : all_times()) {
    for (long k = 1; k <= td.order; ++k) {
      const Rat& t = td.irregular[k - 1];
      if (!t.is_zero()) rhs = rhs + b_form(td.location, k, oprime).scaled(t);
    }
    if (!td.monodromy.is_zero())
      rhs = rhs + b_form(td.location, 0, oprime).scaled(td.monodromy);
  }
  return {lhs, rhs};
}

long Curve::default_truncation(long h, long n) const {
  if (spec_.truncation_hint) return *spec_.truncation_hint;
  return 6 * h + 2 * n + 6;
}

CurveSpec sw_half_curve(const std::vector<Rat>& a, const std::vector<Rat>& y, const Rat& lambda) {
  if (a.size() != y.size()) fail(Err::Internal, "point/weight count mismatch");
  CurveSpec s;
  s.x_rat = RatFun::x();
  s.y_rat = RatFun(lambda);
  for (size_t i = 0; i < a.size(); ++i) s.y_logs.push_back({a[i], y[i], Rat(1)});
  return s;
}

CurveSpec strip_curve(const std::vector<Rat>& a, const std::vector<Rat>& y) {
  if (a.size() != y.size()) fail(Err::Internal, "point/weight count mismatch");
  CurveSpec s;
  s.x_rat = RatFun(Rat(0));
  s.x_logs.push_back({Rat(0), Rat(1), Rat(1)});
  s.y_rat = RatFun(Rat(0));
  // y = sum y_s log(1 - z/a_s) = sum y_s [log(z - a_s) - log(-a_s)]
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) fail(Err::Internal, "strip points must avoid the origin");
    s.y_logs.push_back({a[i], y[i], -a[i]});
  }
  return s;
}

CurveSpec airy_curve() {
  CurveSpec s;
  s.x_rat = RatFun(Poly(std::vector<Rat>{Rat(0), Rat(0), Rat(1)}), Poly(Rat(1)));
  s.y_rat = RatFun::x();
  return s;
}

CurveSpec mixed_curve() {
  CurveSpec s;
  s.x_rat = RatFun(Poly(std::vector<Rat>{Rat(0), Rat(0), Rat(1)}), Poly(Rat(1)));
  s.y_rat = RatFun::x();
  s.y_logs.push_back({Rat(3), Rat(1), Rat(1)});
  return s;
}

}  // namespace logtr
