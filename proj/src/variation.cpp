#include "logtr/variation.hpp"

#include <algorithm>
#include <set>

namespace logtr {

namespace {

Rat ratfun_eval_or(const RatFun& f, const Rat& z) { return f.is_zero() ? Rat(0) : f.eval(z); }

// antiderivative value of c/(z-p)^k between b and a (k >= 2; vanishes at inf)
Rat pole_antider_between(const Factor& f, const Rat& c, const SpherePt& hi, const SpherePt& lo) {
  auto value_at = [&](const SpherePt& pt) {
    if (pt.infinite) return Rat(0);
    return -c * (pt.z - f.pole).pow(1 - f.order) / Rat(f.order - 1);
  };
  return value_at(hi) - value_at(lo);
}

// expansion of slot 0 of w at infinity, in w = 1/z, including the dz factor
std::map<Term, Series> expand_slot_infinity(const PoleSum& w, const std::string& tag, long T) {
  std::map<Term, Series> out;
  Series wvar = Series::identity(tag, T);
  for (auto& [t, c] : w.terms()) {
    // 1/(z - p)^k dz with z = 1/w:  (w/(1 - p w))^k * (-1/w^2) dw
    const Factor& f = t[0];
    Series base = wvar * wvar.scaled(-f.pole).plus_const(Rat(1)).pow_int(-1);
    Series ser = base.pow_int(f.order).shifted(-2).scaled(-c);
    Term rest(t.begin() + 1, t.end());
    auto it = out.find(rest);
    if (it == out.end())
      out.emplace(std::move(rest), std::move(ser));
    else
      it->second = it->second + ser;
  }
  return out;
}

// y-series at the vital point a_r without its own log singularity
Series y_regular_series_at(const Curve& c, const Rat& a, long T) {
  const CurveSpec& spec = c.spec();
  Series s = spec.y_rat.is_zero() ? Series::zero(c.var(), T) : spec.y_rat.series_at(a, c.var(), T);
  for (auto& lt : spec.y_logs) {
    if (lt.point == a) continue;
    Series frac = Series::identity(c.var(), T).scaled((a - lt.point).inv());
    s = s + frac.log1p().scaled(lt.weight);
  }
  return s;
}

}  // namespace

std::string DeformationSpec::str() const {
  switch (kind) {
    case DeformKind::IrregularTime:
      return "t[" + a.str() + "," + std::to_string(k) + "]";
    case DeformKind::MonodromyPair:
      return "mono[" + a.str() + "-" + b.str() + "]";
    case DeformKind::VitalPosition:
      return "a[" + std::to_string(vital_index) + "]";
  }
  return "?";
}

CurveSpec deform_curve(const Curve& base, const DeformationSpec& d, const Rat& t) {
  CurveSpec spec = base.spec();
  if (d.kind == DeformKind::VitalPosition) {
    const Rat& a = base.vital()[d.vital_index].a;
    Rat moved = a + t;
    std::set<Rat> others;
    for (auto& lt : spec.y_logs)
      if (lt.point != a) others.insert(lt.point);
    for (auto& lt : spec.x_logs) others.insert(lt.point);
    for (auto& r : base.ram()) others.insert(r.p);
    if (others.count(moved))
      fail(Err::CollisionOfSpecialPoints, "moved vital point hits another special point");
    for (auto& lt : spec.y_logs)
      if (lt.point == a) lt.point = moved;
    return spec;
  }
  RatFun omega_form;
  if (d.kind == DeformKind::IrregularTime) {
    omega_form = base.b_form(d.a, d.k, base.basepoint());
  } else {
    // o' cancels between the two monodromy legs
    Rat oprime = base.basepoint() + Rat(1000003);
    omega_form = base.b_form(d.a, 0, oprime) - base.b_form(d.b, 0, oprime);
  }
  spec.y_rat = spec.y_rat + omega_form.scaled(t) / base.dx();
  return spec;
}

void validate_deformation(const Curve& base, const DeformationSpec& d, const Rat& probe) {
  Curve moved = Curve::analyze(deform_curve(base, d, probe));
  if (moved.ram().size() != base.ram().size())
    fail(Err::DeformationBreaksStructure, "ramification set changed");
  for (size_t i = 0; i < base.ram().size(); ++i)
    if (moved.ram()[i].p != base.ram()[i].p)
      fail(Err::DeformationBreaksStructure, "ramification points moved");
  if (moved.vital().size() != base.vital().size())
    fail(Err::DeformationBreaksStructure, "vital set changed");
  for (size_t s = 0; s < base.vital().size(); ++s) {
    const VitalPoint& b = base.vital()[s];
    const VitalPoint& m = moved.vital()[s];
    Rat expected = b.a;
    if (d.kind == DeformKind::VitalPosition && d.vital_index == s) expected = b.a + probe;
    if (m.a != expected || m.weight != b.weight)
      fail(Err::DeformationBreaksStructure, "vital data changed");
  }
}

bool deformation_family_ok(const Curve& base, const DeformationSpec& d) {
  for (const Rat& probe : {Rat(1, 1000), Rat(-1, 1000)}) {
    try {
      validate_deformation(base, d, probe);
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

PoleSum variation_rhs_standard(const Engine& e, const DeformationSpec& d, long h, long m) {
  const Curve& c = e.curve();
  const PoleSum& w = e.omega(h, m + 1);
  PoleSum out(m);
  if (d.kind == DeformKind::MonodromyPair) {
    for (auto& [t, coeff] : w.terms()) {
      Rat val = pole_antider_between(t[0], coeff, d.a, d.b);
      if (!val.is_zero()) out.add_term(Term(t.begin() + 1, t.end()), val);
    }
    return out;
  }
  if (d.kind != DeformKind::IrregularTime) fail(Err::Internal, "wrong deformation kind");
  long T = e.working_truncation(h, m + 1) + d.k + 2;
  const std::string tag = d.a.infinite ? "w" : c.var();
  auto [za, kind] = c.local_coordinate(d.a, T);
  Series zk = za.pow_int(-d.k);
  std::map<Term, Series> expansion = d.a.infinite
                                         ? expand_slot_infinity(w, tag, T)
                                         : expand_slot(w, 0, d.a.z, Series::identity(tag, T), false);
  for (auto& [rest, g] : expansion) {
    Rat r = (zk * g).residue();
    if (!r.is_zero()) out.add_term(rest, r);
  }
  return out;
}

PoleSum variation_rhs_vital(const Engine& e, size_t r, long h, long n) {
  const Curve& c = e.curve();
  const VitalPoint& v = c.vital()[r];
  const std::string& tag = c.var();
  PoleSum out(n);
  long T = e.working_truncation(h, n + 1);
  const PoleSum& w_next = e.omega(h, n + 1);

  // ramification residues against d_{a_r}[Phi]; in the engine orientation
  // Omega_{a_r} = -y_r dx / (a_r - q)
  for (auto& rp : c.ram()) {
    Series denom = Series::identity(tag, T).scaled(Rat(-1)).plus_const(v.a - rp.p);
    Series omega_ser = c.xprime_at(rp.p, T).scaled(-v.weight) * denom.pow_int(-1);
    Series dphi = omega_ser.antiderivative();
    for (auto& [rest, g] : expand_slot(w_next, 0, rp.p, Series::identity(tag, T), false)) {
      Rat val = (dphi * g).residue();
      if (!val.is_zero()) out.add_term(rest, val);
    }
  }

  // the a_r residue of (dx(a_r)/dx) sum_{h1>=1} omega_{h1,1} omega_{h-h1,n+1}
  Series pref = c.xprime_at(v.a, T).pow_int(-1).scaled(v.x_prime);
  Series ident = Series::identity(tag, T);
  for (long h1 = 1; h1 <= h; ++h1) {
    Series A = expand_full(e.omega(h1, 1), v.a, ident, false);
    for (auto& [rest, g] : expand_omega_or_bergman(e, h - h1, n + 1, v.a, T)) {
      Rat val = (pref * A * g).residue();
      if (!val.is_zero()) out.add_term(rest, val);
    }
  }
  return out;
}

// d/dt of the free-energy definition under a standard-time deformation,
// assembled by the chain rule: the correlator variations are the (verified)
// standard-time residues, while Phi, dy and the basepoint integral deform
// explicitly through Omega = B_{a,k} (resp. the monodromy one-form). On
// curves where the appendix cancellations apply this collapses to the
// familiar int Lambda omega_{h,1}.
Rat variation_free_energy_standard(const Engine& e, const DeformationSpec& d, long h) {
  const Curve& c = e.curve();
  if (h == 1 && !c.ram().empty())
    fail(Err::TauUnsupported, "standard-time variation of F_1 needs tau data when Ram is nonempty");
  if (d.kind == DeformKind::VitalPosition) fail(Err::Internal, "wrong deformation kind");

  // Omega = d/dt [y dx] as a rational one-form
  RatFun omega_form;
  if (d.kind == DeformKind::IrregularTime) {
    omega_form = c.b_form(d.a, d.k, c.basepoint());
  } else {
    Rat oprime = c.basepoint() + Rat(1000003);
    omega_form = c.b_form(d.a, 0, oprime) - c.b_form(d.b, 0, oprime);
  }

  if (h == 1) {
    // F_1 on Ram = emptyset: only the vital limits move, through delta[y]
    // evaluated at each a_s (the log arguments are fixed)
    RatFun dy_shift = omega_form / c.dx();
    Rat acc(0);
    for (auto& v : c.vital()) acc -= dy_shift.eval(v.a) / (Rat(24) * v.weight);
    return acc;
  }

  const std::string& tag = c.var();
  long T = e.working_truncation(h, 2) + d.k + 2;
  const PoleSum& w_h1 = e.omega(h, 1);
  PoleSum dw_h1 = variation_rhs_standard(e, d, h, 1);
  PoleIntegral integral(w_h1, c.basepoint());
  PoleIntegral dintegral(dw_h1, c.basepoint());

  Rat term_ram(0);
  for (auto& r : c.ram()) {
    Series ident = Series::identity(tag, T);
    Series yloc = -c.y_loc_at(r.p, T + 1);
    Series phi = (yloc * c.xprime_at(r.p, T + 1)).antiderivative();
    Series dphi = -(omega_form.series_at(r.p, tag, T + 1)).antiderivative();
    Series a_cur = expand_full(w_h1, r.p, ident, false);
    Series a_var = expand_full(dw_h1, r.p, ident, false);
    term_ram += (dphi * a_cur).residue() + (phi * a_var).residue();
  }

  Rat term_vital(0);
  RatFun dy_var_fun = (omega_form / c.dx()).derivative();
  for (auto& v : c.vital()) {
    Series ident = Series::identity(tag, T);
    Series xm = c.x_minus_x_at(v.a, T);
    Series xp_inv = c.xprime_at(v.a, T).pow_int(-1);
    Series inner = Series::zero(tag, T);
    for (long h1 = 1; h1 <= h - 1; ++h1) {
      Series a1 = expand_full(e.omega(h1, 1), v.a, ident, false);
      Series a2 = expand_full(e.omega(h - h1, 1), v.a, ident, false);
      Series da1 = expand_full(variation_rhs_standard(e, d, h1, 1), v.a, ident, false);
      Series da2 = expand_full(variation_rhs_standard(e, d, h - h1, 1), v.a, ident, false);
      inner = inner + ((da1 * a2 + a1 * da2) * xp_inv).scaled(Rat(1, 2));
    }
    Series dy_cur = c.dyfun_at(v.a, T);
    Series dy_var = dy_var_fun.is_zero() ? Series::zero(tag, T) : dy_var_fun.series_at(v.a, tag, T);
    inner = inner - dy_var * integral.series_at(v.a, tag, T);
    inner = inner - dy_cur * dintegral.series_at(v.a, tag, T);
    term_vital += (xm * inner).residue();
  }
  return (term_ram - term_vital) / Rat(2 - 2 * h);
}

namespace {

// the regrouped combination d_{a_r}[Phi] + dx(a_r) y(z), regular at a_r; the
// formal log(u) pieces cancel between the two summands. orientation = +1
// pairs the curve-file data (the h >= 2 regrouped form), orientation = -1
// the engine-internal -y data (the F_1 formula).
Series regrouped_combo_at_ar(const Curve& c, size_t r, long T, int orientation) {
  const VitalPoint& v = c.vital()[r];
  const std::string& tag = c.var();
  Series xp = c.xprime_at(v.a, T);
  Rat w = v.weight * Rat(orientation);
  Series omega_ser = xp.scaled(w) * Series::monomial(tag, -1, Rat(-1), T);
  Rat rho = omega_ser.residue();
  Series omega_reg = omega_ser - Series::monomial(tag, -1, rho, T);
  if (rho + v.x_prime * w != Rat(0))
    fail(Err::Internal, "log pieces fail to cancel in the regrouped combination");
  return omega_reg.antiderivative() + y_regular_series_at(c, v.a, T + 1).scaled(v.x_prime * Rat(orientation));
}

}  // namespace

std::pair<Rat, Rat> variation_free_energy_vital(const Engine& e, size_t r, long h) {
  const Curve& c = e.curve();
  const VitalPoint& v = c.vital()[r];
  const std::string& tag = c.var();
  long T = e.working_truncation(h, 2);
  const PoleSum& w_h1 = e.omega(h, 1);
  PoleIntegral integral(w_h1, c.basepoint());

  auto ram_residues = [&]() {
    Rat acc(0);
    for (auto& rp : c.ram()) {
      Series denom = Series::identity(tag, T).scaled(Rat(-1)).plus_const(v.a - rp.p);
      Series dphi = (c.xprime_at(rp.p, T).scaled(-v.weight) * denom.pow_int(-1)).antiderivative();
      acc += (dphi * expand_full(w_h1, rp.p, Series::identity(tag, T), false)).residue();
    }
    return acc;
  };
  Rat t_ram = ram_residues();

  Series ident = Series::identity(tag, T);
  Series pref = c.xprime_at(v.a, T).pow_int(-1).scaled(v.x_prime);
  Rat t_pairs(0);
  for (long h1 = 1; h1 <= h - 1; ++h1) {
    Series A1 = expand_full(e.omega(h1, 1), v.a, ident, false);
    Series A2 = expand_full(e.omega(h - h1, 1), v.a, ident, false);
    t_pairs += (pref * A1 * A2).residue();
  }
  t_pairs = t_pairs / Rat(2);

  Rat t_dy = -(c.dyfun_at(v.a, T) * integral.series_at(v.a, tag, T)).residue() * v.x_prime;

  Rat t_moved(0);
  for (auto& vp : c.vital()) {
    Series dyvar;
    if (vp.a == v.a) {
      dyvar = Series::monomial(tag, -1, -v.weight, T);
    } else {
      dyvar = ident.scaled(Rat(-1)).plus_const(v.a - vp.a).pow_int(-1).scaled(v.weight);
    }
    Series xp_j = c.xprime_at(vp.a, T);
    t_moved -= (dyvar * xp_j * integral.series_at(vp.a, tag, T)).residue();
  }

  Rat primary = t_ram + t_pairs + t_dy + t_moved;

  // second form: residues of d[Phi] omega_{h,1} over ram and vital points,
  // regrouped at a_r, plus the full quadratic residue there
  Rat second = t_ram;
  for (size_t j = 0; j < c.vital().size(); ++j) {
    const VitalPoint& vj = c.vital()[j];
    Series A = expand_full(w_h1, vj.a, ident, false);
    if (j == r) {
      second += (regrouped_combo_at_ar(c, r, T, +1) * A).residue();
    } else {
      Series denom = ident.scaled(Rat(-1)).plus_const(v.a - vj.a);
      Series dphi = (c.xprime_at(vj.a, T).scaled(v.weight) * denom.pow_int(-1)).antiderivative();
      second += (dphi * A).residue();
    }
  }
  Rat quad(0);
  for (long h1 = 1; h1 <= h - 1; ++h1) {
    Series A1 = expand_full(e.omega(h1, 1), v.a, ident, false);
    Series A2 = expand_full(e.omega(h - h1, 1), v.a, ident, false);
    quad += (pref * A1 * A2).residue();
  }
  second += quad / Rat(2);
  return {primary, second};
}

Rat variation_f1_vital(const Engine& e, size_t r) {
  const Curve& c = e.curve();
  const VitalPoint& v = c.vital()[r];
  const std::string& tag = c.var();
  long T = e.working_truncation(1, 2);
  const PoleSum& w11 = e.omega(1, 1);
  Series ident = Series::identity(tag, T);
  Rat acc(0);
  for (auto& rp : c.ram()) {
    Series denom = ident.scaled(Rat(-1)).plus_const(v.a - rp.p);
    Series dphi = (c.xprime_at(rp.p, T).scaled(-v.weight) * denom.pow_int(-1)).antiderivative();
    acc += (dphi * expand_full(w11, rp.p, ident, false)).residue();
  }
  for (size_t j = 0; j < c.vital().size(); ++j) {
    const VitalPoint& vj = c.vital()[j];
    Series A = expand_full(w11, vj.a, ident, false);
    if (j == r) {
      acc += (regrouped_combo_at_ar(c, r, T, -1) * A).residue();
    } else {
      Series denom = ident.scaled(Rat(-1)).plus_const(v.a - vj.a);
      Series dphi = (c.xprime_at(vj.a, T).scaled(-v.weight) * denom.pow_int(-1)).antiderivative();
      acc += (dphi * A).residue();
    }
  }
  return acc;
}

namespace {

template <class Value>
struct Tableau {
  std::vector<Value> last_column;
  Value value;
  Value error;
};

// Neville extrapolation to eps^2 = 0
template <class Value>
Tableau<Value> neville(const std::vector<Rat>& eps, const std::vector<Value>& f) {
  size_t n = f.size();
  std::vector<Value> t = f;
  Value prev = t.back();
  std::vector<Rat> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = eps[i] * eps[i];
  for (size_t j = 1; j < n; ++j) {
    prev = t.back();
    for (size_t i = n - 1; i >= j; --i) {
      Value num = t[i] * Value(Rat(x[i - j])) - t[i - 1] * Value(Rat(x[i]));
      t[i] = num / Value(x[i - j] - x[i]);
      if (i == j) break;
    }
  }
  Tableau<Value> out;
  out.value = t.back();
  Value diff = t.back() - prev;
  out.error = diff;
  out.last_column = t;
  return out;
}

void check_contraction(const std::vector<Rat>& diffs) {
  for (size_t i = 2; i < diffs.size(); ++i) {
    Rat d1 = (diffs[i - 1] - diffs[i - 2]).abs();
    Rat d2 = (diffs[i] - diffs[i - 1]).abs();
    if (d2.is_zero()) continue;
    if (Rat(4) * d2 > d1)
      fail(Err::InconclusiveFD, "finite-difference increments fail to contract");
  }
}

}  // namespace

FDResult fd_derivative(const Curve& base, const DeformationSpec& d, const ScalarTarget& target,
                       const FDOptions& opt) {
  FDResult out;
  for (const Rat& eps : opt.eps_schedule) {
    Curve plus = Curve::analyze(deform_curve(base, d, eps));
    Curve minus = Curve::analyze(deform_curve(base, d, -eps));
    Engine ep(plus, opt.engine), em(minus, opt.engine);
    Rat diff = (target(ep) - target(em)) / (Rat(2) * eps);
    out.central_diffs.push_back(diff);
  }
  check_contraction(out.central_diffs);
  auto tab = neville<Rat>(opt.eps_schedule, out.central_diffs);
  out.value = tab.value;
  out.error_estimate = tab.error.abs();
  return out;
}

namespace {
struct DecVal {
  Dec v;
  DecVal() = default;
  explicit DecVal(const Rat& r) : v(r) {}
  explicit DecVal(Dec d) : v(std::move(d)) {}
  DecVal operator*(const DecVal& o) const { return DecVal(v * o.v); }
  DecVal operator-(const DecVal& o) const { return DecVal(v - o.v); }
  DecVal operator/(const DecVal& o) const { return DecVal(v / o.v); }
};
}  // namespace

FDResultNumeric fd_derivative_log(const Curve& base, const DeformationSpec& d,
                                  const LogTarget& target, const FDOptions& opt) {
  std::vector<DecVal> diffs;
  std::vector<Rat> raw_for_contraction;
  for (const Rat& eps : opt.eps_schedule) {
    Curve plus = Curve::analyze(deform_curve(base, d, eps));
    Curve minus = Curve::analyze(deform_curve(base, d, -eps));
    Engine ep(plus, opt.engine), em(minus, opt.engine);
    LogValue vp = target(ep), vm = target(em);
    auto [rp, ip] = numeric_log_value(vp);
    auto [rm, im] = numeric_log_value(vm);
    if (ip != im) fail(Err::InconclusiveFD, "branch parts fail to cancel in the difference");
    Dec diff = (rp - rm) / Dec(Rat(2) * eps);
    diffs.push_back(DecVal(diff));
  }
  auto tab = neville<DecVal>(opt.eps_schedule, diffs);
  FDResultNumeric out;
  out.value = tab.value.v;
  out.error_estimate = tab.error.v.abs();
  return out;
}

bool fd_matches(const Rat& fd, const Rat& rhs, const Rat& tol) {
  Rat bound = tol * std::max(Rat(1), rhs.abs());
  return (fd - rhs).abs() <= bound;
}

bool fd_matches(const Dec& fd, const Rat& rhs, const Rat& tol) {
  Dec bound = Dec(tol) * Dec(std::max(Rat(1), rhs.abs()));
  Dec diff = (fd - Dec(rhs)).abs();
  return diff <= bound || diff == bound;
}

std::vector<Rat> sample_points(const Curve& c, long count) {
  std::set<Rat> avoid;
  for (auto& r : c.ram()) avoid.insert(r.p);
  for (auto& v : c.vital()) avoid.insert(v.a);
  for (auto& lt : c.spec().x_logs) avoid.insert(lt.point);
  for (auto& lt : c.spec().y_logs) avoid.insert(lt.point);
  std::vector<Rat> out;
  long num = 5, den = 7;
  while (static_cast<long>(out.size()) < count) {
    Rat cand(num, den);
    if (!avoid.count(cand)) out.push_back(cand);
    num += 9;
    den += 2;
  }
  return out;
}

PoleSum dilaton_rhs_main(const Engine& e, long h, long k) {
  const Curve& c = e.curve();
  Checker chk(e);
  long T = e.working_truncation(h, k + 2);
  auto pr = chk.phi_residues(e.omega(h, k + 1), T);
  PoleSum rhs = pr.value;
  const std::string& tag = c.var();
  for (auto& v : c.vital()) {
    Series pref = c.x_minus_x_at(v.a, T) * c.xprime_at(v.a, T).pow_int(-1);
    Series ident = Series::identity(tag, T);
    for (long h1 = 1; h1 <= h; ++h1) {
      Series A = expand_full(e.omega(h1, 1), v.a, ident, false);
      for (auto& [rest, g] : expand_omega_or_bergman(e, h - h1, k + 1, v.a, T))
        rhs.add_term(rest, -(pref * A * g).residue());
    }
  }
  return rhs;
}

CheckReport check_variational_omega(const Curve& base, const DeformationSpec& d, long h, long m,
                                    const FDOptions& opt) {
  CheckReport rep{"variational-omega",
                  d.str() + " (h,m)=(" + std::to_string(h) + "," + std::to_string(m) + ")"};
  Engine e(base, opt.engine);
  PoleSum rhs = d.kind == DeformKind::VitalPosition ? variation_rhs_vital(e, d.vital_index, h, m)
                                                    : variation_rhs_standard(e, d, h, m);
  std::vector<Rat> pts = sample_points(base, m);
  Rat rhs_val = rhs.eval(pts);
  ScalarTarget target = [h, m, pts](const Engine& en) { return en.omega(h, m).eval(pts); };
  FDResult fd = fd_derivative(base, d, target, opt);
  rep.pass = fd_matches(fd.value, rhs_val, opt.tolerance);
  if (!rep.pass) rep.witness = "fd=" + fd.value.str() + " rhs=" + rhs_val.str();
  return rep;
}

CheckReport check_variational_free_energy(const Curve& base, const DeformationSpec& d, long h,
                                          const FDOptions& opt) {
  CheckReport rep{"variational-F", d.str() + " h=" + std::to_string(h)};
  Engine e(base, opt.engine);
  Rat rhs_val;
  if (d.kind == DeformKind::VitalPosition) {
    auto [primary, second] = variation_free_energy_vital(e, d.vital_index, h);
    if (primary != second) {
      rep.pass = false;
      rep.witness = "the two vital-variation forms disagree: " + primary.str() + " vs " + second.str();
      return rep;
    }
    rhs_val = primary;
  } else {
    rhs_val = variation_free_energy_standard(e, d, h);
  }
  ScalarTarget target = [h](const Engine& en) { return Checker(en).free_energy(h); };
  FDResult fd = fd_derivative(base, d, target, opt);
  rep.pass = fd_matches(fd.value, rhs_val, opt.tolerance);
  if (!rep.pass) rep.witness = "fd=" + fd.value.str() + " rhs=" + rhs_val.str();
  return rep;
}

CheckReport check_variational_f1(const Curve& base, const DeformationSpec& d,
                                 const FDOptions& opt) {
  CheckReport rep{"variational-F1", d.str()};
  Engine e(base, opt.engine);
  Rat rhs_val = d.kind == DeformKind::VitalPosition
                    ? variation_f1_vital(e, d.vital_index)
                    : variation_free_energy_standard(e, d, 1);
  LogTarget target = [](const Engine& en) { return Checker(en).free_energy_f1().value; };
  FDResultNumeric fd = fd_derivative_log(base, d, target, opt);
  rep.pass = fd_matches(fd.value, rhs_val, opt.tolerance);
  if (!rep.pass) rep.witness = "fd=" + fd.value.str() + " rhs=" + rhs_val.str();
  return rep;
}

CheckReport check_dilaton_variation_compat(const Curve& base, const DeformationSpec& d, long h,
                                           long k, const FDOptions& opt) {
  CheckReport rep{"dilaton-variation-compat",
                  d.str() + " (h,k)=(" + std::to_string(h) + "," + std::to_string(k) + ")"};
  std::vector<Rat> pts = sample_points(base, k);
  ScalarTarget lhs = [h, k, pts](const Engine& en) {
    return en.omega(h, k).eval(pts) * Rat(2 - 2 * h - k);
  };
  ScalarTarget rhs = [h, k, pts](const Engine& en) { return dilaton_rhs_main(en, h, k).eval(pts); };
  FDResult fl = fd_derivative(base, d, lhs, opt);
  FDResult fr = fd_derivative(base, d, rhs, opt);
  Dec diff = (Dec(fl.value) - Dec(fr.value)).abs();
  Dec bound = Dec(opt.tolerance) * Dec(std::max(Rat(1), fr.value.abs()));
  rep.pass = diff <= bound || diff == bound;
  if (!rep.pass) rep.witness = "lhs'=" + fl.value.str() + " rhs'=" + fr.value.str();
  return rep;
}

std::vector<DeformationSpec> usable_deformations(const Curve& c) {
  std::vector<DeformationSpec> out;
  for (size_t s = 0; s < c.vital().size(); ++s) {
    DeformationSpec d{DeformKind::VitalPosition};
    d.vital_index = s;
    if (deformation_family_ok(c, d)) out.push_back(d);
  }
  std::vector<SpherePt> poles = c.ytilde_dx_poles();
  for (auto& p : poles) {
    TimesData td = c.extract_times(p);
    for (long k = 1; k <= td.order; ++k) {
      DeformationSpec d{DeformKind::IrregularTime};
      d.a = p;
      d.k = k;
      if (deformation_family_ok(c, d)) out.push_back(d);
    }
  }
  for (size_t i = 0; i < poles.size(); ++i)
    for (size_t j = i + 1; j < poles.size(); ++j) {
      DeformationSpec d{DeformKind::MonodromyPair};
      d.a = poles[i];
      d.b = poles[j];
      if (deformation_family_ok(c, d)) out.push_back(d);
    }
  return out;
}

}  // namespace logtr
