#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "logtr/curve.hpp"

using namespace logtr;

namespace {

CurveSpec poly_curve(std::vector<Rat> xc, std::vector<Rat> yc) {
  CurveSpec s;
  s.x_rat = RatFun(Poly(std::move(xc)), Poly(Rat(1)));
  s.y_rat = RatFun(Poly(std::move(yc)), Poly(Rat(1)));
  return s;
}

// sum of residues of dy over all poles, the infinity one read off the
// w-expansion
Rat residue_sum_dy(const Curve& c) {
  Rat acc(0);
  if (c.dy().is_zero()) return acc;
  if (c.dy().den().degree() >= 1) {
    RootList roots = rational_roots(c.dy().den());
    for (auto& [p, m] : roots.roots) acc += c.dy().series_at(p, "z", 2).residue();
  }
  acc += c.form_series(c.dy(), SpherePt::inf(), "w", 2).residue();
  return acc;
}

}  // namespace

TEST_CASE("airy admissible") {
  Curve c = Curve::analyze(airy_curve());
  REQUIRE(c.ram().size() == 1);
  CHECK(c.ram()[0].p == Rat(0));
  CHECK(c.vital().empty());
  CHECK(c.ram()[0].x_lead == Rat(1));
  CHECK(c.ram()[0].y_prime == Rat(1));
}

TEST_CASE("dy pole at ramification point rejected") {
  CurveSpec s = poly_curve({Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(1)});
  s.y_logs.push_back({Rat(0), Rat(1), Rat(1)});
  AdmissReport rep = Curve::validate(s);
  CHECK(!rep.admissible);
  CHECK_THROWS_WITH_AS(Curve::analyze(s), doctest::Contains("dy-regular"), Error);
}

TEST_CASE("non-simple ramification rejected") {
  CurveSpec s = poly_curve({Rat(0), Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(1)});
  try {
    Curve::analyze(s);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == Err::NonSimpleRamification);
  }
}

TEST_CASE("irrational ramification is unsupported") {
  // x = z^3/3 - 2z has dx = z^2 - 2
  CurveSpec s = poly_curve({Rat(0), Rat(-2), Rat(0), Rat(1, 3)}, {Rat(0), Rat(1)});
  AdmissReport rep = Curve::validate(s);
  CHECK(!rep.admissible);
  CHECK(rep.unsupported);
}

TEST_CASE("vital singularities: sw-half, strip, framed") {
  Curve sw = Curve::analyze(sw_half_curve({Rat(0), Rat(1)}, {Rat(1), Rat(1)}, Rat(0)));
  CHECK(sw.ram().empty());
  REQUIRE(sw.vital().size() == 2);
  CHECK(sw.vital()[0].a == Rat(0));
  CHECK(sw.vital()[1].a == Rat(1));
  CHECK(sw.vital()[0].x_prime == Rat(1));

  Curve st = Curve::analyze(strip_curve({Rat(1), Rat(2)}, {Rat(1), Rat(1)}));
  CHECK(st.ram().empty());
  REQUIRE(st.vital().size() == 2);  // z = 0 and infinity excluded
  CHECK(st.vital()[0].x_prime == Rat(1));      // x' = 1/z at z = 1
  CHECK(st.vital()[1].x_prime == Rat(1, 2));

  // framed: x = z + f*y with f = -1/2, y = log(z - 2)
  CurveSpec fr;
  fr.x_rat = RatFun::x();
  fr.x_logs.push_back({Rat(2), Rat(-1, 2), Rat(1)});
  fr.y_rat = RatFun(Rat(0));
  fr.y_logs.push_back({Rat(2), Rat(1), Rat(1)});
  Curve f = Curve::analyze(fr);
  CHECK(f.vital().empty());
  REQUIRE(f.ram().size() == 1);  // dx = 1 - (1/2)/(z-2) vanishes at z = 5/2
  CHECK(f.ram()[0].p == Rat(5, 2));
}

TEST_CASE("local involutions") {
  Curve airy = Curve::analyze(airy_curve());
  Series sig = airy.sigma_at(0, 8);
  CHECK(sig == Series::monomial("z", 1, Rat(-1), 8));

  // x = -(4z+1)/(4(1+2z)^2): dx = 2z/(1+2z)^3, a single asymmetric simple
  // ramification point at 0; sigma via the reversion route
  CurveSpec s;
  Poly den = Poly(std::vector<Rat>{Rat(1), Rat(2)});
  s.x_rat = RatFun(Poly(std::vector<Rat>{Rat(-1, 4), Rat(-1)}), den * den);
  s.y_rat = RatFun::x();
  Curve c = Curve::analyze(s);
  long T = 10;
  Series sigma = c.sigma_at(0, T);
  CHECK(sigma.coeff(1) == Rat(-1));
  Series xm = c.x_minus_x_at(Rat(0), T);
  Series diff = xm.compose(sigma) - xm;
  CHECK(diff.is_zero_upto_trunc());
  Series twice = sigma.compose(sigma);
  CHECK(twice == Series::identity("z", twice.truncation()));

  // x = z + 1/z at p = 1: global involution z -> 1/z
  CurveSpec s2;
  s2.x_rat = RatFun(Poly(std::vector<Rat>{Rat(1), Rat(0), Rat(1)}), Poly::x());
  s2.y_rat = RatFun(Poly(std::vector<Rat>{Rat(0), Rat(0), Rat(1)}), Poly(Rat(1)));  // y = z^2
  Curve c2 = Curve::analyze(s2);
  REQUIRE(c2.ram().size() == 2);  // z = -1, +1
  Series sig2 = c2.sigma_at(1, 9);
  // 1/(1+t) - 1 = -t + t^2 - t^3 + ...
  for (long k = 1; k <= sig2.truncation(); ++k)
    CHECK(sig2.coeff(k) == (k % 2 ? Rat(-1) : Rat(1)));
}

TEST_CASE("sigma is an involution preserving x on mixed curve") {
  Curve c = Curve::analyze(mixed_curve());
  REQUIRE(c.ram().size() == 1);
  long T = 12;
  Series sigma = c.sigma_at(0, T);
  Series xm = c.x_minus_x_at(c.ram()[0].p, T);
  CHECK((xm.compose(sigma) - xm).is_zero_upto_trunc());
  Series twice = sigma.compose(sigma);
  CHECK(twice == Series::identity("z", twice.truncation()));
  CHECK(c.vital().size() == 1);
  CHECK(c.vital()[0].a == Rat(3));
}

TEST_CASE("dy residues sum to zero over the sphere") {
  for (const CurveSpec& s :
       {airy_curve(), mixed_curve(), sw_half_curve({Rat(0), Rat(1), Rat(3)}, {Rat(1), Rat(2), Rat(-1, 2)}, Rat(5)),
        strip_curve({Rat(1), Rat(2)}, {Rat(1), Rat(1)})}) {
    Curve c = Curve::analyze(s);
    CHECK(residue_sum_dy(c) == Rat(0));
  }
}

TEST_CASE("times: x = 1/z, y = z") {
  CurveSpec s;
  s.x_rat = RatFun(Poly(Rat(1)), Poly::x());
  s.y_rat = RatFun::x();
  Curve c = Curve::analyze(s);
  TimesData td = c.extract_times(SpherePt::at(Rat(0)));
  CHECK(td.kind == LocalCoordKind::InverseRoot);
  CHECK(td.monodromy == Rat(-1));
  CHECK(td.order == 0);  // y~dx = -dz/z has a bare monodromy at 0
  // k = 1 residue vanishes: Res z_a * y~dx = Res(-dz) = 0
  auto [za, kind] = c.local_coordinate(SpherePt::at(Rat(0)), 6);
  Series f = c.form_series(c.ytilde_dx(), SpherePt::at(Rat(0)), "z", 4);
  CHECK((za * f).residue() == Rat(0));
  TimesData ti = c.extract_times(SpherePt::inf());
  CHECK(ti.monodromy == Rat(1));
  // sum of monodromies vanishes
  Rat mono(0);
  for (auto& t : c.all_times()) mono += t.monodromy;
  CHECK(mono == Rat(0));
}

TEST_CASE("times vanish for y = 0") {
  CurveSpec s;
  s.x_rat = RatFun(Poly(Rat(1)), Poly::x());  // x = 1/z, no zeros of dx
  s.y_rat = RatFun(Rat(0));
  Curve c = Curve::analyze(s);
  CHECK(c.ytilde_dx_poles().empty());
  auto [lhs, rhs] = c.decomposition_roundtrip(Rat(5));
  CHECK(lhs == rhs);
  CHECK(lhs.is_zero());
}

TEST_CASE("decomposition round trips") {
  // x = z, y = z^2 + z: single pole at infinity
  {
    CurveSpec s = poly_curve({Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(1)});
    Curve c = Curve::analyze(s);
    auto [lhs, rhs] = c.decomposition_roundtrip(Rat(7));
    CHECK(lhs == rhs);
  }
  // sw-half: y~dx = Lambda dz, irregular datum at infinity
  {
    Curve c = Curve::analyze(sw_half_curve({Rat(0), Rat(1)}, {Rat(1), Rat(1)}, Rat(24)));
    auto [lhs, rhs] = c.decomposition_roundtrip(Rat(7));
    CHECK(lhs == rhs);
    TimesData ti = c.extract_times(SpherePt::inf());
    CHECK(ti.irregular[0] == Rat(24));
  }
  // mixed curve and airy
  for (const CurveSpec& s : {mixed_curve(), airy_curve()}) {
    Curve c = Curve::analyze(s);
    auto [lhs, rhs] = c.decomposition_roundtrip(Rat(7));
    CHECK(lhs == rhs);
  }
  // strip: y~dx = 0
  {
    Curve c = Curve::analyze(strip_curve({Rat(1), Rat(2)}, {Rat(1), Rat(1)}));
    auto [lhs, rhs] = c.decomposition_roundtrip(Rat(7));
    CHECK(lhs == rhs);
    CHECK(lhs.is_zero());
  }
  // x = log z, y = z: simple pole of dx with residue (exp coordinate)
  {
    CurveSpec s;
    s.x_logs.push_back({Rat(0), Rat(1), Rat(1)});
    s.y_rat = RatFun::x();
    Curve c = Curve::analyze(s);
    auto [lhs, rhs] = c.decomposition_roundtrip(Rat(7));
    CHECK(lhs == rhs);
    TimesData t0 = c.extract_times(SpherePt::inf());
    CHECK(t0.kind == LocalCoordKind::ExpOverResidue);
    CHECK(t0.experimental);
  }
  // o'-independence
  {
    Curve c = Curve::analyze(mixed_curve());
    auto [l1, r1] = c.decomposition_roundtrip(Rat(7));
    auto [l2, r2] = c.decomposition_roundtrip(Rat(11));
    CHECK(r1 == r2);
  }
}

TEST_CASE("times stable under extra truncation") {
  for (const CurveSpec& s :
       {mixed_curve(), sw_half_curve({Rat(0), Rat(1)}, {Rat(1), Rat(1)}, Rat(3))}) {
    Curve c = Curve::analyze(s);
    for (auto& p : c.ytilde_dx_poles()) {
      TimesData a = c.extract_times(p, 0);
      TimesData b = c.extract_times(p, 9);
      CHECK(a.monodromy == b.monodromy);
      CHECK(a.irregular == b.irregular);
    }
  }
}

TEST_CASE("basepoint avoids special points") {
  Curve c = Curve::analyze(sw_half_curve({Rat(0), Rat(1)}, {Rat(1), Rat(1)}, Rat(0)));
  CHECK(c.basepoint() == Rat(2));
  Curve a = Curve::analyze(airy_curve());
  CHECK(a.basepoint() != Rat(0));
}

TEST_CASE("declared ramification is verified") {
  CurveSpec s = airy_curve();
  s.declared_ramification = {Rat(1)};
  AdmissReport rep = Curve::validate(s);
  CHECK(!rep.admissible);
  s.declared_ramification = {Rat(0)};
  CHECK(Curve::validate(s).admissible);
}
