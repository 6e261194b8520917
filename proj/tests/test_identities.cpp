#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "logtr/identities.hpp"
#include "logtr/suites.hpp"
#include "logtr/special.hpp"

using namespace logtr;

namespace {

EngineConfig wide() {
  EngineConfig cfg;
  cfg.h_max = 6;
  cfg.n_max = 8;
  return cfg;
}

Curve sw2() { return Curve::analyze(sw_half_curve({Rat(0), Rat(1)}, {Rat(1), Rat(1)}, Rat(0))); }

}  // namespace

TEST_CASE("dilaton on a curve without special points") {
  CurveSpec s;
  s.x_rat = RatFun::x();
  s.y_rat = RatFun(Poly(std::vector<Rat>{Rat(0), Rat(0), Rat(1)}), Poly(Rat(1)));
  Curve c = Curve::analyze(s);
  Engine e(c, wide());
  Checker chk(e);
  CHECK(chk.dilaton(1, 1).pass);
  CHECK(chk.dilaton(1, 2).pass);
}

TEST_CASE("dilaton on sw-half curves") {
  for (auto& ys : {std::vector<Rat>{Rat(1), Rat(1)}, std::vector<Rat>{Rat(2), Rat(-1, 3)}}) {
    Curve c = Curve::analyze(sw_half_curve({Rat(0), Rat(1)}, ys, Rat(5)));
    Engine e(c, wide());
    Checker chk(e);
    for (long h = 0; h <= 2; ++h)
      for (long k = 1; 2 * h + k <= 5; ++k) {
        if (h == 0 && k == 1) continue;
        CheckReport rep = chk.dilaton(h, k);
        INFO(rep.str());
        CHECK(rep.pass);
      }
  }
}

TEST_CASE("dilaton on airy and mixed curves") {
  for (auto spec : {airy_curve(), mixed_curve()}) {
    Curve c = Curve::analyze(spec);
    Engine e(c, wide());
    Checker chk(e);
    for (long h = 0; h <= 2; ++h)
      for (long k = 1; 2 * h + k <= 5; ++k) {
        if (h == 0 && k == 1) continue;
        CheckReport rep = chk.dilaton(h, k);
        INFO(rep.str());
        CHECK(rep.pass);
      }
  }
}

TEST_CASE("dilaton on the strip curve") {
  Curve c = Curve::analyze(strip_curve({Rat(1), Rat(2)}, {Rat(1), Rat(1)}));
  Engine e(c, wide());
  Checker chk(e);
  for (long h = 1; h <= 2; ++h)
    for (long k = 1; 2 * h + k <= 5; ++k) {
      CheckReport rep = chk.dilaton(h, k);
      INFO(rep.str());
      CHECK(rep.pass);
    }
}

TEST_CASE("loop equations and projection") {
  for (auto spec : {airy_curve(), mixed_curve()}) {
    Curve c = Curve::analyze(spec);
    Engine e(c, wide());
    Checker chk(e);
    CHECK(chk.linear_loop(0, 1).pass);
    CHECK(chk.linear_loop(0, 2).pass);  // omega_{0,3} cancels exactly
    CHECK(chk.linear_loop(1, 1).pass);
    CHECK(chk.linear_loop(1, 2).pass);
    CHECK(chk.quadratic_loop(1, 0).pass);
    CHECK(chk.quadratic_loop(1, 1).pass);
    CHECK(chk.quadratic_loop(0, 3).pass);
    CHECK(chk.quadratic_loop(2, 0).pass);
    CHECK(chk.projection(0, 3).pass);
    CHECK(chk.projection(1, 1).pass);
    CHECK(chk.projection(1, 2).pass);
    CHECK(chk.projection(2, 1).pass);
    CHECK(chk.symmetry(0, 3).pass);
    CHECK(chk.symmetry(1, 2).pass);
  }
}

TEST_CASE("vital loop representations agree") {
  for (auto spec : {mixed_curve(), sw_half_curve({Rat(0), Rat(1)}, {Rat(1), Rat(2)}, Rat(0)),
                    strip_curve({Rat(1), Rat(2)}, {Rat(1), Rat(1)})}) {
    Curve c = Curve::analyze(spec);
    Engine e(c, wide());
    Checker chk(e);
    for (long h = 1; h <= 2; ++h) {
      CheckReport rep = chk.vital_loop(h);
      INFO(rep.str());
      CHECK(rep.pass);
      CHECK(chk.route_equivalence(h).pass);
    }
  }
}

TEST_CASE("lemma 3.1") {
  Curve c = sw2();
  Engine e(c, wide());
  Checker chk(e);
  long T = 20;
  Series constant = Series::constant("z", Rat(7), T);
  Series square = Series::monomial("z", 2, Rat(1), T);  // (z - a_s)^2
  for (long h : {1L, 2L}) {
    for (size_t s = 0; s < c.vital().size(); ++s) {
      CHECK(chk.lemma31(h, s, constant).pass);
      CHECK(chk.lemma31(h, s, square).pass);
      CHECK(chk.lemma31_bergman(h, s).pass);
    }
  }
  Curve m = Curve::analyze(mixed_curve());
  Engine em(m, wide());
  Checker chkm(em);
  CHECK(chkm.lemma31(1, 0, square).pass);
  CHECK(chkm.lemma31_bergman(1, 0).pass);
  CHECK(chkm.lemma31_bergman(2, 0).pass);
}

TEST_CASE("residue tricks") {
  Curve c = Curve::analyze(mixed_curve());
  Engine e(c, wide());
  Checker chk(e);
  long T = 16;
  Rat a = c.vital()[0].a;
  Series dq = Series::constant("z", Rat(1), T);                    // F = dq
  Series lin = Series::monomial("z", 1, Rat(1), T);                // F = (q-a) dq
  Series far_pole = Series::identity("z", T).plus_const(a - Rat(7)).pow_int(-1);  // dq/(q-7)
  CHECK(chk.residue_tricks(a, dq, 1).pass);
  CHECK(chk.residue_tricks(a, lin, 1).pass);
  CHECK(chk.residue_tricks(a, lin, 3).pass);
  CHECK(chk.residue_tricks(a, far_pole, 2).pass);
}

TEST_CASE("sw-half free energies") {
  // frozen spot values
  {
    Curve c = sw2();
    Engine e(c, wide());
    Checker chk(e);
    CHECK(chk.free_energy(2) == Rat(1, 240));
    CHECK(chk.free_energy(3) == Rat(-1, 1008));
  }
  // engine route equals the closed form for generic weights and M = 3
  {
    std::vector<Rat> as = {Rat(0), Rat(1), Rat(-2)};
    std::vector<Rat> ys = {Rat(2), Rat(-1, 3), Rat(5)};
    Curve c = Curve::analyze(sw_half_curve(as, ys, Rat(7)));
    Engine e(c, wide());
    Checker chk(e);
    for (long h = 2; h <= 4; ++h) CHECK(chk.free_energy(h) == oracle::sw_half_f(as, ys, h));
  }
  // basepoint independence
  {
    std::vector<Rat> as = {Rat(0), Rat(1)};
    std::vector<Rat> ys = {Rat(1), Rat(3)};
    Curve c = Curve::analyze(sw_half_curve(as, ys, Rat(0)));
    Engine e(c, wide());
    Checker chk(e);
    Rat f2 = chk.free_energy(2);
    CHECK(chk.free_energy_with_basepoint(2, Rat(5)) == f2);
    CHECK(chk.free_energy_with_basepoint(2, Rat(-3, 7)) == f2);
    CHECK(f2 == oracle::sw_half_f(as, ys, 2));
  }
  // no special points: all residue sums empty
  {
    CurveSpec s;
    s.x_rat = RatFun::x();
    s.y_rat = RatFun(Poly(std::vector<Rat>{Rat(0), Rat(0), Rat(1)}), Poly(Rat(1)));
    Curve c = Curve::analyze(s);
    Engine e(c, wide());
    CHECK(Checker(e).free_energy(2) == Rat(0));
  }
}

TEST_CASE("strip free energies") {
  std::vector<Rat> as = {Rat(1), Rat(2)};
  for (auto& ys : {std::vector<Rat>{Rat(1), Rat(1)}, std::vector<Rat>{Rat(3), Rat(-1, 2)}}) {
    Curve c = Curve::analyze(strip_curve(as, ys));
    Engine e(c, wide());
    Checker chk(e);
    for (long h = 2; h <= 3; ++h) {
      INFO("h=", h);
      CHECK(chk.free_energy(h) == oracle::strip_f(as, ys, h));
    }
  }
}

TEST_CASE("F1 values") {
  // M = 1, Lambda = 24: F_1 = -1
  {
    Curve c = Curve::analyze(sw_half_curve({Rat(0)}, {Rat(1)}, Rat(24)));
    Engine e(c);
    auto f1 = Checker(e).free_energy_f1();
    CHECK(!f1.tau_omitted);
    CHECK(f1.value == LogValue(Rat(-1)));
  }
  // M = 2, a = (0,1), y = (1,1), Lambda = 0: -(1/24) log(-1)
  {
    Curve c = sw2();
    Engine e(c);
    auto f1 = Checker(e).free_energy_f1();
    CHECK(!f1.tau_omitted);
    CHECK(f1.value == LogValue::log_term(Rat(-1), Rat(-1, 24)));
  }
  // engine matches the closed form for generic data
  {
    std::vector<Rat> as = {Rat(0), Rat(1), Rat(3)};
    std::vector<Rat> ys = {Rat(2), Rat(-1), Rat(1, 2)};
    Curve c = Curve::analyze(sw_half_curve(as, ys, Rat(6)));
    Engine e(c);
    auto f1 = Checker(e).free_energy_f1();
    CHECK(f1.value == oracle::sw_half_f1(as, ys, Rat(6)));
  }
  // ramification present: the tau term is omitted and flagged
  {
    Curve c = Curve::analyze(mixed_curve());
    Engine e(c);
    auto f1 = Checker(e).free_energy_f1();
    CHECK(f1.tau_omitted);
  }
}

TEST_CASE("strip F1 matches the closed form up to a point-independent shift") {
  std::vector<Rat> y1 = {Rat(1), Rat(1)};
  auto diff_for = [&](const std::vector<Rat>& as) {
    Curve c = Curve::analyze(strip_curve(as, y1));
    Engine e(c);
    LogValue engine_f1 = Checker(e).free_energy_f1().value;
    LogValue paper_f1 = oracle::strip_f1(as, y1);
    LogValue d = engine_f1 - paper_f1;
    return numeric_log_value(d);
  };
  auto [r1, i1] = diff_for({Rat(1), Rat(2)});
  auto [r2, i2] = diff_for({Rat(3), Rat(5)});
  CHECK(i1 == i2);
  Dec gap = (r1 - r2).abs();
  CHECK(gap < Dec(Rat(1, 1000000000)));
}

TEST_CASE("suite fan-out is deterministic across thread counts") {
  Curve c = Curve::analyze(mixed_curve());
  SuiteConfig serial;
  serial.threads = 1;
  SuiteConfig parallel;
  parallel.threads = 0;
  auto a = run_dilaton_suite(c, serial);
  auto b = run_dilaton_suite(c, parallel);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].params == b[i].params);
    CHECK(a[i].pass == b[i].pass);
  }
  CHECK(all_pass(a));
}

TEST_CASE("free energies are stable under doubled truncation") {
  std::vector<Rat> as = {Rat(0), Rat(1)};
  std::vector<Rat> ys = {Rat(1), Rat(2)};
  Curve c = Curve::analyze(sw_half_curve(as, ys, Rat(0)));
  Engine e1(c, wide());
  EngineConfig d2 = wide();
  d2.truncation_override = 48;
  Engine e2(c, d2);
  CHECK(Checker(e1).free_energy(3) == Checker(e2).free_energy(3));
}
