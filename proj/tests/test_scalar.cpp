#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "logtr/logvalue.hpp"
#include "logtr/rat.hpp"
#include "logtr/series.hpp"
#include "logtr/special.hpp"

using namespace logtr;

TEST_CASE("rational basics") {
  Rat a(3, 6);
  CHECK(a == Rat(1, 2));
  CHECK(a.str() == "1/2");
  CHECK((Rat(2, 3) + Rat(1, 6)) == Rat(5, 6));
  CHECK(Rat::parse("-7/21") == Rat(-1, 3));
  CHECK(Rat(-8).nth_root_exact(3).value() == Rat(-2));
  CHECK(!Rat(2).sqrt_exact().has_value());
  CHECK(Rat(9, 4).sqrt_exact().value() == Rat(3, 2));
  CHECK(Rat(1, 2).pow(-3) == Rat(8));
  CHECK_THROWS_AS(Rat::parse("1.5"), Error);
}

TEST_CASE("bernoulli values") {
  CHECK(bernoulli(0) == Rat(1));
  CHECK(bernoulli(1) == Rat(-1, 2));
  CHECK(bernoulli(2) == Rat(1, 6));
  CHECK(bernoulli(3) == Rat(0));
  CHECK(bernoulli(4) == Rat(-1, 30));
  CHECK(bernoulli(6) == Rat(1, 42));
  CHECK(bernoulli(12) == Rat(-691, 2730));
}

TEST_CASE("beta coefficients") {
  CHECK(beta_coeff(0) == Rat(1));
  CHECK(beta_coeff(1) == Rat(-1, 24));
  CHECK(beta_coeff(2) == Rat(7, 5760));
}

// Series-inversion oracle: invert S(u) = sum_j u^{2j} / (4^j (2j+1)!)
// directly and compare the u^{2k} coefficients with beta_coeff.
TEST_CASE("beta against series inversion oracle") {
  const long K = 12;
  std::vector<Rat> s(2 * K + 1, Rat(0));
  for (long j = 0; 2 * j <= 2 * K; ++j)
    s[2 * j] = Rat(1) / (Rat(4).pow(j) * factorial(2 * j + 1));
  Series S = Series::from_coeffs("u", 0, s, 2 * K);
  Series inv = S.inverse();
  for (long k = 0; k <= K; ++k) {
    CHECK(inv.coeff(2 * k) == beta_coeff(k));
    if (k > 0) CHECK(inv.coeff(2 * k - 1) == Rat(0));
  }
}

TEST_CASE("s_pair_coeff") {
  CHECK(s_pair_coeff(0, Rat(1), Rat(1)) == Rat(1));
  CHECK(s_pair_coeff(1, Rat(1), Rat(1)) == Rat(-1, 12));
  CHECK(s_pair_coeff(2, Rat(1), Rat(1)) == Rat(1, 240));
  // 1/S(t)^2 = 1 - sum_h B_{2h} t^{2h} / (2h (2h-2)!)
  for (long h = 1; h <= 5; ++h)
    CHECK(s_pair_coeff(h, Rat(1), Rat(1)) == -bernoulli(2 * h) / (Rat(2 * h) * factorial(2 * h - 2)));
}

TEST_CASE("nonpositive polylog") {
  CHECK(polylog_nonpositive(0, Rat(1, 2)) == Rat(1));
  CHECK(polylog_nonpositive(-1, Rat(1, 2)) == Rat(2));
  CHECK(polylog_nonpositive(-2, Rat(-1)) == Rat(0));
  CHECK_THROWS_AS(polylog_nonpositive(0, Rat(1)), Error);

  // Li_m(x) (1-x)^{1-m} clears the denominator: check it is polynomial in x
  // by matching against the numerator polynomial at sample points.
  std::vector<Rat> xs = {Rat(2, 7), Rat(-3, 5), Rat(11, 4), Rat(-9, 2), Rat(5, 13)};
  for (long m = 0; m >= -6; --m) {
    auto p = polylog_numerator(-m);
    for (const Rat& x : xs) {
      Rat poly_val(0), xp(1);
      for (const Rat& c : p) {
        poly_val += c * xp;
        xp *= x;
      }
      Rat lhs = polylog_nonpositive(m, x) * (Rat(1) - x).pow(1 - m);
      CHECK(lhs == poly_val);
    }
  }
}

TEST_CASE("log combinations normalize") {
  LogValue v = LogValue(Rat(1, 2)) + LogValue::log_term(Rat(3), Rat(2));
  v += LogValue::log_term(Rat(3), Rat(-2));
  CHECK(v == LogValue(Rat(1, 2)));
  CHECK(v.is_rational());
  LogValue w = LogValue::log_term(Rat(1), Rat(5));  // log(1) dropped
  CHECK(w.is_zero());
  LogValue u = LogValue::log_term(Rat(-1), Rat(-1, 24));
  CHECK(u.str() == "-1/24*log(-1)");
  // no log-law rewriting: log(6) != log(2)+log(3) structurally
  CHECK(LogValue::log_term(Rat(6), Rat(1)) !=
        LogValue::log_term(Rat(2), Rat(1)) + LogValue::log_term(Rat(3), Rat(1)));
}
