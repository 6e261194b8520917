#include "logtr/special.hpp"

#include <mutex>

namespace logtr {

namespace {
std::mutex table_mutex;
std::vector<Rat> bern_table;  // B_0, B_1, ...

// Sum_{k=0}^{n} C(n+1,k) B_k = 0 for n >= 1, which yields B_1 = -1/2.
void grow_bernoulli(long n) {
  if (bern_table.empty()) bern_table.push_back(Rat(1));
  while (static_cast<long>(bern_table.size()) <= n) {
    long m = static_cast<long>(bern_table.size());
    Rat acc(0);
    for (long k = 0; k < m; ++k) acc += binomial(m + 1, k) * bern_table[k];
    bern_table.push_back(-acc / binomial(m + 1, m));
  }
}
}  // namespace

Rat factorial(long n) {
  if (n < 0) fail(Err::Internal, "factorial of negative");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(mpq_class(f));
}

Rat binomial(long n, long k) {
  if (k < 0 || k > n) return Rat(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(mpq_class(b));
}

Rat bernoulli(long n) {
  if (n < 0) fail(Err::Internal, "bernoulli of negative index");
  std::lock_guard<std::mutex> lock(table_mutex);
  grow_bernoulli(n);
  return bern_table[n];
}

Rat beta_coeff(long k) {
  if (k < 0) fail(Err::Internal, "beta of negative index");
  Rat b2k = bernoulli(2 * k);
  return (Rat(2).pow(1 - 2 * k) - Rat(1)) * b2k / factorial(2 * k);
}

Rat s_pair_coeff(long h, const Rat& y_r, const Rat& y_s) {
  if (h < 0) fail(Err::Internal, "negative order");
  if (y_r.is_zero() || y_s.is_zero()) fail(Err::Internal, "zero log-time in s_pair_coeff");
  Rat acc(0);
  for (long i = 0; i <= h; ++i)
    acc += beta_coeff(i) * beta_coeff(h - i) * y_r.pow(-2 * i) * y_s.pow(-2 * (h - i));
  return acc;
}

std::vector<Rat> polylog_numerator(long n) {
  if (n < 0) fail(Err::Internal, "polylog_numerator wants n >= 0");
  // Li_{-n}(x) = P_n(x)/(1-x)^{n+1};  P_{n+1} = x ((1-x) P_n' + (n+1) P_n).
  std::vector<Rat> p = {Rat(0), Rat(1)};  // P_0 = x
  for (long m = 0; m < n; ++m) {
    std::vector<Rat> q(p.size() + 1, Rat(0));
    for (size_t j = 1; j < p.size(); ++j) {
      // x * (1-x) * j x^{j-1} term
      q[j] += Rat(static_cast<long>(j)) * p[j];
      if (j + 1 < q.size()) q[j + 1] -= Rat(static_cast<long>(j)) * p[j];
    }
    for (size_t j = 0; j < p.size(); ++j)
      if (j + 1 < q.size()) q[j + 1] += Rat(m + 1) * p[j];
    while (q.size() > 1 && q.back().is_zero()) q.pop_back();
    p = std::move(q);
  }
  return p;
}

Rat polylog_nonpositive(long m, const Rat& x) {
  if (m > 0) fail(Err::Internal, "polylog_nonpositive wants m <= 0");
  if (x.is_one()) fail(Err::EvaluationAtPole, "Li_m has a pole at x = 1 for m <= 0");
  std::vector<Rat> p = polylog_numerator(-m);
  Rat num(0), xp(1);
  for (const Rat& c : p) {
    num += c * xp;
    xp *= x;
  }
  return num / (Rat(1) - x).pow(1 - m);
}

void warm_special_tables(long bound) {
  std::lock_guard<std::mutex> lock(table_mutex);
  grow_bernoulli(bound);
}

}  // namespace logtr
