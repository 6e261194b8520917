#pragma once

#include <vector>

#include "logtr/rat.hpp"

namespace logtr {

// Bernoulli numbers with the B_1 = -1/2 convention (only even indices are
// consumed downstream, so the convention is inert but fixed). Memoized;
// concurrent reads are safe, table growth is serialized.
Rat bernoulli(long n);

// beta_{2k} = (2^{1-2k} - 1) B_{2k} / (2k)!, the u^{2k} coefficient of 1/S(u)
// where S(u) = 2*sinh(u/2)/u. Memoized alongside the Bernoulli table.
Rat beta_coeff(long k);

// Coefficient of hbar^{2h} in 1/( S(hbar/y_r) * S(hbar/y_s) ), i.e.
// sum_{i+j=h} beta_{2i} beta_{2j} y_r^{-2i} y_s^{-2j}.
Rat s_pair_coeff(long h, const Rat& y_r, const Rat& y_s);

// Li_m(x) for m <= 0 and x != 1: apply (x d/dx) to Li_0(x) = x/(1-x), -m
// times, then evaluate. Always a rational number.
Rat polylog_nonpositive(long m, const Rat& x);

// Numerator polynomial P_n (ascending coefficients) with
// Li_{-n}(x) = P_n(x) / (1-x)^{n+1}; exposed for oracle-side partial fractions.
std::vector<Rat> polylog_numerator(long n);

Rat factorial(long n);
Rat binomial(long n, long k);

// Warms the Bernoulli/beta memo tables up to B_{2k}, beta_{2k} for 2k <= bound.
void warm_special_tables(long bound = 14);

}  // namespace logtr
