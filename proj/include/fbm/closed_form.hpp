#pragma once

#include <optional>

#include "fbm/hurst.hpp"

namespace fbm {

// Riemann zeta at an integer argument k >= 2, absolute accuracy 1e-13.
double riemann_zeta(int k);

// Closed-form Var(zeta_H): 16 zeta(3) at H = 1/2, 1 at H = 1, absent
// otherwise.
std::optional<double> var_zeta_closed(Hurst hurst);

// Standard normal distribution function.
double normal_cdf(double x);

// Scaled complementary error function e^{z^2} erfc(z) for z >= 0.
double erfcx(double z);

// Tail law of the argmax of two-sided Brownian motion with drift -|t|/2:
//   P(|xi_{1/2}| > t) = (t+5) Phi(-sqrt(t)/2) - sqrt(2t/pi) e^{-t/8}
//                       - 3 e^t Phi(-3 sqrt(t)/2).
// The last product is evaluated through erfcx so it stays finite for all t.
double yao_tail(double t);

// Var(xi_{1/2}) = integral of 2 t P(|xi| > t) over [0, inf) = 26, computed
// by adaptive quadrature on [0, 400]; the remainder is below 1e-12.
double yao_variance();

// Root of (x+1)^k - (x-1)^k + 2k (x^k - x^{k-1}) = 2 on (0, 1), k even.
struct CkSolution {
  int k = 0;
  double root = 0.0;
  double residual = 0.0;
};

CkSolution ck_root(int k);

// Large-k approximation c_k ~ D / k with D = ln(1 + sqrt(2)), sinh(D) = 1.
double ck_asymptotic(int k);

double sinh_one_root();  // D
double crossover_h0();   // (sqrt(73) - 1) / 12

// Lower bound on the exponential boundedness index alpha_H: 1/8 up to the
// crossover H0, the rational branch (4H^2+2H-1)/(2(2H+2)(2H+1)) above it,
// and exactly 1/2 at H = 1.
double alpha_lower_bound(Hurst hurst);

// Var of the integrated path over [0, t]: t^{2H+2} / (2H + 2).
double integrated_fbm_variance(double t, Hurst hurst);

// Jensen bound t^{-r} exp{ r^2 / (2 t^2) * Var(integrated path) } on
// E (integral of e^{W_s} over [0, t])^{-r}.
double lemma2_bound(double t, double r, Hurst hurst);

}  // namespace fbm
