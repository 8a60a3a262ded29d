#include "fbm/closed_form.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fbm/errors.hpp"

namespace fbm {

namespace {

// Adaptive Simpson with an accumulated error estimate (|S2 - S1| / 15).
struct AdaptiveSimpson {
  const std::function<double(double)>& f;
  double tolerance;
  double error = 0.0;

  double run(double a, double b) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return recurse(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tolerance, 0);
  }

  static double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth >= 48 || std::abs(delta) <= 15.0 * tol) {
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double riemann_zeta(int k) {
  if (k < 2) {
    throw ValidationError("zeta argument must be an integer >= 2, got " +
                          std::to_string(k));
  }
  // Direct series plus the Euler-Maclaurin tail of the integral bound,
  // truncated where the next correction term drops below 1e-16.
  const double kd = static_cast<double>(k);
  long n0 = 16;
  while (n0 < (1L << 20) &&
         (kd * (kd + 1.0) * (kd + 2.0) / 720.0) * std::pow(n0, -(kd + 3.0)) >
             1e-16) {
    n0 *= 2;
  }
  double sum = 0.0;
  for (long n = n0 - 1; n >= 1; --n) {
    sum += std::pow(static_cast<double>(n), -kd);
  }
  const double a = static_cast<double>(n0);
  const double tail = std::pow(a, 1.0 - kd) / (kd - 1.0) +
                      0.5 * std::pow(a, -kd) +
                      kd / 12.0 * std::pow(a, -kd - 1.0);
  return sum + tail;
}

std::optional<double> var_zeta_closed(Hurst hurst) {
  if (hurst.value() == 0.5) return 16.0 * riemann_zeta(3);
  if (hurst.value() == 1.0) return 1.0;
  return std::nullopt;
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double erfcx(double z) {
  if (z < 0.0) {
    throw ValidationError("erfcx implemented for z >= 0 only");
  }
  if (z < 25.0) {
    return std::exp(z * z) * std::erfc(z);
  }
  // Asymptotic series; relative error ~ 1e-11 already at z = 25.
  const double iz2 = 1.0 / (z * z);
  const double series =
      1.0 + iz2 * (-0.5 + iz2 * (0.75 + iz2 * (-1.875 + iz2 * 6.5625)));
  return series / (z * std::sqrt(std::numbers::pi));
}

double yao_tail(double t) {
  if (!(t >= 0.0)) {
    throw ValidationError("yao tail argument must be >= 0");
  }
  if (t == 0.0) return 1.0;
  const double sqt = std::sqrt(t);
  const double decay = std::exp(-t / 8.0);
  const double term1 = (t + 5.0) * normal_cdf(-0.5 * sqt);
  const double term2 = std::sqrt(2.0 * t / std::numbers::pi) * decay;
  // e^t Phi(-3 sqrt(t)/2) = e^{-t/8} erfcx(3 sqrt(t) / (2 sqrt(2))) / 2.
  const double z = 3.0 * sqt / (2.0 * std::numbers::sqrt2);
  const double term3 = 1.5 * decay * erfcx(z);
  const double p = term1 - term2 - term3;
  return std::clamp(p, 0.0, 1.0);
}

double yao_variance() {
  const std::function<double(double)> integrand = [](double t) {
    return 2.0 * t * yao_tail(t);
  };
  // The sqrt(t) terms make low derivatives singular at 0; seeding the
  // panels keeps the adaptive rule honest there.
  const std::vector<double> panels{0.0, 1e-3, 1.0, 5.0, 20.0,
                                   50.0, 100.0, 200.0, 400.0};
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
    AdaptiveSimpson quad{integrand, 1e-9 / static_cast<double>(panels.size())};
    value += quad.run(panels[i], panels[i + 1]);
    error += quad.error;
  }
  if (error > 1e-6) {
    throw QuadratureNotConverged("yao variance error estimate " +
                                 std::to_string(error));
  }
  return value;
}

namespace {

// LHS of the c_k equation minus 2, in a form that stays finite on (0, 1):
// only (x+1)^k can overflow, and then the sign is still correct.
double ck_equation(double x, int k) {
  const double kd = static_cast<double>(k);
  const double a = std::exp(kd * std::log1p(x));
  const double b = std::exp(kd * std::log1p(-x));
  const double xk1 = x > 0.0 ? std::exp((kd - 1.0) * std::log(x)) : 0.0;
  return a - b + 2.0 * kd * xk1 * (x - 1.0) - 2.0;
}

double ck_derivative(double x, int k) {
  const double kd = static_cast<double>(k);
  const double a = std::exp((kd - 1.0) * std::log1p(x));
  const double b = std::exp((kd - 1.0) * std::log1p(-x));
  const double xk1 = x > 0.0 ? std::exp((kd - 1.0) * std::log(x)) : 0.0;
  const double xk2 = x > 0.0 ? std::exp((kd - 2.0) * std::log(x)) : 0.0;
  return kd * (a + b) + 2.0 * kd * (kd * xk1 - (kd - 1.0) * xk2);
}

}  // namespace

CkSolution ck_root(int k) {
  if (k < 2 || k % 2 != 0 || k > 10000) {
    throw ValidationError(
        "c_k is defined for even k in [2, 10000], got " + std::to_string(k));
  }
  double lo = 0.0;
  double hi = 1.0;
  const double flo = ck_equation(lo, k);
  const double fhi = ck_equation(hi, k);
  if (!(flo < 0.0) || !(fhi > 0.0)) {
    throw BracketFailure("c_k bracket endpoints do not straddle zero");
  }
  // The equation's LHS must be increasing across the bracket; a violation
  // would mean the root is not unique.
  double prev = flo;
  for (int i = 1; i <= 32; ++i) {
    const double x = static_cast<double>(i) / 32.0;
    const double fx = ck_equation(x, k);
    if (fx < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
      throw NumericalError("c_k equation not monotone on the bracket");
    }
    prev = fx;
  }

  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (ck_equation(mid, k) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  double root = 0.5 * (lo + hi);
  for (int iter = 0; iter < 4; ++iter) {
    const double step = ck_equation(root, k) / ck_derivative(root, k);
    const double next = root - step;
    if (!(next > 0.0) || !(next < 1.0)) break;
    root = next;
  }

  CkSolution solution{k, root, std::abs(ck_equation(root, k))};
  const double scale =
      std::max(1.0, std::exp(static_cast<double>(k) * std::log1p(root)));
  if (solution.residual > 1e-12 * scale) {
    throw NumericalError("c_k residual " + std::to_string(solution.residual) +
                         " above tolerance");
  }
  return solution;
}

double ck_asymptotic(int k) {
  if (k < 1) {
    throw ValidationError("c_k asymptotic needs k >= 1");
  }
  return sinh_one_root() / static_cast<double>(k);
}

double sinh_one_root() { return std::log1p(std::numbers::sqrt2); }

double crossover_h0() { return (std::sqrt(73.0) - 1.0) / 12.0; }

double alpha_lower_bound(Hurst hurst) {
  const double h = hurst.value();
  if (h == 1.0) return 0.5;
  const double rational =
      (4.0 * h * h + 2.0 * h - 1.0) / (2.0 * (2.0 * h + 2.0) * (2.0 * h + 1.0));
  return std::max(0.125, rational);
}

double integrated_fbm_variance(double t, Hurst hurst) {
  if (!(t > 0.0)) {
    throw ValidationError("integrated variance needs t > 0");
  }
  const double p = hurst.two_h() + 2.0;
  return std::pow(t, p) / p;
}

double lemma2_bound(double t, double r, Hurst hurst) {
  if (!(t > 0.0) || !(r > 0.0)) {
    throw ValidationError("Jensen bound needs t > 0 and r > 0");
  }
  const double var = integrated_fbm_variance(t, hurst);
  return std::pow(t, -r) * std::exp(r * r / (2.0 * t * t) * var);
}

}  // namespace fbm
