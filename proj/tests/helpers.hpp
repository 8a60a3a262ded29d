#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>

// Shared test-side oracles, independent of the library's numerics.

namespace testutil {

// Plain recursive adaptive Simpson; used as the quadrature oracle.
inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol,
                               int depth = 0) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const auto simpson = [](double lo, double hi, double flo, double fmid,
                          double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };
  std::function<double(double, double, double, double, double, double,
                       double, int)>
      rec = [&](double lo, double hi, double flo, double fmid, double fhi,
                double whole, double eps, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(lo, mid, flo, flm, fmid);
    const double right = simpson(mid, hi, fmid, frm, fhi);
    const double delta = left + right - whole;
    if (d >= 40 || std::abs(delta) <= 15.0 * eps) {
      return left + right + delta / 15.0;
    }
    return rec(lo, mid, flo, flm, fmid, left, 0.5 * eps, d + 1) +
           rec(mid, hi, fmid, frm, fhi, right, 0.5 * eps, d + 1);
  };
  return rec(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth);
}

// Streaming estimate of an n x n covariance matrix from mean-zero samples.
class SampleCovariance {
public:
  explicit SampleCovariance(Eigen::Index n)
      : sum_(Eigen::MatrixXd::Zero(n, n)), count_(0) {}

  void add(const Eigen::VectorXd& x) {
    sum_.selfadjointView<Eigen::Lower>().rankUpdate(x);
    ++count_;
  }

  [[nodiscard]] Eigen::MatrixXd estimate() const {
    Eigen::MatrixXd full = sum_.selfadjointView<Eigen::Lower>();
    return full / static_cast<double>(count_);
  }

  [[nodiscard]] long count() const { return count_; }

private:
  Eigen::MatrixXd sum_;
  long count_;
};

// Gaussian-theory standard error of a sample covariance entry.
inline double cov_entry_se(double rii, double rjj, double rij, long n) {
  return std::sqrt((rii * rjj + rij * rij) / static_cast<double>(n));
}

}  // namespace testutil
