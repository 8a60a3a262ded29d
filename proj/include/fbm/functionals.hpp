#pragma once

#include <Eigen/Core>
#include <map>
#include <span>

#include "fbm/path.hpp"
#include "fbm/time_grid.hpp"

namespace fbm {

// Parameter window on which log beta(m) is guaranteed finite.
inline constexpr double kLogBetaWindow = 0.125;

// log Z_t = W_t - |t|^{2H} / 2 per node. Kept in the log domain throughout:
// at the grid edges log Z reaches magnitudes that underflow exp().
struct LogLikelihoodField {
  TimeGridPtr grid;
  Eigen::VectorXd log_z;
};

LogLikelihoodField log_likelihood_field(const FbmPath& path);

// Normalised posterior q_t = Z_t / integral of Z, evaluated by
// max-subtracted exponentiation. log_b0 holds log of the Z quadrature.
struct PosteriorDensity {
  TimeGridPtr grid;
  Eigen::VectorXd q;
  double log_b0 = 0.0;
};

PosteriorDensity posterior(const LogLikelihoodField& field);

// Pitman estimate: quadrature of t * q_t.
double pitman_estimate(const PosteriorDensity& density);

// Grid node maximising log Z. Ties break toward the smallest |t|, then the
// negative node, keeping reversal an exact symmetry.
double mle_argmax(const LogLikelihoodField& field);

// A_p = quadrature of |t|^p q_t, p >= 1.
double absolute_moment(const PosteriorDensity& density, double p);

// log of the quadrature of e^{m t} Z_t, |m| < 1/8.
double log_beta(const LogLikelihoodField& field, double m);

// Per-trajectory bundle. a_moments is keyed by the order p, log_beta by m.
struct PathFunctionals {
  double zeta = 0.0;
  double xi = 0.0;
  std::map<double, double> a_moments;
  std::map<double, double> log_beta;
  double log_b0 = 0.0;
};

// Computes everything with a single posterior construction.
PathFunctionals path_functionals(const FbmPath& path,
                                 std::span<const double> p_orders,
                                 std::span<const double> m_values);

}  // namespace fbm
