#include "fbm/functionals.hpp"

#include <cmath>
#include <string>

#include "fbm/errors.hpp"

namespace fbm {

LogLikelihoodField log_likelihood_field(const FbmPath& path) {
  const double p = path.hurst.two_h();
  LogLikelihoodField field{path.grid, Eigen::VectorXd(path.values.size())};
  field.log_z =
      path.values.array() - 0.5 * path.grid->nodes.array().abs().pow(p);
  return field;
}

PosteriorDensity posterior(const LogLikelihoodField& field) {
  const TimeGrid& grid = *field.grid;
  PosteriorDensity density{field.grid, Eigen::VectorXd(field.log_z.size()),
                           0.0};
  const double shift = field.log_z.maxCoeff();
  density.q = (field.log_z.array() - shift).exp();
  const double mass = grid.weights.dot(density.q);
  if (!(mass > 0.0)) {
    throw DegenerateMass("posterior normaliser underflowed to zero");
  }
  density.q /= mass;
  density.log_b0 = shift + std::log(mass);
  return density;
}

double pitman_estimate(const PosteriorDensity& density) {
  const TimeGrid& grid = *density.grid;
  return (grid.weights.array() * grid.nodes.array() * density.q.array()).sum();
}

double mle_argmax(const LogLikelihoodField& field) {
  const TimeGrid& grid = *field.grid;
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < field.log_z.size(); ++j) {
    const double v = field.log_z[j];
    const double b = field.log_z[best];
    if (v > b) {
      best = j;
    } else if (v == b) {
      const double tj = std::abs(grid.nodes[j]);
      const double tb = std::abs(grid.nodes[best]);
      if (tj < tb || (tj == tb && grid.nodes[j] < grid.nodes[best])) {
        best = j;
      }
    }
  }
  return grid.nodes[best];
}

double absolute_moment(const PosteriorDensity& density, double p) {
  if (!(p >= 1.0)) {
    throw ValidationError("absolute moment order must be >= 1, got " +
                          std::to_string(p));
  }
  const TimeGrid& grid = *density.grid;
  return (grid.weights.array() * grid.nodes.array().abs().pow(p) *
          density.q.array())
      .sum();
}

double log_beta(const LogLikelihoodField& field, double m) {
  if (!(std::abs(m) < kLogBetaWindow)) {
    throw ParameterOutOfRange("log beta parameter |m| must be < 1/8, got " +
                              std::to_string(m));
  }
  const TimeGrid& grid = *field.grid;
  const Eigen::ArrayXd shifted = field.log_z.array() + m * grid.nodes.array();
  const double top = shifted.maxCoeff();
  const double mass = (grid.weights.array() * (shifted - top).exp()).sum();
  return top + std::log(mass);
}

PathFunctionals path_functionals(const FbmPath& path,
                                 std::span<const double> p_orders,
                                 std::span<const double> m_values) {
  const LogLikelihoodField field = log_likelihood_field(path);
  const PosteriorDensity density = posterior(field);

  PathFunctionals out;
  out.zeta = pitman_estimate(density);
  out.xi = mle_argmax(field);
  out.log_b0 = density.log_b0;
  for (const double p : p_orders) {
    out.a_moments[p] = absolute_moment(density, p);
  }
  for (const double m : m_values) {
    out.log_beta[m] = m == 0.0 ? density.log_b0 : log_beta(field, m);
  }
  return out;
}

}  // namespace fbm
