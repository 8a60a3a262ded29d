#pragma once

#include <cmath>
#include <string>

#include "fbm/errors.hpp"

namespace fbm {

// Hurst parameter H of fractional Brownian motion, constrained to (0, 1].
// H = 1/2 is standard Brownian motion, H = 1 the degenerate line t*g.
class Hurst {
public:
  explicit Hurst(double value) : value_(value) {
    if (!(value > 0.0) || !(value <= 1.0) || !std::isfinite(value)) {
      throw ValidationError("Hurst parameter must lie in (0, 1], got " +
                            std::to_string(value));
    }
  }

  [[nodiscard]] double value() const noexcept { return value_; }

  // The exponent 2H that drives variance growth E W_t^2 = |t|^{2H}.
  [[nodiscard]] double two_h() const noexcept { return 2.0 * value_; }

  // H = 1 collapses the process to W_t = t*g for a single normal g.
  [[nodiscard]] bool is_degenerate() const noexcept { return value_ == 1.0; }

  friend bool operator==(const Hurst& a, const Hurst& b) noexcept {
    return a.value_ == b.value_;
  }

private:
  double value_;
};

}  // namespace fbm
