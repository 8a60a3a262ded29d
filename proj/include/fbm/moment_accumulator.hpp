#pragma once

#include <cmath>
#include <cstdint>

#include "fbm/errors.hpp"

namespace fbm {

// Single-pass running moments up to order four with a mergeable state
// (Pebay's update formulas). Central moment accessors use the biased 1/n
// normalisation; variance() is the unbiased estimator.
class MomentAccumulator {
public:
  void add(double x) noexcept {
    const double n1 = static_cast<double>(count_);
    count_ += 1;
    const double n = static_cast<double>(count_);
    const double delta = x - mean_;
    const double delta_n = delta / n;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n1;
    mean_ += delta_n;
    m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) +
           6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
    m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
    m2_ += term1;
  }

  void merge(const MomentAccumulator& other) noexcept {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double n = na + nb;
    const double delta = other.mean_ - mean_;
    const double d_n = delta / n;

    const double m2 = m2_ + other.m2_ + delta * d_n * na * nb;
    const double m3 = m3_ + other.m3_ +
                      delta * d_n * d_n * na * nb * (na - nb) +
                      3.0 * d_n * (na * other.m2_ - nb * m2_);
    const double m4 =
        m4_ + other.m4_ +
        delta * d_n * d_n * d_n * na * nb * (na * na - na * nb + nb * nb) +
        6.0 * d_n * d_n * (na * na * other.m2_ + nb * nb * m2_) +
        4.0 * d_n * (na * other.m3_ - nb * m3_);

    mean_ += nb * d_n;
    m2_ = m2;
    m3_ = m3;
    m4_ = m4;
    count_ += other.count_;
  }

  [[nodiscard]] std::int64_t count() const noexcept { return count_; }

  [[nodiscard]] double mean() const {
    require(1);
    return mean_;
  }

  [[nodiscard]] double variance() const {
    require(2);
    return std::max(m2_, 0.0) / static_cast<double>(count_ - 1);
  }

  [[nodiscard]] double central_moment(int order) const {
    require(1);
    const double n = static_cast<double>(count_);
    switch (order) {
      case 2:
        return std::max(m2_, 0.0) / n;
      case 3:
        return m3_ / n;
      case 4:
        return std::max(m4_, 0.0) / n;
      default:
        throw ValidationError("central moments tracked up to order 4");
    }
  }

  // Uncentered second moment, mean(x^2).
  [[nodiscard]] double raw_second_moment() const {
    require(1);
    return std::max(m2_, 0.0) / static_cast<double>(count_) + mean_ * mean_;
  }

  [[nodiscard]] double se_of_mean() const {
    return std::sqrt(variance() / static_cast<double>(count_));
  }

  // Standard error of a variance estimate: sqrt((m4 - m2^2) / n) with
  // biased central sample moments.
  [[nodiscard]] double se_of_variance() const {
    require(2);
    const double m2 = central_moment(2);
    const double m4 = central_moment(4);
    return std::sqrt(std::max(m4 - m2 * m2, 0.0) /
                     static_cast<double>(count_));
  }

private:
  void require(std::int64_t min_count) const {
    if (count_ < min_count) {
      throw ValidationError("moment accumulator needs more samples");
    }
  }

  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

}  // namespace fbm
