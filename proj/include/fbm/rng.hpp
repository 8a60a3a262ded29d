#pragma once

#include <cstdint>
#include <random>

namespace fbm {

namespace detail {

// SplitMix64 step; used only to key per-trajectory streams.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Per-trajectory random stream. Streams are derived from (campaign seed,
// trajectory index) alone, so a trajectory's draws do not depend on thread
// count or scheduling.
class RngStream {
public:
  static RngStream for_trajectory(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
    const std::uint64_t w0 = detail::splitmix64(state);
    const std::uint64_t w1 = detail::splitmix64(state);
    const std::uint64_t w2 = detail::splitmix64(state);
    const std::uint64_t w3 = detail::splitmix64(state);
    std::seed_seq seq{
        static_cast<std::uint32_t>(w0), static_cast<std::uint32_t>(w0 >> 32),
        static_cast<std::uint32_t>(w1), static_cast<std::uint32_t>(w1 >> 32),
        static_cast<std::uint32_t>(w2), static_cast<std::uint32_t>(w2 >> 32),
        static_cast<std::uint32_t>(w3), static_cast<std::uint32_t>(w3 >> 32)};
    return RngStream(seq);
  }

  double normal() { return normal_(engine_); }
  double exponential() { return exponential_(engine_); }
  double uniform() { return uniform_(engine_); }

  std::mt19937_64& engine() noexcept { return engine_; }

private:
  explicit RngStream(std::seed_seq& seq) : engine_(seq) {}

  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Deterministic sub-seed for auxiliary studies that sample their own paths
// (distinct from every trajectory stream of the parent campaign).
inline std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t state = seed ^ (tag * 0x9E3779B97F4A7C15ULL);
  detail::splitmix64(state);
  return detail::splitmix64(state);
}

}  // namespace fbm
