#pragma once

#include <cstdint>

namespace calib {

// xoshiro256++ seeded through splitmix64. Fixed algorithm so that fixtures
// regenerate bit-identically on any platform; std:: distributions are
// implementation-defined and are deliberately not used.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0, 1).
    double uniform();
    // Uniform in [lo, hi).
    double uniform(double lo, double hi);
    // Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n);
    // Standard normal via Box-Muller (one value per call, no caching, so the
    // draw sequence is stateless and easy to reason about).
    double normal();
    double normal(double mean, double sigma);

    // Decorrelated child stream, e.g. one per pose.
    Rng child(std::uint64_t stream) const;

  private:
    std::uint64_t s_[4];
    std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t& state);

} // namespace calib
