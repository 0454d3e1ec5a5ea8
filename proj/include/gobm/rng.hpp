#pragma once

#include <array>
#include <cstdint>

namespace gobm {

/// xoshiro256++ with splitmix64 seeding and an independent stream per
/// (seed, stream) pair. Gaussian variates come from a cached Box-Muller
/// transform, so the draw sequence is fixed by the stream alone and paths
/// are bit-reproducible across platforms and thread schedules.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    /// Uniform on (0, 1].
    double next_uniform();

    /// Standard normal variate.
    double next_gaussian();

  private:
    std::array<std::uint64_t, 4> state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// splitmix64 step: advances the state and returns the next output word.
std::uint64_t splitmix64(std::uint64_t& state);

} // namespace gobm
