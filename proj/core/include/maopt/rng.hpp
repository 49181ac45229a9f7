// SPDX-License-Identifier: Apache-2.0
#ifndef MAOPT_RNG_HPP
#define MAOPT_RNG_HPP

#include <complex>
#include <cstdint>
#include <limits>

namespace maopt {

/// Counter-based random substream. Each (seed, stream, substream) triple
/// yields an independent, platform-stable sequence, so Monte Carlo trials
/// can be partitioned across workers in any order without changing the
/// drawn values. The generator is a splitmix64 walk from a mixed key;
/// Gaussians come from Box-Muller on 53-bit uniforms.
class SubstreamRng {
  public:
    explicit SubstreamRng(std::uint64_t seed, std::uint64_t stream = 0,
                          std::uint64_t substream = 0)
        : state_(mix(mix(mix(seed) ^ stream) ^ substream)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix_output(state_);
    }

    /// Uniform double in (0, 1].
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_uniform(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double next_gaussian();

    /// Circularly symmetric complex Gaussian, zero mean, unit total variance.
    std::complex<double> next_cn01() {
        const double re = next_gaussian();
        const double im = next_gaussian();
        return {re * kInvSqrt2, im * kInvSqrt2};
    }

    // UniformRandomBitGenerator interface
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<std::uint64_t>::max();
    }
    result_type operator()() { return next_u64(); }

  private:
    static constexpr double kInvSqrt2 = 0.70710678118654752440;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        return mix_output(z);
    }
    static std::uint64_t mix_output(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace maopt

#endif
