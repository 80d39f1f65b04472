#pragma once

// Counter-based random streams.  A draw is a pure function of
// (seed, stream id, counter), so parallel Monte Carlo workers produce the
// same numbers regardless of scheduling or worker count.

#include <cmath>
#include <complex>
#include <cstdint>

namespace ehfdr::num {

namespace detail {

// splitmix64 output function (Stafford mix13)
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

}  // namespace detail

/// One logical stream of i.i.d. variates addressed by a 64-bit counter.
class CounterStream {
public:
    CounterStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_(detail::mix64(seed + detail::golden) ^
               detail::mix64(stream_id * detail::golden + 0x632BE59BD9B4E019ULL)) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return detail::mix64(key_ + counter * detail::golden);
    }

    /// Uniform on the open interval (0,1).
    double uniform(std::uint64_t counter) const {
        return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Box-Muller pair of standard normals; consumes counters c and c+1.
    void normal_pair(std::uint64_t counter, double& z0, double& z1) const {
        const double u1 = uniform(counter);
        const double u2 = uniform(counter + 1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        z0 = r * std::cos(2.0 * M_PI * u2);
        z1 = r * std::sin(2.0 * M_PI * u2);
    }

    /// Circularly-symmetric complex Gaussian with E{|h|^2} = mean_power;
    /// consumes counters c and c+1.
    std::complex<double> complex_gaussian(std::uint64_t counter,
                                          double mean_power) const {
        double z0, z1;
        normal_pair(counter, z0, z1);
        const double s = std::sqrt(0.5 * mean_power);
        return {s * z0, s * z1};
    }

private:
    std::uint64_t key_;
};

}  // namespace ehfdr::num
