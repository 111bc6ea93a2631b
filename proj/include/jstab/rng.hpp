#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace jstab {

// Derives an independent engine from (seed, stream, substream) so that
// per-sample streams do not depend on evaluation order.
inline std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t stream = 0,
                                  std::uint64_t substream = 0) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
        static_cast<std::uint32_t>(substream), static_cast<std::uint32_t>(substream >> 32)};
    return std::mt19937_64(seq);
}

// Standard complex Gaussian: independent N(0,1) real and imaginary parts.
inline std::complex<double> complex_normal(std::mt19937_64& gen) {
    std::normal_distribution<double> nd(0.0, 1.0);
    const double re = nd(gen);
    const double im = nd(gen);
    return {re, im};
}

inline double log_uniform(std::mt19937_64& gen, double lo, double hi) {
    std::uniform_real_distribution<double> ud(std::log(lo), std::log(hi));
    return std::exp(ud(gen));
}

} // namespace jstab
