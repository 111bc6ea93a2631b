#pragma once

#include <cstdint>
#include <vector>

#include "jstab/control_functions.hpp"
#include "jstab/jstar_algebra.hpp"

namespace jstab {

// Shared description of a randomized sample set. Norms are drawn
// log-uniformly from [norm_lo, norm_hi]; each sample owns an RNG stream
// derived from (seed, index), so results do not depend on evaluation order.
struct SampleSpec {
    int count = 1000;
    std::uint64_t seed = 0;
    double norm_lo = 0.01;
    double norm_hi = 8.0;
    int mu_count = 16;
};

void validate(const SampleSpec& spec);

// Uniform grid on the unit circle starting at 1. count must be divisible by
// 4 so the grid contains both 1 and i exactly.
std::vector<Complex> unit_circle_grid(int count);

// Eight fixed members at norms cycling through {0.25, 1, 4}; the shared probe
// set both recovery engines evaluate maps on.
std::vector<ComplexMatrix> probe_members(const JStarAlgebraModel& model);

std::vector<ComplexMatrix> sample_members(const JStarAlgebraModel& model, const SampleSpec& spec);

std::vector<SampleTriple> sample_triples(const JStarAlgebraModel& model, const SampleSpec& spec);

} // namespace jstab
