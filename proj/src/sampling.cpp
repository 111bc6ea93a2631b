#include "jstab/sampling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jstab/errors.hpp"
#include "jstab/rng.hpp"

namespace jstab {

void validate(const SampleSpec& spec) {
    if (spec.count < 1) throw InvalidArgumentError("SampleSpec: count must be positive");
    if (!(spec.norm_lo > 0.0) || !(spec.norm_hi >= spec.norm_lo)) {
        throw InvalidArgumentError("SampleSpec: need 0 < norm_lo <= norm_hi");
    }
    if (spec.mu_count < 4 || spec.mu_count % 4 != 0) {
        throw InvalidArgumentError("SampleSpec: mu_count must be a positive multiple of 4 so the"
                                   " unit-circle grid contains 1 and i");
    }
}

std::vector<Complex> unit_circle_grid(int count) {
    if (count < 4 || count % 4 != 0) {
        throw InvalidArgumentError("unit_circle_grid: count must be a positive multiple of 4");
    }
    std::vector<Complex> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / count;
        grid.emplace_back(std::cos(angle), std::sin(angle));
    }
    // Pin the axis points exactly; cos/sin rounding would otherwise leave
    // them a few ulps off the circle's distinguished elements.
    grid[0] = Complex(1.0, 0.0);
    grid[count / 4] = Complex(0.0, 1.0);
    grid[count / 2] = Complex(-1.0, 0.0);
    grid[3 * count / 4] = Complex(0.0, -1.0);
    return grid;
}

std::vector<ComplexMatrix> probe_members(const JStarAlgebraModel& model) {
    constexpr std::uint64_t kProbeSeed = 0x70726f6265ull;
    constexpr int kProbeCount = 8;
    constexpr double kNorms[] = {0.25, 1.0, 4.0};
    std::vector<ComplexMatrix> probes;
    probes.reserve(kProbeCount);
    for (int k = 0; k < kProbeCount; ++k) {
        auto gen = rng_stream(kProbeSeed, static_cast<std::uint64_t>(k));
        probes.push_back(model.random_member(kNorms[k % 3], gen));
    }
    return probes;
}

std::vector<ComplexMatrix> sample_members(const JStarAlgebraModel& model, const SampleSpec& spec) {
    validate(spec);
    std::vector<ComplexMatrix> members;
    members.reserve(static_cast<std::size_t>(spec.count));
    for (int k = 0; k < spec.count; ++k) {
        auto gen = rng_stream(spec.seed, 0x6d656d62ull, static_cast<std::uint64_t>(k));
        const double norm = log_uniform(gen, spec.norm_lo, spec.norm_hi);
        members.push_back(model.random_member(norm, gen));
    }
    return members;
}

std::vector<SampleTriple> sample_triples(const JStarAlgebraModel& model, const SampleSpec& spec) {
    validate(spec);
    std::vector<SampleTriple> triples;
    triples.reserve(static_cast<std::size_t>(spec.count));
    for (int k = 0; k < spec.count; ++k) {
        auto gen = rng_stream(spec.seed, 0x74726970ull, static_cast<std::uint64_t>(k));
        const double na = log_uniform(gen, spec.norm_lo, spec.norm_hi);
        const double nb = log_uniform(gen, spec.norm_lo, spec.norm_hi);
        const double nc = log_uniform(gen, spec.norm_lo, spec.norm_hi);
        SampleTriple t{model.random_member(na, gen), model.random_member(nb, gen),
                       model.random_member(nc, gen)};
        triples.push_back(std::move(t));
    }
    return triples;
}

} // namespace jstab
