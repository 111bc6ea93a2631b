#include "jstab/map_checks.hpp"

#include <algorithm>
#include <cmath>

#include "jstab/rng.hpp"

namespace jstab {

double ResidualSummary::worst() const {
    return std::max({additive, scalar, jensen, derivation});
}

ResidualSummary sample_residuals(const MatrixMap& map, const JStarAlgebraModel& model, double r,
                                 const SampleSpec& samples) {
    validate(samples);
    const std::vector<Complex> mu_grid = unit_circle_grid(samples.mu_count);
    ResidualSummary out;
    for (int k = 0; k < samples.count; ++k) {
        auto gen = rng_stream(samples.seed, 0x72657369ull, static_cast<std::uint64_t>(k));
        const double nx = log_uniform(gen, samples.norm_lo, samples.norm_hi);
        const double ny = log_uniform(gen, samples.norm_lo, samples.norm_hi);
        const ComplexMatrix x = model.random_member(nx, gen);
        const ComplexMatrix y = model.random_member(ny, gen);
        const ComplexMatrix fx = map(x);
        const ComplexMatrix fy = map(y);

        const double xnorm = op_norm(x);
        const double ynorm = op_norm(y);
        out.additive = std::max(out.additive,
                                op_norm(map(x + y) - fx - fy) / (1.0 + xnorm + ynorm));
        for (const Complex& mu : mu_grid) {
            out.scalar = std::max(out.scalar, op_norm(map(mu * x) - mu * fx) / (1.0 + xnorm));
            out.jensen = std::max(out.jensen, jensen_defect(map, x, y, UnitScalar(mu), r) /
                                                  (1.0 + xnorm + ynorm));
        }
        out.derivation =
            std::max(out.derivation,
                     derivation_defect(map, x) / (1.0 + xnorm * xnorm * xnorm));
    }
    return out;
}

double homogeneity_residual(const MatrixMap& map, const JStarAlgebraModel& model, double s,
                            const SampleSpec& samples) {
    validate(samples);
    double worst = 0.0;
    for (int k = 0; k < samples.count; ++k) {
        auto gen = rng_stream(samples.seed, 0x686f6d6full, static_cast<std::uint64_t>(k));
        const double norm = log_uniform(gen, samples.norm_lo, samples.norm_hi);
        const ComplexMatrix a = model.random_member(norm, gen);
        const ComplexMatrix fa = map(a);
        worst = std::max(worst, op_norm(map(s * a) - s * fa) / (1.0 + op_norm(fa)));
    }
    return worst;
}

} // namespace jstab
