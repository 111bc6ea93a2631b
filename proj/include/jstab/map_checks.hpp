#pragma once

#include <span>

#include "jstab/derivations.hpp"
#include "jstab/sampling.hpp"

namespace jstab {

// Scale-relative residual summary for a map: how far it sits from being a
// linear, Jensen-respecting derivation. Each component is normalized by
// (1 + the natural scale of its inputs), so thresholds read uniformly.
struct ResidualSummary {
    double additive = 0.0;   // |D(x+y) - D(x) - D(y)| / (1 + |x| + |y|)
    double scalar = 0.0;     // |D(mu a) - mu D(a)| / (1 + |a|)
    double jensen = 0.0;     // jensen defect / (1 + |a| + |b|)
    double derivation = 0.0; // derivation defect / (1 + |c|^3)
    double worst() const;
};

ResidualSummary sample_residuals(const MatrixMap& map, const JStarAlgebraModel& model, double r,
                                 const SampleSpec& samples);

// Empirical check of f(s a) = s f(a) on sampled members; returns the worst
// residual |f(s a) - s f(a)| / (1 + |f(a)|).
double homogeneity_residual(const MatrixMap& map, const JStarAlgebraModel& model, double s,
                            const SampleSpec& samples);

} // namespace jstab
