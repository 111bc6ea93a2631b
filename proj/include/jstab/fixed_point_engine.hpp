#pragma once

#include <optional>
#include <vector>

#include "jstab/direct_engine.hpp"

namespace jstab {

// Supremum estimate of |g - h| measured in units of theta |a|^p; the true
// infimum constant is not computable, so the value is a sampled lower bound
// and +infinity is declared only on the structural blow-up signals below.
struct GeneralizedDistance {
    double value = 0.0; // +infinity when the maps are at infinite distance
    std::vector<ComplexMatrix> witnesses;

    bool is_infinite() const;
};

enum class FixedPointBranch { AlwaysInfinite, EventuallyFinite };

const char* to_string(FixedPointBranch branch);

// (J h)(a) = h(r a) / r. Scaling-invariant maps are its fixed points.
MapHandle apply_J(const MapHandle& h, double r);

// Sampled sup of |g(a) - h(a)| / (theta |a|^p) over a deterministic point set:
// a geometric norm ladder with directions shared across rungs, random members
// arranged on geometric orbits, probes shrinking toward 0, and the origin.
// Infinite when the origin gap exceeds 1e-10, any ratio exceeds 1e12, or the
// ratio grows monotonically along eight consecutive shrinking probes.
GeneralizedDistance generalized_distance(const MapHandle& g, const MapHandle& h,
                                         const PowerControl& ctrl, const SampleSpec& samples);

struct FixedPointReport {
    FixedPointBranch branch = FixedPointBranch::AlwaysInfinite;
    int m0 = -1; // first step with finite successive distance, -1 if none
    std::vector<double> distance_trace;        // d(J^k f, J^{k+1} f)
    std::vector<double> contraction_estimates; // trace[k+1] / trace[k]
    double final_bound_ratio = 0.0;   // d(f, D) * (1 - L) / L
    double sharper_bound_ratio = 0.0; // d(f, D) * 2 (1 - L) / L
    double linearity_residual = 0.0;
    double jensen_residual = 0.0;
    double derivation_defect_max = 0.0;
    Verdict verdict = Verdict::Diverged;
};

struct AlternativeResult {
    std::optional<MapHandle> fixed_point; // absent on the AlwaysInfinite branch
    FixedPointReport report;
};

// Iterates J on f, classifying which branch of the alternative occurred.
// On the finite branch the fixed point is J^{max_iter} f and the report
// checks the per-step contraction (factor at most L within 5%), the distance
// bound d(f, D) <= L / (1 - L) alongside the sharper halved variant, and the
// recovered map's own residuals. On the infinite branch no map is returned
// and the verdict is Diverged.
AlternativeResult run_alternative(const MapHandle& f, double r, const PowerControl& ctrl, double L,
                                  int max_iter, const SampleSpec& samples);

// Closed-form stability constant 2^p theta / (2 - 2^p) |a|^p for the r = 2
// family; algebraically identical to L / (1 - L) theta |a|^p with L = 2^{p-1}.
double stability_constant(const PowerControl& ctrl, double a_norm);

// For a map already homogeneous of its declared degree under a control that
// satisfies the contraction condition, the map itself must be a derivation:
// Pass exactly when its own defect and linearity residuals sit at rounding
// level (1e-9 scale-relative).
Verdict superstability_via_fixed_point(const MapHandle& f, const PowerControl& ctrl, double r,
                                       double L, const SampleSpec& samples);

} // namespace jstab
