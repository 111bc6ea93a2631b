#pragma once

#include <cstdint>
#include <optional>

#include "jstab/control_functions.hpp"
#include "jstab/derivations.hpp"
#include "jstab/sampling.hpp"

namespace jstab {

// Bounded bump supported on the operator-norm annulus
// rho_inner <= |a| <= rho_outer, pointing along a fixed unit-norm member.
struct AnnulusBumpSpec {
    double epsilon;    // overall amplitude, >= 0
    double rho_inner;  // 0 < rho_inner < rho_outer
    double rho_outer;
    ComplexMatrix direction; // member of the model, op_norm 1 within 1e-12
};

// g(a) = epsilon * bump(|a|) * sin(Re first-basis-coefficient(a)) * direction.
// Vanishes at 0 and outside the annulus; |g(a)| <= epsilon everywhere; the
// profile peaks at 1 on the annulus midpoint.
MapHandle make_annulus_perturbation(std::shared_ptr<const JStarAlgebraModel> model,
                                    const AnnulusBumpSpec& spec, std::uint64_t seed);

// f = d + g. Both handles must share a domain and fix 0.
MapHandle perturb(const MapHandle& d, const MapHandle& g);

struct WorstPoint {
    ComplexMatrix a;
    ComplexMatrix b;
    ComplexMatrix c;
    Complex mu;
    double lhs = 0.0;
    double control_value = 0.0;
    double ratio = 0.0;
};

struct CertificationResult {
    double theta_required = 0.0; // smallest theta that dominates every sampled point
    bool satisfied = false;      // theta_required <= ctrl.theta and origin check passed
    std::optional<WorstPoint> worst;
};

// Samples the combined Jensen-plus-derivation defect of f against the power
// control's shape |a|^p + |b|^p + |c|^p and reports the empirical theta it
// would take to dominate it. Sampling plus local hill-climb refinement around
// the worst point; the origin is always probed. Certification is empirical,
// not a proof.
CertificationResult certify_hypothesis(const MapHandle& f, const PowerControl& ctrl,
                                       const SampleSpec& samples);

} // namespace jstab
