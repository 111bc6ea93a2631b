#pragma once

#include <span>
#include <utility>
#include <vector>

#include "jstab/control_functions.hpp"
#include "jstab/map_checks.hpp"
#include "jstab/perturbation.hpp"

namespace jstab {

enum class Verdict { Pass, Fail, Diverged };
const char* to_string(Verdict v);

struct DirectRecoveryReport {
    int iterations = 0;                 // N
    std::vector<double> cauchy_trace;   // worst per-step probe delta, one per step
    double bound_ratio_max = 0.0;       // vs the summed control Phi(a, a, 0)
    double tight_bound_ratio_max = 0.0; // vs the telescoped per-step bound, reported only
    double linearity_residual = 0.0;    // max of additive and scalar residuals
    double jensen_residual = 0.0;
    double derivation_defect_max = 0.0;
    Verdict verdict = Verdict::Fail;
};

// Scaling limit D(a) = r^{-N} f(r^N a). The returned report carries the
// Cauchy trace over the shared probe set; remaining fields are filled by the
// verification passes below (or by run_direct_experiment).
std::pair<MapHandle, DirectRecoveryReport> direct_recover(const MapHandle& f, double r,
                                                          int iterations);

// max over samples of |f(a) - D(a)| / Phi(a, a, 0).
double verify_stability_bound(const MapHandle& f, const MapHandle& D, const PowerControl& ctrl,
                              std::span<const ComplexMatrix> sample_points);

// Same gap against the sharper telescoped constant
// sum_{k>=1} (1/(2 r^k)) phi(r^k a, 0, 0) = theta r^{p-1} / (2 (1 - r^{p-1})) |a|^p.
double verify_tight_stability_bound(const MapHandle& f, const MapHandle& D,
                                    const PowerControl& ctrl,
                                    std::span<const ComplexMatrix> sample_points);

// Linearity, scalar-compatibility and Jensen residuals of a recovered map.
ResidualSummary verify_linearity_and_jensen(const MapHandle& D, double r,
                                            const SampleSpec& samples);

// Per-step contraction of the Cauchy trace against the certified control:
// worst over steps and probes of delta_k / ((1/(2r)) r^{-k} phi(r^{k+1} a, 0, 0)).
double cauchy_contraction_ratio(const MapHandle& f, const PowerControl& ctrl, double r,
                                int iterations);

// Superstability: a scale-homogeneous f satisfying the hypothesis must already
// be a derivation up to the decayed bound s^{-N} phi(0, 0, s^N c).
Verdict superstability_check(const MapHandle& f, const ControlFn& control, double s, double r,
                             const SampleSpec& samples, int N);

// Convenience: recovery plus all verification passes in one report.
struct DirectExperiment {
    MapHandle recovered;
    DirectRecoveryReport report;
};
DirectExperiment run_direct_experiment(const MapHandle& f, const PowerControl& ctrl, int iterations,
                                       const SampleSpec& samples);

} // namespace jstab
