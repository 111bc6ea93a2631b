#include "jstab/direct_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jstab/errors.hpp"
#include "jstab/sampling.hpp"

namespace jstab {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Diverged: return "DIVERGED";
    }
    throw InvalidArgumentError("to_string: unknown Verdict");
}

namespace {

constexpr double kScaleCeiling = 1e300;

void require_iterating_args(const MapHandle& f, double r, int iterations) {
    if (!f.domain) throw InvalidArgumentError("direct_recover: map has no domain");
    if (!(r > 1.0)) throw InvalidArgumentError("direct_recover: r must exceed 1");
    if (iterations < 1) throw InvalidArgumentError("direct_recover: need at least one iteration");
}

} // namespace

std::pair<MapHandle, DirectRecoveryReport> direct_recover(const MapHandle& f, double r,
                                                          int iterations) {
    require_iterating_args(f, r, iterations);
    const double scale = std::pow(r, iterations);
    if (!std::isfinite(scale)) {
        throw ScaleOverflowError("direct_recover: r^N overflows for N = " +
                                 std::to_string(iterations));
    }

    const std::vector<ComplexMatrix> probes = probe_members(*f.domain);
    DirectRecoveryReport report;
    report.iterations = iterations;
    report.cauchy_trace.assign(static_cast<std::size_t>(iterations), 0.0);

    for (const ComplexMatrix& probe : probes) {
        if (std::pow(r, iterations) * op_norm(probe) > kScaleCeiling) {
            throw ScaleOverflowError("direct_recover: r^N |a| exceeds 1e300 at a probe point");
        }
        double step_scale = 1.0;     // r^k
        double inv_step_scale = 1.0; // r^{-k}
        ComplexMatrix prev = f.evaluate(probe);
        for (int k = 0; k < iterations; ++k) {
            step_scale *= r;
            inv_step_scale /= r;
            const ComplexMatrix cur = inv_step_scale * f.evaluate(step_scale * probe);
            report.cauchy_trace[static_cast<std::size_t>(k)] =
                std::max(report.cauchy_trace[static_cast<std::size_t>(k)], op_norm(cur - prev));
            prev = cur;
        }
    }

    // The trace must keep shrinking over the final quarter of the steps;
    // growth there means the scaling limit is running away, not settling.
    const int tail = (iterations + 3) / 4;
    bool settling = true;
    for (int k = iterations - tail; k < iterations; ++k) {
        if (k < 1) continue;
        const double prev = report.cauchy_trace[static_cast<std::size_t>(k - 1)];
        const double cur = report.cauchy_trace[static_cast<std::size_t>(k)];
        if (cur > prev * (1.0 + 1e-12)) {
            settling = false;
            break;
        }
    }
    report.verdict = settling ? Verdict::Pass : Verdict::Diverged;

    const MatrixMap fe = f.evaluate;
    MapHandle limit;
    limit.evaluate = [fe, scale](const ComplexMatrix& a) {
        if (scale * (1.0 + max_abs_entry(a)) > kScaleCeiling) {
            throw ScaleOverflowError("direct limit: r^N |a| exceeds 1e300");
        }
        return (1.0 / scale) * fe(scale * a);
    };
    limit.domain = f.domain;
    limit.zero_at_zero = f.zero_at_zero;
    return {std::move(limit), std::move(report)};
}

namespace {

double bound_ratio_against(const MapHandle& f, const MapHandle& D,
                           std::span<const ComplexMatrix> sample_points,
                           const std::function<double(double)>& bound_of_norm) {
    double worst = 0.0;
    for (const ComplexMatrix& a : sample_points) {
        const double gap = op_norm(f.evaluate(a) - D.evaluate(a));
        const double anorm = op_norm(a);
        const double bound = bound_of_norm(anorm);
        if (bound <= 0.0) {
            // A vanishing control admits no gap at all.
            if (gap > 1e-12 * (1.0 + anorm)) return std::numeric_limits<double>::infinity();
            continue;
        }
        worst = std::max(worst, gap / bound);
    }
    return worst;
}

} // namespace

double verify_stability_bound(const MapHandle& f, const MapHandle& D, const PowerControl& ctrl,
                              std::span<const ComplexMatrix> sample_points) {
    const double geom = 1.0 - std::pow(ctrl.r, ctrl.p - 1.0);
    return bound_ratio_against(f, D, sample_points, [&](double anorm) {
        // Phi(a, a, 0) in closed form.
        return ctrl.theta * 2.0 * std::pow(anorm, ctrl.p) / geom;
    });
}

double verify_tight_stability_bound(const MapHandle& f, const MapHandle& D,
                                    const PowerControl& ctrl,
                                    std::span<const ComplexMatrix> sample_points) {
    const double q = std::pow(ctrl.r, ctrl.p - 1.0);
    const double constant = ctrl.theta * q / (2.0 * (1.0 - q));
    return bound_ratio_against(f, D, sample_points, [&](double anorm) {
        // sum_{k>=1} (1/(2 r^k)) phi(r^k a, 0, 0) telescoped in closed form.
        return constant * std::pow(anorm, ctrl.p);
    });
}

ResidualSummary verify_linearity_and_jensen(const MapHandle& D, double r,
                                            const SampleSpec& samples) {
    if (!D.domain) throw InvalidArgumentError("verify_linearity_and_jensen: map has no domain");
    return sample_residuals(D.evaluate, *D.domain, r, samples);
}

double cauchy_contraction_ratio(const MapHandle& f, const PowerControl& ctrl, double r,
                                int iterations) {
    require_iterating_args(f, r, iterations);
    const ComplexMatrix zero =
        ComplexMatrix::zero(f.domain->ambient_rows(), f.domain->ambient_cols());
    double worst = 0.0;
    for (const ComplexMatrix& probe : probe_members(*f.domain)) {
        double step_scale = 1.0;
        double inv_step_scale = 1.0;
        ComplexMatrix prev = f.evaluate(probe);
        for (int k = 0; k < iterations; ++k) {
            step_scale *= r;
            inv_step_scale /= r;
            const ComplexMatrix cur = inv_step_scale * f.evaluate(step_scale * probe);
            const double delta = op_norm(cur - prev);
            prev = cur;
            // Per-step bound (1/(2r)) r^{-k} phi(r^{k+1} a, 0, 0); note
            // step_scale is already r^{k+1} here and inv_step_scale r^{-(k+1)}.
            const double bound =
                0.5 * inv_step_scale * phi(ctrl, step_scale * probe, zero, zero);
            if (bound <= 0.0) {
                if (delta > 1e-12) return std::numeric_limits<double>::infinity();
                continue;
            }
            worst = std::max(worst, delta / bound);
        }
    }
    return worst;
}

Verdict superstability_check(const MapHandle& f, const ControlFn& control, double s, double r,
                             const SampleSpec& samples, int N) {
    constexpr double kHomogeneityTol = 1e-10;
    constexpr double kDefectFloor = 1e-9;
    if (!f.domain) throw InvalidArgumentError("superstability_check: map has no domain");
    if (!(s > 1.0)) throw InvalidArgumentError("superstability_check: s must exceed 1");
    if (N < 2) throw InvalidArgumentError("superstability_check: N must be at least 2");
    const JStarAlgebraModel& model = *f.domain;

    const double homo = homogeneity_residual(f.evaluate, model, s, samples);
    if (homo > kHomogeneityTol) {
        throw HypothesisNotMetError("superstability_check: map is not degree-1 homogeneous under s = " +
                                    std::to_string(s) + "; residual " + std::to_string(homo));
    }
    const std::vector<SampleTriple> triples = sample_triples(model, samples);
    if (!limit_condition_check(control, s, triples, N)) {
        throw HypothesisNotMetError(
            "superstability_check: control fails the decay condition s^{-n} phi(s^n .) -> 0");
    }

    const double sN = std::pow(s, N);
    const double inv_sN = std::pow(s, -N);
    if (!std::isfinite(sN)) {
        throw ScaleOverflowError("superstability_check: s^N overflows");
    }
    const ComplexMatrix zero = ComplexMatrix::zero(model.ambient_rows(), model.ambient_cols());
    const std::vector<Complex> mu_grid = unit_circle_grid(samples.mu_count);

    for (const SampleTriple& t : triples) {
        const double deriv = derivation_defect(f.evaluate, t.c);
        const double deriv_bound = std::max(kDefectFloor, inv_sN * control(zero, zero, sN * t.c));
        if (deriv > deriv_bound) return Verdict::Fail;

        const double jensen_bound =
            std::max(kDefectFloor, inv_sN * control(sN * t.a, sN * t.b, zero));
        for (const Complex& mu : mu_grid) {
            if (jensen_defect(f.evaluate, t.a, t.b, UnitScalar(mu), r) > jensen_bound) {
                return Verdict::Fail;
            }
        }
    }
    return Verdict::Pass;
}

DirectExperiment run_direct_experiment(const MapHandle& f, const PowerControl& ctrl, int iterations,
                                       const SampleSpec& samples) {
    constexpr double kBoundSlack = 1.0 + 1e-6;
    constexpr double kDefectTol = 1e-9;
    constexpr double kResidualTol = 1e-8;

    auto [recovered, report] = direct_recover(f, ctrl.r, iterations);
    const std::vector<ComplexMatrix> points = sample_members(*f.domain, samples);
    report.bound_ratio_max = verify_stability_bound(f, recovered, ctrl, points);
    report.tight_bound_ratio_max = verify_tight_stability_bound(f, recovered, ctrl, points);

    SampleSpec residual_spec = samples;
    residual_spec.count = std::min(samples.count, 1000);
    const ResidualSummary residuals = verify_linearity_and_jensen(recovered, ctrl.r, residual_spec);
    report.linearity_residual = std::max(residuals.additive, residuals.scalar);
    report.jensen_residual = residuals.jensen;
    report.derivation_defect_max = residuals.derivation;

    if (report.verdict != Verdict::Diverged) {
        const bool pass = report.bound_ratio_max <= kBoundSlack &&
                          report.derivation_defect_max <= kDefectTol &&
                          report.linearity_residual <= kResidualTol &&
                          report.jensen_residual <= kResidualTol;
        report.verdict = pass ? Verdict::Pass : Verdict::Fail;
    }
    return DirectExperiment{std::move(recovered), std::move(report)};
}

} // namespace jstab
