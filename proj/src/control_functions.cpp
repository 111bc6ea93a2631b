#include "jstab/control_functions.hpp"

#include <cmath>
#include <string>

#include "jstab/errors.hpp"

namespace jstab {

PowerControl::PowerControl(double theta_in, double p_in, double r_in)
    : theta(theta_in), p(p_in), r(r_in) {
    if (!(theta >= 0.0) || !std::isfinite(theta)) {
        throw InvalidArgumentError("PowerControl: theta must be nonnegative");
    }
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw InvalidArgumentError("PowerControl: p must be positive");
    }
    if (p >= 1.0) {
        throw InvalidArgumentError("PowerControl: p = " + std::to_string(p) +
                                   " makes the summed control diverge; need p < 1");
    }
    if (!(r > 1.0) || !std::isfinite(r)) {
        throw InvalidArgumentError("PowerControl: r must exceed 1");
    }
}

ControlFn PowerControl::as_fn() const {
    const PowerControl copy = *this;
    return [copy](const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
        return phi(copy, a, b, c);
    };
}

double phi(const PowerControl& ctrl, const ComplexMatrix& a, const ComplexMatrix& b,
           const ComplexMatrix& c) {
    return ctrl.theta *
           (std::pow(op_norm(a), ctrl.p) + std::pow(op_norm(b), ctrl.p) +
            std::pow(op_norm(c), ctrl.p));
}

double capital_phi(const PowerControl& ctrl, const ComplexMatrix& a, const ComplexMatrix& b,
                   const ComplexMatrix& c) {
    const double ratio = std::pow(ctrl.r, ctrl.p - 1.0); // in (0, 1)
    return phi(ctrl, a, b, c) / (1.0 - ratio);
}

double capital_phi_partial_sum(const ControlFn& control, double r, const ComplexMatrix& a,
                               const ComplexMatrix& b, const ComplexMatrix& c, int terms) {
    if (terms < 1) throw InvalidArgumentError("capital_phi_partial_sum: need at least one term");
    if (!(r > 1.0)) throw InvalidArgumentError("capital_phi_partial_sum: r must exceed 1");
    double acc = 0.0;
    double scale = 1.0;   // r^n
    double inv_scale = 1.0; // r^{-n}
    for (int n = 0; n < terms; ++n) {
        acc += inv_scale * control(scale * a, scale * b, scale * c);
        scale *= r;
        inv_scale /= r;
        if (!std::isfinite(scale)) {
            throw ScaleOverflowError("capital_phi_partial_sum: r^n overflowed at n = " +
                                     std::to_string(n + 1));
        }
    }
    return acc;
}

ContractionConstant min_contraction_L(const PowerControl& ctrl) {
    return ContractionConstant{std::pow(ctrl.r, ctrl.p - 1.0)};
}

ContractionCheck check_contraction(const ControlFn& control, double r, double L,
                                   std::span<const SampleTriple> samples) {
    constexpr double kZeroDenominator = 1e-12;
    constexpr double kZeroNumerator = 1e-12;
    constexpr double kRatioSlack = 1e-9;
    if (!(r > 1.0)) throw InvalidArgumentError("check_contraction: r must exceed 1");
    if (!(L > 0.0) || !(L < 1.0)) {
        throw InvalidArgumentError("check_contraction: L must lie in (0, 1)");
    }

    ContractionCheck result;
    result.holds = true;
    const double inv_r = 1.0 / r;
    for (const SampleTriple& t : samples) {
        const double lhs = control(t.a, t.b, t.c);
        const double rhs = r * L * control(inv_r * t.a, inv_r * t.b, inv_r * t.c);
        if (rhs < kZeroDenominator) {
            if (lhs > kZeroNumerator) result.holds = false;
            continue;
        }
        const double ratio = lhs / rhs;
        result.worst_ratio = std::max(result.worst_ratio, ratio);
        if (ratio > 1.0 + kRatioSlack) result.holds = false;
    }
    return result;
}

bool limit_condition_check(const ControlFn& control, double s,
                           std::span<const SampleTriple> samples, int N) {
    constexpr double kDecayFactor = 1e-8;
    if (!(s > 1.0)) throw InvalidArgumentError("limit_condition_check: s must exceed 1");
    if (N < 2) throw InvalidArgumentError("limit_condition_check: N must be at least 2");

    for (const SampleTriple& t : samples) {
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(N) + 1);
        double scale = 1.0;
        double inv_scale = 1.0;
        for (int n = 0; n <= N; ++n) {
            values.push_back(inv_scale * control(scale * t.a, scale * t.b, scale * t.c));
            scale *= s;
            inv_scale /= s;
            if (!std::isfinite(scale)) {
                throw ScaleOverflowError("limit_condition_check: s^n overflowed at n = " +
                                         std::to_string(n + 1));
            }
        }
        // Nonincreasing over the back window; tiny relative slack absorbs
        // floating-point jitter without admitting genuine growth.
        for (int n = N / 2; n < N; ++n) {
            if (values[n + 1] > values[n] * (1.0 + 1e-12)) return false;
        }
        if (values[N] > kDecayFactor * values[0]) return false;
    }
    return true;
}

} // namespace jstab
