#pragma once

#include <functional>
#include <span>
#include <vector>

#include "jstab/complex_matrix.hpp"

namespace jstab {

// General control function phi(a, b, c) >= 0.
using ControlFn =
    std::function<double(const ComplexMatrix&, const ComplexMatrix&, const ComplexMatrix&)>;

struct SampleTriple {
    ComplexMatrix a;
    ComplexMatrix b;
    ComplexMatrix c;
};

// Power-type control phi(a,b,c) = theta (|a|^p + |b|^p + |c|^p) with
// theta >= 0, 0 < p < 1, r > 1. p >= 1 is rejected: the geometric series
// behind the summed form diverges there.
struct PowerControl {
    double theta;
    double p;
    double r;
    PowerControl(double theta, double p, double r);
    ControlFn as_fn() const;
};

struct ContractionConstant {
    double value; // in (0, 1)
};

double phi(const PowerControl& ctrl, const ComplexMatrix& a, const ComplexMatrix& b,
           const ComplexMatrix& c);

// Sum_{n>=0} r^{-n} phi(r^n a, r^n b, r^n c) in closed form:
// phi(a,b,c) / (1 - r^{p-1}).
double capital_phi(const PowerControl& ctrl, const ComplexMatrix& a, const ComplexMatrix& b,
                   const ComplexMatrix& c);

// Truncation of the same series computed term by term through an arbitrary
// control; cross-checks the closed form.
double capital_phi_partial_sum(const ControlFn& control, double r, const ComplexMatrix& a,
                               const ComplexMatrix& b, const ComplexMatrix& c, int terms);

// Smallest L with phi(a,b,c) <= r L phi(a/r, b/r, c/r) for the power family:
// L = r^{p-1}.
ContractionConstant min_contraction_L(const PowerControl& ctrl);

struct ContractionCheck {
    bool holds = false;
    double worst_ratio = 0.0;
};

// Verifies phi(a,b,c) <= r L phi(a/r, b/r, c/r) on every sample. Samples with
// vanishing right-hand side must have a vanishing left-hand side.
ContractionCheck check_contraction(const ControlFn& control, double r, double L,
                                   std::span<const SampleTriple> samples);

// Checks s^{-n} phi(s^n a, s^n b, s^n c) -> 0: nonincreasing over the window
// n in {N/2..N} and final value <= 1e-8 x the n = 0 value, on every sample.
bool limit_condition_check(const ControlFn& control, double s,
                           std::span<const SampleTriple> samples, int N);

} // namespace jstab
