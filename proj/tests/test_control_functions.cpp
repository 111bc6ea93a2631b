#include <cmath>
#include <vector>

#include <doctest.h>

#include "jstab/complex_matrix.hpp"
#include "jstab/control_functions.hpp"
#include "jstab/errors.hpp"
#include "jstab/jstar_algebra.hpp"
#include "jstab/sampling.hpp"

using jstab::Complex;
using jstab::ComplexMatrix;
using jstab::PowerControl;

namespace {

ComplexMatrix scalar(double v) { return ComplexMatrix(1, 1, {Complex(v, 0.0)}); }

} // namespace

TEST_CASE("power control construction enforces the parameter ranges") {
    CHECK_NOTHROW(PowerControl(1.0, 0.5, 2.0));
    CHECK_NOTHROW(PowerControl(0.0, 0.9, 1.0001));
    CHECK_THROWS_AS(PowerControl(-1.0, 0.5, 2.0), jstab::InvalidArgumentError);
    CHECK_THROWS_AS(PowerControl(1.0, 0.0, 2.0), jstab::InvalidArgumentError);
    CHECK_THROWS_AS(PowerControl(1.0, 1.0, 2.0), jstab::InvalidArgumentError);
    CHECK_THROWS_AS(PowerControl(1.0, 1.5, 2.0), jstab::InvalidArgumentError);
    CHECK_THROWS_AS(PowerControl(1.0, 0.5, 1.0), jstab::InvalidArgumentError);
    CHECK_THROWS_AS(PowerControl(1.0, 0.5, 0.5), jstab::InvalidArgumentError);
}

TEST_CASE("phi evaluates the power sum on operator norms") {
    const PowerControl half(1.0, 0.5, 2.0);
    const ComplexMatrix zero = ComplexMatrix::zero(1, 1);
    CHECK(jstab::phi(half, zero, zero, zero) == 0.0);
    CHECK(std::abs(jstab::phi(half, scalar(4.0), zero, zero) - 2.0) <= 1e-14);
    const PowerControl two(2.0, 0.5, 2.0);
    CHECK(std::abs(jstab::phi(two, scalar(1.0), scalar(1.0), scalar(1.0)) - 6.0) <= 1e-14);
}

TEST_CASE("the summed control has the closed geometric form") {
    const PowerControl half(1.0, 0.5, 2.0);
    const ComplexMatrix zero = ComplexMatrix::zero(1, 1);
    const double expected = 1.0 / (1.0 - std::pow(2.0, -0.5));
    CHECK(std::abs(jstab::capital_phi(half, scalar(1.0), zero, zero) - expected) <=
          1e-12 * expected);

    const PowerControl quarter(1.0, 0.5, 4.0);
    CHECK(std::abs(jstab::capital_phi(quarter, scalar(1.0), zero, zero) - 2.0) <= 1e-12);
}

TEST_CASE("partial sums agree with the closed form up to the exact geometric tail") {
    const ComplexMatrix zero = ComplexMatrix::zero(1, 1);
    const ComplexMatrix a = scalar(1.7);
    const ComplexMatrix b = scalar(0.3);
    const int terms = 200;
    for (const double theta : {0.5, 1.0, 2.0}) {
        for (const double p : {0.1, 0.5, 0.9}) {
            for (const double r : {1.5, 2.0, 4.0}) {
                const PowerControl ctrl(theta, p, r);
                const double closed = jstab::capital_phi(ctrl, a, b, zero);
                const double partial =
                    jstab::capital_phi_partial_sum(ctrl.as_fn(), r, a, b, zero, terms);
                const double q = std::pow(r, p - 1.0);
                const double tail = std::pow(q, terms);
                // The truncated series equals closed * (1 - q^N) exactly, so the
                // discrepancy from the closed form is the geometric tail itself.
                CHECK(std::abs(partial - closed * (1.0 - tail)) <= 1e-9 * closed);
                CHECK(std::abs(closed - partial) <= (tail + 1e-9) * closed);
                CHECK(closed >= partial);
            }
        }
    }
}

TEST_CASE("partial sums refuse scales that overflow") {
    const PowerControl ctrl(1.0, 0.5, 4.0);
    const ComplexMatrix zero = ComplexMatrix::zero(1, 1);
    CHECK_THROWS_AS(
        jstab::capital_phi_partial_sum(ctrl.as_fn(), 4.0, scalar(1.0), zero, zero, 600),
        jstab::ScaleOverflowError);
}

TEST_CASE("the minimal contraction constant is r to the p minus one") {
    CHECK(std::abs(jstab::min_contraction_L(PowerControl(1.0, 0.5, 2.0)).value -
                   std::pow(2.0, -0.5)) <= 1e-15);
    CHECK(std::abs(jstab::min_contraction_L(PowerControl(3.0, 0.5, 3.0)).value -
                   std::pow(3.0, -0.5)) <= 1e-15);
    const double near_one = jstab::min_contraction_L(PowerControl(1.0, 0.999, 2.0)).value;
    CHECK(near_one < 1.0);
    CHECK(near_one > 0.999);
}

TEST_CASE("contraction verification accepts the minimal constant and rejects half of it") {
    const auto model = jstab::make_model(jstab::ModelKind::FullRectangular, 2, 2);
    jstab::SampleSpec spec;
    spec.count = 100;
    spec.seed = 9;
    const auto triples = jstab::sample_triples(model, spec);
    const PowerControl ctrl(0.7, 0.5, 2.0);
    const double L = jstab::min_contraction_L(ctrl).value;

    const auto ok = jstab::check_contraction(ctrl.as_fn(), 2.0, L, triples);
    CHECK(ok.holds);
    CHECK(std::abs(ok.worst_ratio - 1.0) <= 1e-12);

    const auto bad = jstab::check_contraction(ctrl.as_fn(), 2.0, L / 2.0, triples);
    CHECK_FALSE(bad.holds);
    CHECK(bad.worst_ratio > 1.9);

    const std::vector<jstab::SampleTriple> empty;
    CHECK(jstab::check_contraction(ctrl.as_fn(), 2.0, L, empty).holds);
}

TEST_CASE("the limit condition separates sublinear, constant and superlinear controls") {
    const auto model = jstab::make_model(jstab::ModelKind::FullRectangular, 2, 2);
    jstab::SampleSpec spec;
    spec.count = 20;
    spec.seed = 4;
    const auto triples = jstab::sample_triples(model, spec);

    const PowerControl power(1.0, 0.5, 2.0);
    CHECK(jstab::limit_condition_check(power.as_fn(), 2.0, triples, 60));

    const jstab::ControlFn constant = [](const ComplexMatrix&, const ComplexMatrix&,
                                         const ComplexMatrix&) { return 1.0; };
    CHECK(jstab::limit_condition_check(constant, 2.0, triples, 60));

    const jstab::ControlFn quadratic = [](const ComplexMatrix& a, const ComplexMatrix&,
                                          const ComplexMatrix&) {
        const double n = op_norm(a);
        return n * n;
    };
    CHECK_FALSE(jstab::limit_condition_check(quadratic, 2.0, triples, 60));
}
