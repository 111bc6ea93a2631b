#include <cmath>
#include <complex>

#include <doctest.h>

#include "jstab/complex_matrix.hpp"
#include "jstab/errors.hpp"
#include "jstab/jstar_algebra.hpp"
#include "jstab/operator_core.hpp"

using jstab::Complex;
using jstab::ComplexMatrix;
using jstab::UnitScalar;

TEST_CASE("unit scalars live on the circle") {
    CHECK_NOTHROW(UnitScalar(Complex(0.0, 1.0)));
    CHECK_NOTHROW(UnitScalar(Complex(-1.0, 0.0)));
    CHECK_THROWS_AS(UnitScalar(Complex(1.001, 0.0)), jstab::InvalidArgumentError);
    CHECK_THROWS_AS(UnitScalar(Complex(0.0, 0.0)), jstab::InvalidArgumentError);
    const UnitScalar mu = UnitScalar::from_angle(std::acos(-1.0) / 2.0);
    CHECK(std::abs(mu.value() - Complex(0.0, 1.0)) <= 1e-15);
}

TEST_CASE("derivation defect vanishes for the zero map and inner derivations") {
    const auto model = jstab::make_model(jstab::ModelKind::FullRectangular, 2, 2);
    const jstab::MatrixMap zero = [](const ComplexMatrix& x) {
        return ComplexMatrix::zero(x.rows(), x.cols());
    };
    const ComplexMatrix c = model.random_member(1.0, 7);
    CHECK(jstab::derivation_defect(zero, c) == 0.0);

    const ComplexMatrix a(2, 2, {0.0, Complex(1.0, 0.0), Complex(-1.0, 0.0), 0.0});
    const jstab::MatrixMap inner = [a](const ComplexMatrix& x) { return a * x - x * a; };
    for (std::uint64_t s = 0; s < 10; ++s) {
        const ComplexMatrix member = model.random_member(2.0, 100 + s);
        CHECK(jstab::derivation_defect(inner, member) <= 1e-13 * (1.0 + std::pow(op_norm(member), 3)));
    }
}

TEST_CASE("derivation defect of the cubic triple map at a unit scalar is two") {
    const jstab::MatrixMap cubic = [](const ComplexMatrix& x) { return triple(x); };
    const ComplexMatrix one(1, 1, {Complex(1.0, 0.0)});
    CHECK(std::abs(jstab::derivation_defect(cubic, one) - 2.0) <= 1e-14);
}

TEST_CASE("jensen defect vanishes for linear maps") {
    const jstab::MatrixMap ident = [](const ComplexMatrix& x) { return x; };
    const auto model = jstab::make_model(jstab::ModelKind::FullRectangular, 3, 2);
    const UnitScalar mu(Complex(std::sqrt(0.5), std::sqrt(0.5)));
    for (std::uint64_t s = 0; s < 10; ++s) {
        const ComplexMatrix a = model.random_member(1.5, 200 + s);
        const ComplexMatrix b = model.random_member(0.5, 300 + s);
        CHECK(jstab::jensen_defect(ident, a, b, mu, 3.0) <= 1e-13);
    }
}

TEST_CASE("jensen defect of a constant map measures the scalar mismatch") {
    const auto model = jstab::make_model(jstab::ModelKind::FullRectangular, 2, 2);
    const ComplexMatrix e = model.random_member(1.0, 11);
    const jstab::MatrixMap constant = [e](const ComplexMatrix&) { return e; };
    const ComplexMatrix a = model.random_member(1.0, 12);
    const ComplexMatrix b = model.random_member(1.0, 13);
    const double norm_e = op_norm(e);
    const UnitScalar one(Complex(1.0, 0.0));
    const double expect_r2 = 2.0 * std::abs(2.0 * 1.0 - 1.0) * norm_e;
    CHECK(std::abs(jstab::jensen_defect(constant, a, b, one, 2.0) - expect_r2) <= 1e-12);

    const UnitScalar i_mu(Complex(0.0, 1.0));
    const double expect_i = 2.0 * std::abs(Complex(3.0, 0.0) * i_mu.value() - 1.0) * norm_e;
    CHECK(std::abs(jstab::jensen_defect(constant, a, b, i_mu, 3.0) - expect_i) <= 1e-12);
}

TEST_CASE("defect functionals reject maps that change shape") {
    const auto model = jstab::make_model(jstab::ModelKind::FullRectangular, 2, 2);
    const jstab::MatrixMap bad = [](const ComplexMatrix&) { return ComplexMatrix::zero(1, 1); };
    const ComplexMatrix c = model.random_member(1.0, 21);
    CHECK_THROWS_AS(jstab::derivation_defect(bad, c), jstab::InvalidArgumentError);
    CHECK_THROWS_AS(
        jstab::jensen_defect(bad, c, c, UnitScalar(Complex(1.0, 0.0)), 2.0),
        jstab::InvalidArgumentError);
}
