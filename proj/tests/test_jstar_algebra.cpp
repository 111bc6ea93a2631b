#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "jstab/complex_matrix.hpp"
#include "jstab/errors.hpp"
#include "jstab/jstar_algebra.hpp"

using jstab::Complex;
using jstab::ComplexMatrix;
using jstab::ModelKind;

namespace {

// Projection computed the pedestrian way: sum of <b_k, x> b_k with explicit
// entry loops, independent of the member implementation.
ComplexMatrix naive_projection(const jstab::JStarAlgebraModel& model, const ComplexMatrix& x) {
    ComplexMatrix out = ComplexMatrix::zero(x.rows(), x.cols());
    for (const ComplexMatrix& b : model.basis()) {
        Complex coeff = 0.0;
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j) coeff += std::conj(b(i, j)) * x(i, j);
        out = out + coeff * b;
    }
    return out;
}

} // namespace

TEST_CASE("model dimensions match the closed-form counts") {
    CHECK(jstab::make_model(ModelKind::FullRectangular, 3, 2).dimension() == 6);
    CHECK(jstab::make_model(ModelKind::CartanIIAntisymmetric, 2, 2).dimension() == 1);
    CHECK(jstab::make_model(ModelKind::CartanIIAntisymmetric, 4, 4).dimension() == 6);
    CHECK(jstab::make_model(ModelKind::CartanIIISymmetric, 2, 2).dimension() == 3);
    CHECK(jstab::make_model(ModelKind::CartanIIISymmetric, 3, 3).dimension() == 6);
    CHECK(jstab::make_model(ModelKind::CStarFullSquare, 3, 3).dimension() == 9);
    CHECK(jstab::make_model(ModelKind::HilbertRow, 1, 4).dimension() == 4);
}

TEST_CASE("model construction rejects impossible shapes") {
    CHECK_THROWS_AS(jstab::make_model(ModelKind::FullRectangular, 0, 2),
                    jstab::InvalidArgumentError);
    CHECK_THROWS_AS(jstab::make_model(ModelKind::CartanIIAntisymmetric, 3, 2),
                    jstab::InvalidArgumentError);
    CHECK_THROWS_AS(jstab::make_model(ModelKind::CartanIIAntisymmetric, 1, 1),
                    jstab::InvalidArgumentError);
    CHECK_THROWS_AS(jstab::make_model(ModelKind::CartanIIISymmetric, 3, 2),
                    jstab::InvalidArgumentError);
    CHECK_THROWS_AS(jstab::make_model(ModelKind::CStarFullSquare, 2, 3),
                    jstab::InvalidArgumentError);
    CHECK_THROWS_AS(jstab::make_model(ModelKind::HilbertRow, 2, 4),
                    jstab::InvalidArgumentError);
}

TEST_CASE("the antisymmetric model at size two has the expected single basis element") {
    const auto model = jstab::make_model(ModelKind::CartanIIAntisymmetric, 2, 2);
    const ComplexMatrix& b = model.basis()[0];
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(b(0, 1) - Complex(inv_sqrt2, 0.0)) <= 1e-15);
    CHECK(std::abs(b(1, 0) - Complex(-inv_sqrt2, 0.0)) <= 1e-15);
    CHECK(std::abs(b(0, 0)) == 0.0);
    CHECK(std::abs(b(1, 1)) == 0.0);
}

TEST_CASE("every basis is Frobenius orthonormal") {
    const jstab::JStarAlgebraModel models[] = {
        jstab::make_model(ModelKind::FullRectangular, 3, 2),
        jstab::make_model(ModelKind::CartanIIAntisymmetric, 4, 4),
        jstab::make_model(ModelKind::CartanIIISymmetric, 3, 3),
        jstab::make_model(ModelKind::CStarFullSquare, 3, 3),
        jstab::make_model(ModelKind::HilbertRow, 1, 4),
    };
    for (const auto& model : models) {
        const auto& basis = model.basis();
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const Complex g = frobenius_inner(basis[i], basis[j]);
                const Complex expected = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
                CHECK(std::abs(g - expected) <= 1e-12);
            }
        }
    }
}

TEST_CASE("projection matches the naive basis expansion and is idempotent") {
    const auto model = jstab::make_model(ModelKind::CartanIIISymmetric, 2, 2);
    const ComplexMatrix e12 = ComplexMatrix::unit(2, 2, 0, 1);
    const ComplexMatrix p = model.project(e12);
    CHECK(std::abs(p(0, 1) - Complex(0.5, 0.0)) <= 1e-14);
    CHECK(std::abs(p(1, 0) - Complex(0.5, 0.0)) <= 1e-14);
    CHECK(std::abs(p(0, 0)) <= 1e-14);

    const auto full = jstab::make_model(ModelKind::FullRectangular, 3, 2);
    for (std::uint64_t s = 0; s < 10; ++s) {
        ComplexMatrix x(3, 2, {Complex(0.3 + 0.1 * static_cast<double>(s), -0.2), Complex(1.0, 1.0),
                               Complex(0.0, -0.5), Complex(2.0, 0.0), Complex(-1.0, 0.25),
                               Complex(0.5, 0.5)});
        const ComplexMatrix once = full.project(x);
        CHECK(max_abs_entry(once - naive_projection(full, x)) <= 1e-13);
        CHECK(max_abs_entry(full.project(once) - once) <= 1e-13);
    }
    const auto anti = jstab::make_model(ModelKind::CartanIIAntisymmetric, 2, 2);
    CHECK(max_abs_entry(anti.project(ComplexMatrix::identity(2))) <= 1e-15);
}

TEST_CASE("coefficient round trips reproduce members exactly") {
    const auto model = jstab::make_model(ModelKind::CartanIIISymmetric, 3, 3);
    const ComplexMatrix x = model.random_member(2.5, 77);
    const std::vector<Complex> coeffs = model.coefficients_of(x);
    CHECK(static_cast<int>(coeffs.size()) == model.dimension());
    const ComplexMatrix back = model.member_from_coefficients(coeffs);
    CHECK(max_abs_entry(back - x) <= 1e-13);
    CHECK_THROWS_AS(model.member_from_coefficients(std::vector<Complex>(2)),
                    jstab::InvalidArgumentError);
}

TEST_CASE("random members are deterministic, correctly normed and inside the model") {
    const auto model = jstab::make_model(ModelKind::CartanIIAntisymmetric, 3, 3);
    const ComplexMatrix a = model.random_member(1.0, 5);
    const ComplexMatrix b = model.random_member(1.0, 5);
    CHECK(max_abs_entry(a - b) == 0.0);
    CHECK(std::abs(op_norm(a) - 1.0) <= 1e-12);
    CHECK(max_abs_entry(a + transpose(a)) <= 1e-13);
    CHECK(max_abs_entry(model.project(a) - a) <= 1e-13);
    const ComplexMatrix c = model.random_member(1.0, 6);
    CHECK(max_abs_entry(a - c) > 1e-3);
}

TEST_CASE("triple closure holds across the model zoo") {
    const jstab::JStarAlgebraModel models[] = {
        jstab::make_model(ModelKind::FullRectangular, 3, 2),
        jstab::make_model(ModelKind::CartanIIAntisymmetric, 4, 4),
        jstab::make_model(ModelKind::CartanIIISymmetric, 3, 3),
        jstab::make_model(ModelKind::CStarFullSquare, 2, 2),
        jstab::make_model(ModelKind::HilbertRow, 1, 3),
    };
    for (const auto& model : models) {
        const auto result = jstab::check_triple_closure(model, 50, 0);
        CHECK(result.closed);
        CHECK(result.worst_residual <= 1e-10);
    }
}

TEST_CASE("a span that is not triple closed is reported as such") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::vector<ComplexMatrix> span_basis = {
        ComplexMatrix(2, 2,
                      {Complex(inv_sqrt2, 0.0), 0.0, 0.0, Complex(inv_sqrt2, 0.0)}),
        ComplexMatrix::unit(2, 2, 0, 1),
    };
    const auto result = jstab::check_triple_closure_span(2, 2, span_basis, 100, 0);
    CHECK_FALSE(result.closed);
    CHECK(result.worst_residual > 1e-6);
}

TEST_CASE("same_model distinguishes kinds and shapes") {
    const auto a = jstab::make_model(ModelKind::FullRectangular, 2, 2);
    const auto b = jstab::make_model(ModelKind::FullRectangular, 2, 2);
    const auto c = jstab::make_model(ModelKind::CStarFullSquare, 2, 2);
    CHECK(jstab::same_model(a, b));
    CHECK_FALSE(jstab::same_model(a, c));
}

TEST_CASE("model kind names round trip") {
    for (const ModelKind kind :
         {ModelKind::FullRectangular, ModelKind::CartanIIAntisymmetric,
          ModelKind::CartanIIISymmetric, ModelKind::CStarFullSquare, ModelKind::HilbertRow}) {
        CHECK(jstab::model_kind_from_string(jstab::to_string(kind)) == kind);
    }
    CHECK_THROWS_AS(jstab::model_kind_from_string("NOT_A_MODEL"), jstab::InvalidArgumentError);
}
