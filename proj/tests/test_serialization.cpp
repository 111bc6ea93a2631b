#include <cmath>
#include <limits>

#include <doctest.h>

#include "jstab/complex_matrix.hpp"
#include "jstab/errors.hpp"
#include "jstab/jstar_algebra.hpp"
#include "jstab/serialization.hpp"

using jstab::Complex;
using jstab::ComplexMatrix;
using jstab::Json;

TEST_CASE("matrices survive a JSON round trip bit for bit") {
    const ComplexMatrix x(2, 3,
                          {Complex(1.0, -2.0), Complex(0.1, 0.2), Complex(-0.3, 0.0),
                           Complex(1.0 / 3.0, -1.0 / 7.0), Complex(0.0, 1e-300),
                           Complex(3.25e17, -1.0)});
    const ComplexMatrix back = jstab::matrix_from_json(jstab::matrix_to_json(x));
    CHECK(max_abs_entry(back - x) == 0.0);
}

TEST_CASE("matrix parsing validates its shape fields") {
    Json j = jstab::matrix_to_json(ComplexMatrix::identity(2));
    j.erase("re");
    CHECK_THROWS_AS(jstab::matrix_from_json(j), jstab::InvalidArgumentError);

    Json mismatched = jstab::matrix_to_json(ComplexMatrix::identity(2));
    mismatched["rows"] = 3;
    CHECK_THROWS_AS(jstab::matrix_from_json(mismatched), jstab::InvalidArgumentError);
}

TEST_CASE("models are rebuilt from their kind and shape") {
    const auto model = jstab::make_model(jstab::ModelKind::CartanIIISymmetric, 3, 3);
    const auto loaded = jstab::model_from_json(jstab::model_to_json(model));
    REQUIRE(loaded != nullptr);
    CHECK(jstab::same_model(model, *loaded));
    CHECK(loaded->dimension() == model.dimension());
    for (int k = 0; k < model.dimension(); ++k) {
        CHECK(max_abs_entry(loaded->basis()[static_cast<std::size_t>(k)] -
                            model.basis()[static_cast<std::size_t>(k)]) == 0.0);
    }
    Json bad = jstab::model_to_json(model);
    bad["kind"] = "NOT_A_MODEL";
    CHECK_THROWS_AS(jstab::model_from_json(bad), jstab::InvalidArgumentError);
}

TEST_CASE("derivation coefficient pairs round trip") {
    const auto model = std::make_shared<const jstab::JStarAlgebraModel>(
        jstab::make_model(jstab::ModelKind::FullRectangular, 3, 2));
    const auto spec = jstab::random_inner_derivation(model, 1.0, 4).first;
    const auto back = jstab::derivation_spec_from_json(jstab::derivation_spec_to_json(spec));
    CHECK(max_abs_entry(back.left - spec.left) == 0.0);
    CHECK(max_abs_entry(back.right - spec.right) == 0.0);
}

TEST_CASE("power controls round trip and reject unknown types") {
    const jstab::PowerControl ctrl(0.25, 0.7, 3.0);
    const auto back = jstab::control_from_json(jstab::control_to_json(ctrl));
    CHECK(back.theta == ctrl.theta);
    CHECK(back.p == ctrl.p);
    CHECK(back.r == ctrl.r);

    Json j = jstab::control_to_json(ctrl);
    j["type"] = "exponential";
    CHECK_THROWS_AS(jstab::control_from_json(j), jstab::InvalidArgumentError);
}

TEST_CASE("sample specs round trip and validate on load") {
    jstab::SampleSpec spec;
    spec.count = 123;
    spec.seed = 456;
    spec.norm_lo = 0.02;
    spec.norm_hi = 5.0;
    spec.mu_count = 8;
    const auto back = jstab::sample_spec_from_json(jstab::sample_spec_to_json(spec));
    CHECK(back.count == spec.count);
    CHECK(back.seed == spec.seed);
    CHECK(back.norm_lo == spec.norm_lo);
    CHECK(back.norm_hi == spec.norm_hi);
    CHECK(back.mu_count == spec.mu_count);

    Json j = jstab::sample_spec_to_json(spec);
    j["norm_range"] = Json::array({5.0, 0.02});
    CHECK_THROWS_AS(jstab::sample_spec_from_json(j), jstab::InvalidArgumentError);
}

TEST_CASE("numbers are printed with fifteen significant digits") {
    CHECK(jstab::format_number(0.5) == "0.5");
    CHECK(jstab::format_number(1.0 / 3.0) == "0.333333333333333");
    CHECK(jstab::format_number(0.0) == "0");
    const double v = 0.1 + 0.2;
    CHECK(jstab::format_number(v) == "0.3");
}

TEST_CASE("non-finite values travel as tagged strings") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(jstab::finite_or_tag(inf) == Json("infinity"));
    CHECK(jstab::finite_or_tag(-inf) == Json("-infinity"));
    CHECK(jstab::finite_or_tag(std::nan("")) == Json("nan"));
    CHECK(jstab::finite_or_tag(1.5) == Json(1.5));
}
