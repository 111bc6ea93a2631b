#include "jstab/operator_core.hpp"

#include <cmath>
#include <string>

#include "jstab/errors.hpp"

namespace jstab {

UnitScalar::UnitScalar(Complex value) : value_(value) {
    if (std::abs(std::abs(value) - 1.0) > 1e-14) {
        throw InvalidArgumentError("UnitScalar: |value| = " + std::to_string(std::abs(value)) +
                                   " is not 1 within 1e-14");
    }
}

UnitScalar UnitScalar::from_angle(double radians) {
    return UnitScalar(Complex(std::cos(radians), std::sin(radians)));
}

namespace {

void require_output_shape(const ComplexMatrix& out, const ComplexMatrix& in, const char* op) {
    if (!out.same_shape(in)) {
        throw InvalidArgumentError(std::string(op) +
                                   ": map output shape disagrees with its argument, " +
                                   std::to_string(out.rows()) + "x" + std::to_string(out.cols()) +
                                   " vs " + std::to_string(in.rows()) + "x" +
                                   std::to_string(in.cols()));
    }
}

} // namespace

ComplexMatrix derivation_defect_vector(const MatrixMap& f, const ComplexMatrix& c) {
    const ComplexMatrix cstar = adjoint(c);
    const ComplexMatrix fc = f(c);
    require_output_shape(fc, c, "derivation_defect");
    const ComplexMatrix ftriple = f(c * cstar * c);
    require_output_shape(ftriple, c, "derivation_defect");
    return ftriple - fc * cstar * c - c * adjoint(fc) * c - c * cstar * fc;
}

double derivation_defect(const MatrixMap& f, const ComplexMatrix& c) {
    return op_norm(derivation_defect_vector(f, c));
}

ComplexMatrix jensen_defect_vector(const MatrixMap& f, const ComplexMatrix& a,
                                   const ComplexMatrix& b, UnitScalar mu, double r) {
    if (!a.same_shape(b)) {
        throw InvalidArgumentError("jensen_defect: a and b must share a shape");
    }
    if (!(r > 1.0)) {
        throw InvalidArgumentError("jensen_defect: r must exceed 1, got " + std::to_string(r));
    }
    const double inv_r = 1.0 / r;
    const Complex m = mu.value();
    const ComplexMatrix sum_part = f(inv_r * (a + b));
    require_output_shape(sum_part, a, "jensen_defect");
    const ComplexMatrix diff_part = f(inv_r * (a - b));
    const ComplexMatrix center = f(m * a);
    return (r * m) * (sum_part + diff_part) - 2.0 * center;
}

double jensen_defect(const MatrixMap& f, const ComplexMatrix& a, const ComplexMatrix& b,
                     UnitScalar mu, double r) {
    return op_norm(jensen_defect_vector(f, a, b, mu, r));
}

} // namespace jstab
