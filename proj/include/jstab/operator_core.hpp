#pragma once

#include <functional>

#include "jstab/complex_matrix.hpp"

namespace jstab {

// Complex scalar constrained to the unit circle (|value| = 1 within 1e-14).
class UnitScalar {
public:
    explicit UnitScalar(Complex value);
    static UnitScalar from_angle(double radians);
    Complex value() const { return value_; }

private:
    Complex value_;
};

using MatrixMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

// f(c c^* c) - f(c) c^* c - c f(c)^* c - c c^* f(c): zero exactly when f
// respects the triple product the way a derivation must.
ComplexMatrix derivation_defect_vector(const MatrixMap& f, const ComplexMatrix& c);
double derivation_defect(const MatrixMap& f, const ComplexMatrix& c);

// r mu f((a+b)/r) + r mu f((a-b)/r) - 2 f(mu a): the generalized Jensen
// defect; zero for additive, scale-respecting maps.
ComplexMatrix jensen_defect_vector(const MatrixMap& f, const ComplexMatrix& a,
                                   const ComplexMatrix& b, UnitScalar mu, double r);
double jensen_defect(const MatrixMap& f, const ComplexMatrix& a, const ComplexMatrix& b,
                     UnitScalar mu, double r);

} // namespace jstab
