#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "jstab/complex_matrix.hpp"

namespace jstab {

enum class ModelKind {
    FullRectangular,       // all of B(H, K): every m x n matrix
    CartanIIAntisymmetric, // x^T = -x inside n x n
    CartanIIISymmetric,    // x^T =  x inside n x n
    CStarFullSquare,       // full n x n square algebra viewed through the triple product
    HilbertRow,            // row space: 1 x n
};

const char* to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

// A concrete operator model of a J*-algebra: an ambient rectangular shape
// plus a Frobenius-orthonormal basis of the subspace. Immutable once built.
class JStarAlgebraModel {
public:
    int ambient_rows() const { return rows_; }
    int ambient_cols() const { return cols_; }
    ModelKind kind() const { return kind_; }
    const std::vector<ComplexMatrix>& basis() const { return basis_; }
    int dimension() const { return static_cast<int>(basis_.size()); }

    // Frobenius-orthogonal projection onto the span of the basis.
    ComplexMatrix project(const ComplexMatrix& x) const;
    ComplexMatrix member_from_coefficients(std::span<const Complex> coefficients) const;
    std::vector<Complex> coefficients_of(const ComplexMatrix& x) const;

    // Complex-Gaussian coefficients on the basis, rescaled so the operator
    // norm equals target_norm. Same seed, same matrix.
    ComplexMatrix random_member(double target_norm, std::uint64_t seed) const;
    ComplexMatrix random_member(double target_norm, std::mt19937_64& gen) const;

    friend JStarAlgebraModel make_model(ModelKind kind, int m, int n);

private:
    JStarAlgebraModel(ModelKind kind, int rows, int cols, std::vector<ComplexMatrix> basis);
    ModelKind kind_;
    int rows_;
    int cols_;
    std::vector<ComplexMatrix> basis_;
};

JStarAlgebraModel make_model(ModelKind kind, int m, int n);

bool same_model(const JStarAlgebraModel& a, const JStarAlgebraModel& b);

struct ClosureCheckResult {
    bool closed = false;
    double worst_residual = 0.0;
};

// Draws random members x of the span and measures how far x x^* x leaves it:
// residual = |project(triple(x)) - triple(x)| / (1 + |x|^3).
ClosureCheckResult check_triple_closure(const JStarAlgebraModel& model, int trials,
                                        std::uint64_t seed);

// Same check against an arbitrary Frobenius-orthonormal span; lets callers
// probe subspaces that are not closed under the triple product.
ClosureCheckResult check_triple_closure_span(int rows, int cols,
                                             std::span<const ComplexMatrix> orthonormal_basis,
                                             int trials, std::uint64_t seed);

} // namespace jstab
