#include "jstab/jstar_algebra.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "jstab/errors.hpp"
#include "jstab/rng.hpp"

namespace jstab {

const char* to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::FullRectangular: return "FULL_RECTANGULAR";
        case ModelKind::CartanIIAntisymmetric: return "CARTAN_II_ANTISYMMETRIC";
        case ModelKind::CartanIIISymmetric: return "CARTAN_III_SYMMETRIC";
        case ModelKind::CStarFullSquare: return "CSTAR_FULL_SQUARE";
        case ModelKind::HilbertRow: return "HILBERT_ROW";
    }
    throw InvalidArgumentError("to_string: unknown ModelKind");
}

ModelKind model_kind_from_string(std::string_view name) {
    if (name == "FULL_RECTANGULAR") return ModelKind::FullRectangular;
    if (name == "CARTAN_II_ANTISYMMETRIC") return ModelKind::CartanIIAntisymmetric;
    if (name == "CARTAN_III_SYMMETRIC") return ModelKind::CartanIIISymmetric;
    if (name == "CSTAR_FULL_SQUARE") return ModelKind::CStarFullSquare;
    if (name == "HILBERT_ROW") return ModelKind::HilbertRow;
    throw InvalidArgumentError("model_kind_from_string: unknown kind '" + std::string(name) + "'");
}

JStarAlgebraModel::JStarAlgebraModel(ModelKind kind, int rows, int cols,
                                     std::vector<ComplexMatrix> basis)
    : kind_(kind), rows_(rows), cols_(cols), basis_(std::move(basis)) {}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::vector<ComplexMatrix> full_rectangular_basis(int m, int n) {
    std::vector<ComplexMatrix> basis;
    basis.reserve(static_cast<std::size_t>(m) * n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) basis.push_back(ComplexMatrix::unit(m, n, i, j));
    }
    return basis;
}

std::vector<ComplexMatrix> antisymmetric_basis(int n) {
    std::vector<ComplexMatrix> basis;
    basis.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            basis.push_back(kInvSqrt2 *
                            (ComplexMatrix::unit(n, n, i, j) - ComplexMatrix::unit(n, n, j, i)));
        }
    }
    return basis;
}

std::vector<ComplexMatrix> symmetric_basis(int n) {
    std::vector<ComplexMatrix> basis;
    basis.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i) basis.push_back(ComplexMatrix::unit(n, n, i, i));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            basis.push_back(kInvSqrt2 *
                            (ComplexMatrix::unit(n, n, i, j) + ComplexMatrix::unit(n, n, j, i)));
        }
    }
    return basis;
}

ComplexMatrix random_span_member(int rows, int cols, std::span<const ComplexMatrix> basis,
                                 double target_norm, std::mt19937_64& gen) {
    if (basis.empty()) {
        throw InvalidArgumentError("random member: empty basis");
    }
    if (!(target_norm > 0.0) || !std::isfinite(target_norm)) {
        throw InvalidArgumentError("random member: target_norm must be positive and finite");
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
        ComplexMatrix acc = ComplexMatrix::zero(rows, cols);
        for (const ComplexMatrix& b : basis) acc = acc + complex_normal(gen) * b;
        const double norm = op_norm(acc);
        if (norm > 0.0) return (target_norm / norm) * acc;
    }
    throw InvalidArgumentError("random member: draws kept landing on the zero matrix");
}

} // namespace

JStarAlgebraModel make_model(ModelKind kind, int m, int n) {
    if (m < 1 || n < 1) {
        throw InvalidArgumentError("make_model: shape must be positive, got " + std::to_string(m) +
                                   "x" + std::to_string(n));
    }
    switch (kind) {
        case ModelKind::FullRectangular:
            return JStarAlgebraModel(kind, m, n, full_rectangular_basis(m, n));
        case ModelKind::CartanIIAntisymmetric:
            if (m != n) throw InvalidArgumentError("make_model: antisymmetric model needs m == n");
            if (n < 2) throw InvalidArgumentError("make_model: antisymmetric model needs n >= 2");
            return JStarAlgebraModel(kind, n, n, antisymmetric_basis(n));
        case ModelKind::CartanIIISymmetric:
            if (m != n) throw InvalidArgumentError("make_model: symmetric model needs m == n");
            return JStarAlgebraModel(kind, n, n, symmetric_basis(n));
        case ModelKind::CStarFullSquare:
            if (m != n) throw InvalidArgumentError("make_model: square algebra needs m == n");
            return JStarAlgebraModel(kind, n, n, full_rectangular_basis(n, n));
        case ModelKind::HilbertRow:
            if (m != 1) throw InvalidArgumentError("make_model: row space needs m == 1");
            return JStarAlgebraModel(kind, 1, n, full_rectangular_basis(1, n));
    }
    throw InvalidArgumentError("make_model: unknown ModelKind");
}

bool same_model(const JStarAlgebraModel& a, const JStarAlgebraModel& b) {
    return a.kind() == b.kind() && a.ambient_rows() == b.ambient_rows() &&
           a.ambient_cols() == b.ambient_cols();
}

ComplexMatrix JStarAlgebraModel::project(const ComplexMatrix& x) const {
    if (x.rows() != rows_ || x.cols() != cols_) {
        throw InvalidArgumentError("project: argument shape " + std::to_string(x.rows()) + "x" +
                                   std::to_string(x.cols()) + " does not match ambient " +
                                   std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    ComplexMatrix acc = ComplexMatrix::zero(rows_, cols_);
    for (const ComplexMatrix& b : basis_) acc = acc + frobenius_inner(b, x) * b;
    return acc;
}

ComplexMatrix JStarAlgebraModel::member_from_coefficients(
    std::span<const Complex> coefficients) const {
    if (coefficients.size() != basis_.size()) {
        throw InvalidArgumentError("member_from_coefficients: expected " +
                                   std::to_string(basis_.size()) + " coefficients, got " +
                                   std::to_string(coefficients.size()));
    }
    ComplexMatrix acc = ComplexMatrix::zero(rows_, cols_);
    for (std::size_t k = 0; k < basis_.size(); ++k) acc = acc + coefficients[k] * basis_[k];
    return acc;
}

std::vector<Complex> JStarAlgebraModel::coefficients_of(const ComplexMatrix& x) const {
    std::vector<Complex> coeffs;
    coeffs.reserve(basis_.size());
    for (const ComplexMatrix& b : basis_) coeffs.push_back(frobenius_inner(b, x));
    return coeffs;
}

ComplexMatrix JStarAlgebraModel::random_member(double target_norm, std::uint64_t seed) const {
    auto gen = rng_stream(seed, 0x6d656d62ull);
    return random_member(target_norm, gen);
}

ComplexMatrix JStarAlgebraModel::random_member(double target_norm, std::mt19937_64& gen) const {
    return random_span_member(rows_, cols_, basis_, target_norm, gen);
}

ClosureCheckResult check_triple_closure(const JStarAlgebraModel& model, int trials,
                                        std::uint64_t seed) {
    return check_triple_closure_span(model.ambient_rows(), model.ambient_cols(), model.basis(),
                                     trials, seed);
}

ClosureCheckResult check_triple_closure_span(int rows, int cols,
                                             std::span<const ComplexMatrix> orthonormal_basis,
                                             int trials, std::uint64_t seed) {
    constexpr double kTolerance = 1e-10;
    if (trials < 1) throw InvalidArgumentError("check_triple_closure: trials must be positive");

    ClosureCheckResult result;
    result.closed = true;
    for (int t = 0; t < trials; ++t) {
        auto gen = rng_stream(seed, 0x636c6f73ull, static_cast<std::uint64_t>(t));
        const double target = log_uniform(gen, 0.25, 4.0);
        const ComplexMatrix x = random_span_member(rows, cols, orthonormal_basis, target, gen);
        const ComplexMatrix cube = triple(x);

        ComplexMatrix projected = ComplexMatrix::zero(rows, cols);
        for (const ComplexMatrix& b : orthonormal_basis) {
            projected = projected + frobenius_inner(b, cube) * b;
        }
        const double xnorm = op_norm(x);
        const double residual = op_norm(projected - cube) / (1.0 + xnorm * xnorm * xnorm);
        result.worst_residual = std::max(result.worst_residual, residual);
    }
    result.closed = result.worst_residual <= kTolerance;
    return result;
}

} // namespace jstab
