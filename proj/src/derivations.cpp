#include "jstab/derivations.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "jstab/errors.hpp"
#include "jstab/rng.hpp"

namespace jstab {

namespace {

constexpr double kAntiHermitianTol = 1e-13;
constexpr double kTransposeTol = 1e-13;

bool needs_transpose_link(ModelKind kind) {
    return kind == ModelKind::CartanIIAntisymmetric || kind == ModelKind::CartanIIISymmetric;
}

void require_anti_hermitian(const ComplexMatrix& m, const char* name) {
    if (m.rows() != m.cols()) {
        throw InvalidArgumentError(std::string("make_inner_derivation: ") + name +
                                   " must be square");
    }
    const double residual = op_norm(m + adjoint(m));
    if (residual > kAntiHermitianTol * (1.0 + op_norm(m))) {
        throw InvalidArgumentError(std::string("make_inner_derivation: ") + name +
                                   " is not anti-Hermitian, residual " + std::to_string(residual));
    }
}

ComplexMatrix random_anti_hermitian(int n, double scale, std::mt19937_64& gen) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Complex> raw(static_cast<std::size_t>(n) * n);
        for (Complex& z : raw) z = complex_normal(gen);
        const ComplexMatrix m(n, n, std::move(raw));
        const ComplexMatrix skew = 0.5 * (m - adjoint(m));
        const double norm = op_norm(skew);
        if (norm > 0.0) return (scale / norm) * skew;
    }
    throw InvalidArgumentError("random_inner_derivation: skew part kept vanishing");
}

} // namespace

MapHandle make_inner_derivation(std::shared_ptr<const JStarAlgebraModel> model,
                                const InnerDerivationSpec& spec) {
    if (!model) throw InvalidArgumentError("make_inner_derivation: null model");
    const int m = model->ambient_rows();
    const int n = model->ambient_cols();
    if (spec.left.rows() != m || spec.left.cols() != m) {
        throw InvalidArgumentError("make_inner_derivation: left block must be " +
                                   std::to_string(m) + "x" + std::to_string(m));
    }
    if (spec.right.rows() != n || spec.right.cols() != n) {
        throw InvalidArgumentError("make_inner_derivation: right block must be " +
                                   std::to_string(n) + "x" + std::to_string(n));
    }
    require_anti_hermitian(spec.left, "left block");
    require_anti_hermitian(spec.right, "right block");
    if (needs_transpose_link(model->kind())) {
        const double gap = op_norm(spec.right - transpose(spec.left));
        if (gap > kTransposeTol * (1.0 + op_norm(spec.left))) {
            throw ClosureViolationError(
                "make_inner_derivation: transpose-constrained model needs right == left^T; gap " +
                std::to_string(gap));
        }
    }

    const ComplexMatrix left = spec.left;
    const ComplexMatrix right = spec.right;
    MapHandle handle;
    handle.evaluate = [left, right](const ComplexMatrix& x) { return left * x + x * right; };
    handle.domain = std::move(model);
    handle.zero_at_zero = true;
    return handle;
}

std::pair<InnerDerivationSpec, MapHandle> random_inner_derivation(
    std::shared_ptr<const JStarAlgebraModel> model, double scale, std::uint64_t seed) {
    if (!model) throw InvalidArgumentError("random_inner_derivation: null model");
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw InvalidArgumentError("random_inner_derivation: scale must be positive");
    }
    auto gen = rng_stream(seed, 0x64657269ull);
    const int m = model->ambient_rows();
    const int n = model->ambient_cols();
    ComplexMatrix left = random_anti_hermitian(m, scale, gen);
    ComplexMatrix right = needs_transpose_link(model->kind()) ? transpose(left)
                                                              : random_anti_hermitian(n, scale, gen);
    InnerDerivationSpec spec{std::move(left), std::move(right)};
    MapHandle handle = make_inner_derivation(std::move(model), spec);
    return {std::move(spec), std::move(handle)};
}

MapHandle zero_map(std::shared_ptr<const JStarAlgebraModel> model) {
    if (!model) throw InvalidArgumentError("zero_map: null model");
    const int m = model->ambient_rows();
    const int n = model->ambient_cols();
    MapHandle handle;
    handle.evaluate = [m, n](const ComplexMatrix& x) {
        if (x.rows() != m || x.cols() != n) {
            throw InvalidArgumentError("zero_map: argument shape mismatch");
        }
        return ComplexMatrix::zero(m, n);
    };
    handle.domain = std::move(model);
    handle.zero_at_zero = true;
    return handle;
}

} // namespace jstab
