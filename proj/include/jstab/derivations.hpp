#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "jstab/jstar_algebra.hpp"
#include "jstab/operator_core.hpp"

namespace jstab {

// Black-box map on a model, carrying the structural facts downstream engines
// rely on. evaluate must be pure: same input, same output bits.
struct MapHandle {
    MatrixMap evaluate;
    std::shared_ptr<const JStarAlgebraModel> domain;
    bool zero_at_zero = false;
    std::optional<double> homogeneity_degree; // declared s with f(s a) = s f(a), s > 1

    ComplexMatrix operator()(const ComplexMatrix& x) const { return evaluate(x); }
    MapHandle with_homogeneity(double s) const {
        MapHandle copy = *this;
        copy.homogeneity_degree = s;
        return copy;
    }
};

inline double derivation_defect(const MapHandle& f, const ComplexMatrix& c) {
    return derivation_defect(f.evaluate, c);
}
inline double jensen_defect(const MapHandle& f, const ComplexMatrix& a, const ComplexMatrix& b,
                            UnitScalar mu, double r) {
    return jensen_defect(f.evaluate, a, b, mu, r);
}

// Generators of an inner derivation d(x) = left x + x right. Both blocks are
// anti-Hermitian; for the transpose-constrained models (antisymmetric and
// symmetric Cartan types) right must equal left^T so d preserves the model.
struct InnerDerivationSpec {
    ComplexMatrix left;
    ComplexMatrix right;
};

MapHandle make_inner_derivation(std::shared_ptr<const JStarAlgebraModel> model,
                                const InnerDerivationSpec& spec);

// Random anti-Hermitian generators with op_norm(left) = op_norm(right) = scale,
// respecting the model's transpose constraint. Same seed, same map.
std::pair<InnerDerivationSpec, MapHandle> random_inner_derivation(
    std::shared_ptr<const JStarAlgebraModel> model, double scale, std::uint64_t seed);

MapHandle zero_map(std::shared_ptr<const JStarAlgebraModel> model);

} // namespace jstab
