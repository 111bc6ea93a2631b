#include "jstab/perturbation.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "jstab/errors.hpp"
#include "jstab/rng.hpp"

namespace jstab {

namespace {

double smoothstep(double u) { return u * u * (3.0 - 2.0 * u); }

// C^1 bump: 0 outside (inner, outer), 1 at the midpoint.
double annulus_profile(double inner, double outer, double t) {
    if (t <= inner || t >= outer) return 0.0;
    const double mid = 0.5 * (inner + outer);
    if (t < mid) return smoothstep((t - inner) / (mid - inner));
    return smoothstep((outer - t) / (outer - mid));
}

void validate_bump_spec(const JStarAlgebraModel& model, const AnnulusBumpSpec& spec) {
    if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon)) {
        throw InvalidArgumentError("AnnulusBumpSpec: epsilon must be nonnegative");
    }
    if (!(spec.rho_inner > 0.0) || !(spec.rho_outer > spec.rho_inner)) {
        throw InvalidArgumentError("AnnulusBumpSpec: need 0 < rho_inner < rho_outer");
    }
    if (spec.direction.rows() != model.ambient_rows() ||
        spec.direction.cols() != model.ambient_cols()) {
        throw InvalidArgumentError("AnnulusBumpSpec: direction shape does not match the model");
    }
    const double norm = op_norm(spec.direction);
    if (std::abs(norm - 1.0) > 1e-12) {
        throw InvalidArgumentError("AnnulusBumpSpec: direction must have unit operator norm, got " +
                                   std::to_string(norm));
    }
    const double off_span = op_norm(model.project(spec.direction) - spec.direction);
    if (off_span > 1e-12) {
        throw ClosureViolationError("AnnulusBumpSpec: direction leaves the model span by " +
                                    std::to_string(off_span));
    }
}

} // namespace

MapHandle make_annulus_perturbation(std::shared_ptr<const JStarAlgebraModel> model,
                                    const AnnulusBumpSpec& spec, std::uint64_t seed) {
    if (!model) throw InvalidArgumentError("make_annulus_perturbation: null model");
    validate_bump_spec(*model, spec);
    (void)seed; // the map is fully determined by its spec; kept for interface stability

    const double epsilon = spec.epsilon;
    const double inner = spec.rho_inner;
    const double outer = spec.rho_outer;
    const ComplexMatrix direction = spec.direction;
    const ComplexMatrix first_basis = model->basis().front();
    const int rows = model->ambient_rows();
    const int cols = model->ambient_cols();

    MapHandle handle;
    handle.evaluate = [epsilon, inner, outer, direction, first_basis, rows,
                       cols](const ComplexMatrix& a) {
        if (a.rows() != rows || a.cols() != cols) {
            throw InvalidArgumentError("annulus perturbation: argument shape mismatch");
        }
        const double profile = annulus_profile(inner, outer, op_norm(a));
        if (profile == 0.0) return ComplexMatrix::zero(rows, cols);
        const double wave = std::sin(frobenius_inner(first_basis, a).real());
        return (epsilon * profile * wave) * direction;
    };
    handle.domain = std::move(model);
    handle.zero_at_zero = true;
    return handle;
}

MapHandle perturb(const MapHandle& d, const MapHandle& g) {
    if (!d.domain || !g.domain) throw InvalidArgumentError("perturb: handles need domains");
    if (!same_model(*d.domain, *g.domain)) {
        throw InvalidArgumentError("perturb: handles live on different models");
    }
    if (!d.zero_at_zero || !g.zero_at_zero) {
        throw InvalidArgumentError("perturb: both maps must fix zero");
    }
    MatrixMap de = d.evaluate;
    MatrixMap ge = g.evaluate;
    MapHandle handle;
    handle.evaluate = [de, ge](const ComplexMatrix& x) { return de(x) + ge(x); };
    handle.domain = d.domain;
    handle.zero_at_zero = true;
    return handle;
}

namespace {

// Mu-independent pieces of the combined defect at one triple; the sweep over
// the unit-circle grid then costs a single extra evaluation per mu.
struct TriplePrep {
    ComplexMatrix jensen_sum;  // f((a+b)/r) + f((a-b)/r)
    ComplexMatrix deriv;       // derivation defect vector at c
    double control_shape;      // |a|^p + |b|^p + |c|^p
};

TriplePrep prepare_triple(const MapHandle& f, const SampleTriple& t, double p, double r) {
    const double inv_r = 1.0 / r;
    TriplePrep prep{f.evaluate(inv_r * (t.a + t.b)) + f.evaluate(inv_r * (t.a - t.b)),
                    derivation_defect_vector(f.evaluate, t.c),
                    std::pow(op_norm(t.a), p) + std::pow(op_norm(t.b), p) +
                        std::pow(op_norm(t.c), p)};
    return prep;
}

// Combined left-hand side: Jensen defect plus derivation defect in one norm,
// exactly the quantity the control must dominate.
double combined_lhs(const MapHandle& f, const TriplePrep& prep, const SampleTriple& t, Complex mu,
                    double r) {
    return op_norm((r * mu) * prep.jensen_sum - 2.0 * f.evaluate(mu * t.a) + prep.deriv);
}

} // namespace

CertificationResult certify_hypothesis(const MapHandle& f, const PowerControl& ctrl,
                                       const SampleSpec& samples) {
    constexpr double kZeroShape = 1e-12;
    constexpr double kOriginDefectTol = 1e-10;
    if (!f.domain) throw InvalidArgumentError("certify_hypothesis: map has no domain");
    validate(samples);

    const JStarAlgebraModel& model = *f.domain;
    const std::vector<Complex> mu_grid = unit_circle_grid(samples.mu_count);
    const double p = ctrl.p;
    const double r = ctrl.r;

    CertificationResult result;
    bool origin_ok = true;

    auto consider = [&](const SampleTriple& t) {
        const TriplePrep prep = prepare_triple(f, t, p, r);
        for (const Complex& mu : mu_grid) {
            const double lhs = combined_lhs(f, prep, t, mu, r);
            if (prep.control_shape < kZeroShape) {
                if (lhs > kOriginDefectTol) origin_ok = false;
                continue;
            }
            const double ratio = lhs / prep.control_shape;
            if (!result.worst || ratio > result.worst->ratio) {
                result.worst = WorstPoint{t.a, t.b, t.c, mu, lhs, prep.control_shape, ratio};
            }
            result.theta_required = std::max(result.theta_required, ratio);
        }
    };

    // Mandatory origin probe: a vanishing control leaves no room for any
    // defect, so f(0) != 0 must surface here.
    const ComplexMatrix zero = ComplexMatrix::zero(model.ambient_rows(), model.ambient_cols());
    consider(SampleTriple{zero, zero, zero});

    for (int k = 0; k < samples.count; ++k) {
        auto gen = rng_stream(samples.seed, 0x63657274ull, static_cast<std::uint64_t>(k));
        const double na = log_uniform(gen, samples.norm_lo, samples.norm_hi);
        const double nb = log_uniform(gen, samples.norm_lo, samples.norm_hi);
        const double nc = log_uniform(gen, samples.norm_lo, samples.norm_hi);
        SampleTriple t{model.random_member(na, gen), model.random_member(nb, gen),
                       model.random_member(nc, gen)};
        // Sliced variants keep the singly-active regions of the hypothesis in
        // view; the full sup is often attained with two arguments at zero.
        if (k % 8 == 5) {
            t.b = zero;
            t.c = zero;
        } else if (k % 8 == 6) {
            t.a = zero;
            t.b = zero;
        }
        consider(t);
    }

    // Local refinement: hill-climb in coefficient space around the sampled
    // worst point; only ever raises the reported theta.
    if (result.worst) {
        auto gen = rng_stream(samples.seed, 0x72656669ull);
        WorstPoint best = *result.worst;
        double step = 0.3;
        const int dim = model.dimension();
        auto jitter = [&](const ComplexMatrix& x) {
            std::vector<Complex> coeffs = model.coefficients_of(x);
            const double scale = step * std::max(op_norm(x), 0.05);
            for (Complex& z : coeffs) z += scale * complex_normal(gen);
            return model.member_from_coefficients(coeffs);
        };
        for (int round = 0; round < 20 * dim; ++round) {
            SampleTriple cand{jitter(best.a), jitter(best.b), jitter(best.c)};
            std::normal_distribution<double> angle_dist(0.0, step);
            const double angle = angle_dist(gen);
            const Complex mu_cand = best.mu * Complex(std::cos(angle), std::sin(angle));
            const Complex mu_unit = mu_cand / std::abs(mu_cand);
            const TriplePrep prep = prepare_triple(f, cand, p, r);
            if (prep.control_shape < kZeroShape) continue;
            const double lhs = combined_lhs(f, prep, cand, mu_unit, r);
            const double ratio = lhs / prep.control_shape;
            if (ratio > best.ratio) {
                best = WorstPoint{cand.a, cand.b, cand.c, mu_unit, lhs, prep.control_shape, ratio};
            } else {
                step *= 0.9;
            }
        }
        result.worst = best;
        result.theta_required = std::max(result.theta_required, best.ratio);
    }

    result.satisfied = origin_ok && result.theta_required <= ctrl.theta;
    return result;
}

} // namespace jstab
