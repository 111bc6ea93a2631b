#include "jstab/fixed_point_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jstab/errors.hpp"
#include "jstab/rng.hpp"
#include "jstab/sampling.hpp"

namespace jstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOriginGapTol = 1e-10;
constexpr double kZeroWeight = 1e-12;
constexpr double kRatioBlowup = 1e12;
constexpr double kGrowthSlack = 1.0 + 1e-6;
constexpr double kGrowthFloor = 1e-15;
constexpr int kShrinkRungs = 12;
constexpr int kGrowthRunLimit = 8;
constexpr double kTinyTrace = 1e-15;
constexpr double kScaleCeiling = 1e300;

constexpr std::uint64_t kDirectionStream = 0x64697273;
constexpr std::uint64_t kOrbitStream = 0x6f726269;

// Every finite-norm point sits on a geometric orbit with factor r, so the
// image of a sample under a -> r a is again a sample unless it leaves the
// norm range from the top. That keeps sampled suprema of J-iterates honest
// against the contraction they are checked for.
struct DistancePointSet {
    std::vector<ComplexMatrix> points;
    std::vector<double> weights; // theta |a|^p per point, 0 at the origin
    std::size_t origin_index = 0;
    std::vector<std::vector<std::size_t>> shrink_chains; // norms decreasing
    double max_norm = 0.0;
};

DistancePointSet build_distance_points(const JStarAlgebraModel& model, double r,
                                       const PowerControl& ctrl, const SampleSpec& spec) {
    validate(spec);
    if (!(r > 1.0)) throw InvalidArgumentError("distance sampling: r must exceed 1");

    int rungs = 1;
    while (spec.norm_lo * std::pow(r, rungs) <= spec.norm_hi * (1.0 + 1e-12)) ++rungs;

    const int dir_count =
        std::clamp(spec.count / std::max(rungs, 1), 4, 64);
    auto dir_gen = rng_stream(spec.seed, kDirectionStream, 0);
    std::vector<ComplexMatrix> directions;
    directions.reserve(static_cast<std::size_t>(dir_count));
    for (int i = 0; i < dir_count; ++i) directions.push_back(model.random_member(1.0, dir_gen));

    DistancePointSet set;
    for (int j = 0; j < rungs; ++j) {
        const double norm = spec.norm_lo * std::pow(r, j);
        for (const ComplexMatrix& dir : directions) set.points.push_back(norm * dir);
    }

    const int orbit_count = std::max(0, (spec.count - rungs * dir_count) / rungs);
    const double base_hi = std::min(spec.norm_lo * r, spec.norm_hi);
    for (int o = 0; o < orbit_count; ++o) {
        auto gen = rng_stream(spec.seed, kOrbitStream, static_cast<std::uint64_t>(o));
        const ComplexMatrix dir = model.random_member(1.0, gen);
        double norm = log_uniform(gen, spec.norm_lo, base_hi);
        while (norm <= spec.norm_hi * (1.0 + 1e-12)) {
            set.points.push_back(norm * dir);
            norm *= r;
        }
    }

    const std::size_t chain_count = std::min<std::size_t>(4, directions.size());
    for (std::size_t d = 0; d < chain_count; ++d) {
        std::vector<std::size_t> chain;
        for (int i = 1; i <= kShrinkRungs; ++i) {
            const double norm = spec.norm_lo * std::pow(r, -i);
            chain.push_back(set.points.size());
            set.points.push_back(norm * directions[d]);
        }
        set.shrink_chains.push_back(std::move(chain));
    }

    set.origin_index = set.points.size();
    set.points.push_back(ComplexMatrix::zero(model.ambient_rows(), model.ambient_cols()));

    set.weights.reserve(set.points.size());
    for (const ComplexMatrix& x : set.points) {
        const double norm = op_norm(x);
        set.max_norm = std::max(set.max_norm, norm);
        set.weights.push_back(norm == 0.0 ? 0.0 : ctrl.theta * std::pow(norm, ctrl.p));
    }
    return set;
}

struct PairDistance {
    double value = 0.0;
    bool infinite = false;
    std::size_t witness = 0;
};

PairDistance weighted_sup(const DistancePointSet& set, const std::vector<ComplexMatrix>& gv,
                          const std::vector<ComplexMatrix>& hv) {
    PairDistance out;
    out.witness = set.origin_index;
    std::vector<double> ratios(set.points.size(), 0.0);
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        const double gap = op_norm(gv[i] - hv[i]);
        if (set.weights[i] < kZeroWeight) {
            // The control vanishes here, so any genuine gap is unbounded
            // in the weighted metric.
            if (gap > kOriginGapTol) return PairDistance{kInf, true, i};
            continue;
        }
        const double ratio = gap / set.weights[i];
        ratios[i] = ratio;
        if (ratio > kRatioBlowup) return PairDistance{kInf, true, i};
        if (ratio > out.value) {
            out.value = ratio;
            out.witness = i;
        }
    }
    // Monotone growth while the probe norm shrinks toward 0 means the sup
    // over all of the model is infinite even though every sampled ratio is
    // finite.
    for (const std::vector<std::size_t>& chain : set.shrink_chains) {
        int run = 0;
        for (std::size_t step = 1; step < chain.size(); ++step) {
            const double prev = ratios[chain[step - 1]];
            const double cur = ratios[chain[step]];
            if (cur > prev * kGrowthSlack && cur > kGrowthFloor) {
                if (++run >= kGrowthRunLimit) return PairDistance{kInf, true, chain[step]};
            } else {
                run = 0;
            }
        }
    }
    return out;
}

std::vector<ComplexMatrix> evaluate_level(const MapHandle& f, const DistancePointSet& set,
                                          double scale) {
    if (!std::isfinite(scale) || scale * (1.0 + set.max_norm) > kScaleCeiling) {
        throw ScaleOverflowError("fixed point iteration: r^k |a| exceeds 1e300");
    }
    const double inv = 1.0 / scale;
    std::vector<ComplexMatrix> values;
    values.reserve(set.points.size());
    for (const ComplexMatrix& x : set.points) values.push_back(inv * f.evaluate(scale * x));
    return values;
}

} // namespace

bool GeneralizedDistance::is_infinite() const { return std::isinf(value); }

const char* to_string(FixedPointBranch branch) {
    switch (branch) {
        case FixedPointBranch::AlwaysInfinite: return "ALWAYS_INFINITE";
        case FixedPointBranch::EventuallyFinite: return "EVENTUALLY_FINITE";
    }
    throw InvalidArgumentError("to_string: unknown FixedPointBranch");
}

MapHandle apply_J(const MapHandle& h, double r) {
    if (!(r > 1.0)) throw InvalidArgumentError("apply_J: r must exceed 1");
    if (!h.domain) throw InvalidArgumentError("apply_J: map has no domain");
    const MatrixMap he = h.evaluate;
    MapHandle out;
    out.evaluate = [he, r](const ComplexMatrix& a) { return (1.0 / r) * he(r * a); };
    out.domain = h.domain;
    out.zero_at_zero = h.zero_at_zero;
    out.homogeneity_degree = h.homogeneity_degree;
    return out;
}

GeneralizedDistance generalized_distance(const MapHandle& g, const MapHandle& h,
                                         const PowerControl& ctrl, const SampleSpec& samples) {
    if (!g.domain || !h.domain || !same_model(*g.domain, *h.domain)) {
        throw InvalidArgumentError("generalized_distance: maps must share a domain model");
    }
    const DistancePointSet set = build_distance_points(*g.domain, ctrl.r, ctrl, samples);
    std::vector<ComplexMatrix> gv;
    std::vector<ComplexMatrix> hv;
    gv.reserve(set.points.size());
    hv.reserve(set.points.size());
    for (const ComplexMatrix& x : set.points) {
        gv.push_back(g.evaluate(x));
        hv.push_back(h.evaluate(x));
    }
    const PairDistance pair = weighted_sup(set, gv, hv);
    GeneralizedDistance out;
    out.value = pair.infinite ? kInf : pair.value;
    out.witnesses.push_back(set.points[pair.witness]);
    return out;
}

AlternativeResult run_alternative(const MapHandle& f, double r, const PowerControl& ctrl, double L,
                                  int max_iter, const SampleSpec& samples) {
    constexpr double kContractionSlack = 1.05;
    constexpr double kBoundSlack = 1.000001;
    constexpr double kResidualTol = 1e-9;
    if (!f.domain) throw InvalidArgumentError("run_alternative: map has no domain");
    if (!(r > 1.0)) throw InvalidArgumentError("run_alternative: r must exceed 1");
    if (!(L > 0.0 && L < 1.0)) throw InvalidArgumentError("run_alternative: L must lie in (0,1)");
    if (max_iter < 2) throw InvalidArgumentError("run_alternative: need at least two iterations");
    const JStarAlgebraModel& model = *f.domain;

    SampleSpec contraction_spec = samples;
    contraction_spec.count = std::min(samples.count, 200);
    const std::vector<SampleTriple> triples = sample_triples(model, contraction_spec);
    if (!check_contraction(ctrl.as_fn(), r, L, triples).holds) {
        throw HypothesisNotMetError("run_alternative: control violates the contraction "
                                    "inequality at L = " +
                                    std::to_string(L));
    }

    const DistancePointSet set = build_distance_points(model, r, ctrl, samples);
    FixedPointReport report;
    report.distance_trace.reserve(static_cast<std::size_t>(max_iter));

    std::vector<ComplexMatrix> level0 = evaluate_level(f, set, 1.0);
    std::vector<ComplexMatrix> prev = level0;
    double scale = 1.0;
    for (int k = 0; k < max_iter; ++k) {
        scale *= r;
        std::vector<ComplexMatrix> cur = evaluate_level(f, set, scale);
        const PairDistance d = weighted_sup(set, prev, cur);
        report.distance_trace.push_back(d.infinite ? kInf : d.value);
        if (!d.infinite && report.m0 < 0) report.m0 = k;
        prev = std::move(cur);
    }

    for (std::size_t k = 0; k + 1 < report.distance_trace.size(); ++k) {
        const double den = report.distance_trace[k];
        const double num = report.distance_trace[k + 1];
        double estimate = 0.0;
        if (std::isinf(den)) {
            estimate = std::isinf(num) ? kInf : 0.0;
        } else if (den <= kTinyTrace) {
            estimate = num <= kTinyTrace ? 0.0 : kInf;
        } else {
            estimate = num / den;
        }
        report.contraction_estimates.push_back(estimate);
    }

    if (report.m0 < 0) {
        report.branch = FixedPointBranch::AlwaysInfinite;
        report.final_bound_ratio = kInf;
        report.sharper_bound_ratio = kInf;
        report.verdict = Verdict::Diverged;
        return AlternativeResult{std::nullopt, std::move(report)};
    }
    report.branch = FixedPointBranch::EventuallyFinite;

    const double final_scale = scale;
    const MatrixMap fe = f.evaluate;
    MapHandle fixed;
    fixed.evaluate = [fe, final_scale](const ComplexMatrix& a) {
        if (final_scale * (1.0 + max_abs_entry(a)) > kScaleCeiling) {
            throw ScaleOverflowError("fixed point: r^N |a| exceeds 1e300");
        }
        return (1.0 / final_scale) * fe(final_scale * a);
    };
    fixed.domain = f.domain;
    fixed.zero_at_zero = f.zero_at_zero;

    const PairDistance to_fixed = weighted_sup(set, level0, prev);
    const double d_f_fixed = to_fixed.infinite ? kInf : to_fixed.value;
    report.final_bound_ratio = d_f_fixed * (1.0 - L) / L;
    report.sharper_bound_ratio = d_f_fixed * 2.0 * (1.0 - L) / L;

    SampleSpec residual_spec = samples;
    residual_spec.count = std::min(samples.count, 1000);
    const ResidualSummary residuals = sample_residuals(fixed.evaluate, model, r, residual_spec);
    report.linearity_residual = std::max(residuals.additive, residuals.scalar);
    report.jensen_residual = residuals.jensen;
    report.derivation_defect_max = residuals.derivation;

    bool contracting = true;
    for (std::size_t k = static_cast<std::size_t>(report.m0);
         k < report.contraction_estimates.size(); ++k) {
        if (report.contraction_estimates[k] > L * kContractionSlack) {
            contracting = false;
            break;
        }
    }
    const bool pass = contracting && report.final_bound_ratio <= kBoundSlack &&
                      report.derivation_defect_max <= kResidualTol &&
                      report.linearity_residual <= kResidualTol &&
                      report.jensen_residual <= kResidualTol;
    report.verdict = pass ? Verdict::Pass : Verdict::Fail;
    return AlternativeResult{std::move(fixed), std::move(report)};
}

double stability_constant(const PowerControl& ctrl, double a_norm) {
    if (std::abs(ctrl.r - 2.0) > 1e-12) {
        throw InvalidArgumentError("stability_constant: stated only for r = 2");
    }
    if (!(a_norm > 0.0)) throw InvalidArgumentError("stability_constant: a_norm must be positive");
    const double two_p = std::pow(2.0, ctrl.p);
    return two_p * ctrl.theta / (2.0 - two_p) * std::pow(a_norm, ctrl.p);
}

Verdict superstability_via_fixed_point(const MapHandle& f, const PowerControl& ctrl, double r,
                                       double L, const SampleSpec& samples) {
    constexpr double kHomogeneityTol = 1e-10;
    constexpr double kResidualTol = 1e-9;
    if (!f.domain) throw InvalidArgumentError("superstability_via_fixed_point: map has no domain");
    if (!f.homogeneity_degree || !(*f.homogeneity_degree > 1.0)) {
        throw HypothesisNotMetError(
            "superstability_via_fixed_point: map declares no homogeneity degree above 1");
    }
    const JStarAlgebraModel& model = *f.domain;
    const double homo = homogeneity_residual(f.evaluate, model, *f.homogeneity_degree, samples);
    if (homo > kHomogeneityTol) {
        throw HypothesisNotMetError(
            "superstability_via_fixed_point: homogeneity residual " + std::to_string(homo) +
            " exceeds tolerance");
    }
    SampleSpec contraction_spec = samples;
    contraction_spec.count = std::min(samples.count, 200);
    const std::vector<SampleTriple> triples = sample_triples(model, contraction_spec);
    if (!check_contraction(ctrl.as_fn(), r, L, triples).holds) {
        throw HypothesisNotMetError(
            "superstability_via_fixed_point: control violates the contraction inequality");
    }
    const ResidualSummary res = sample_residuals(f.evaluate, model, r, samples);
    const bool pass = res.additive <= kResidualTol && res.scalar <= kResidualTol &&
                      res.jensen <= kResidualTol && res.derivation <= kResidualTol;
    return pass ? Verdict::Pass : Verdict::Fail;
}

} // namespace jstab
