#include "jstab/experiment.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "jstab/errors.hpp"

namespace jstab {

namespace {

constexpr double kCertSafetyFactor = 1.25;
constexpr double kThetaProbe = 1e12; // placeholder so certification reports origin failures
constexpr double kCrossEngineTol = 1e-12;

void validate_experiment(const ExperimentSpec& spec) {
    PowerControl(0.0, spec.p, spec.r); // validates p and r ranges
    if (spec.theta && !(*spec.theta >= 0.0)) {
        throw InvalidArgumentError("experiment: declared theta must be nonnegative");
    }
    if (spec.iterations < 2) {
        throw InvalidArgumentError("experiment: iterations must be at least 2");
    }
    if (!(spec.epsilon >= 0.0)) {
        throw InvalidArgumentError("experiment: epsilon must be nonnegative");
    }
    if (!spec.direction && !spec.direction_seed) {
        throw InvalidArgumentError(
            "experiment: perturbation needs either direction or direction_seed");
    }
    validate(spec.samples);
}

Json worst_point_to_json(const std::optional<WorstPoint>& worst) {
    if (!worst) return Json(nullptr);
    return Json{{"a_norm", op_norm(worst->a)},
                {"b_norm", op_norm(worst->b)},
                {"c_norm", op_norm(worst->c)},
                {"mu_re", worst->mu.real()},
                {"mu_im", worst->mu.imag()},
                {"lhs", worst->lhs},
                {"control_value", worst->control_value},
                {"ratio", finite_or_tag(worst->ratio)}};
}

Json trace_to_json(const std::vector<double>& trace) {
    Json arr = Json::array();
    for (double v : trace) arr.push_back(finite_or_tag(v));
    return arr;
}

} // namespace

const char* to_string(EngineChoice choice) {
    switch (choice) {
        case EngineChoice::Direct: return "DIRECT";
        case EngineChoice::FixedPoint: return "FIXED_POINT";
        case EngineChoice::Both: return "BOTH";
    }
    throw InvalidArgumentError("to_string: unknown EngineChoice");
}

EngineChoice engine_from_string(std::string_view name) {
    if (name == "DIRECT") return EngineChoice::Direct;
    if (name == "FIXED_POINT") return EngineChoice::FixedPoint;
    if (name == "BOTH") return EngineChoice::Both;
    throw InvalidArgumentError("engine: unknown tag '" + std::string(name) +
                               "', expected DIRECT, FIXED_POINT or BOTH");
}

ExperimentSpec experiment_spec_from_json(const Json& j) try {
    ExperimentSpec spec;
    const Json& model = j.at("model");
    spec.kind = model_kind_from_string(model.at("kind").get<std::string>());
    spec.m = model.at("m").get<int>();
    spec.n = model.at("n").get<int>();

    const Json& derivation = j.at("derivation");
    spec.derivation_seed = derivation.at("seed").get<std::uint64_t>();
    spec.derivation_scale = derivation.value("scale", 1.0);

    const Json& bump = j.at("perturbation");
    spec.epsilon = bump.at("epsilon").get<double>();
    spec.rho_inner = bump.at("rho_inner").get<double>();
    spec.rho_outer = bump.at("rho_outer").get<double>();
    if (bump.contains("direction")) spec.direction = matrix_from_json(bump.at("direction"));
    if (bump.contains("direction_seed")) {
        spec.direction_seed = bump.at("direction_seed").get<std::uint64_t>();
    }

    const Json& control = j.at("control");
    const std::string type = control.at("type").get<std::string>();
    if (type != "power") {
        throw InvalidArgumentError("experiment: unsupported control type '" + type + "'");
    }
    if (control.contains("theta") && !control.at("theta").is_null()) {
        spec.theta = control.at("theta").get<double>();
    }
    spec.p = control.at("p").get<double>();
    spec.r = control.at("r").get<double>();

    spec.engine = engine_from_string(j.at("engine").get<std::string>());
    spec.iterations = j.at("iterations").get<int>();
    spec.samples = sample_spec_from_json(j.at("samples"));
    validate_experiment(spec);
    return spec;
} catch (const Json::exception& ex) {
    throw InvalidArgumentError(std::string("experiment: malformed spec: ") + ex.what());
}

Json experiment_spec_to_json(const ExperimentSpec& spec) {
    Json bump{{"epsilon", spec.epsilon},
              {"rho_inner", spec.rho_inner},
              {"rho_outer", spec.rho_outer}};
    if (spec.direction) bump["direction"] = matrix_to_json(*spec.direction);
    if (spec.direction_seed) bump["direction_seed"] = *spec.direction_seed;

    Json control{{"type", "power"}};
    if (spec.theta) control["theta"] = *spec.theta;
    control["p"] = spec.p;
    control["r"] = spec.r;

    return Json{{"model", Json{{"kind", to_string(spec.kind)}, {"m", spec.m}, {"n", spec.n}}},
                {"derivation",
                 Json{{"seed", spec.derivation_seed}, {"scale", spec.derivation_scale}}},
                {"perturbation", std::move(bump)},
                {"control", std::move(control)},
                {"engine", to_string(spec.engine)},
                {"iterations", spec.iterations},
                {"samples", sample_spec_to_json(spec.samples)}};
}

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
    validate_experiment(spec);
    ExperimentOutcome out;
    std::string first_failure;
    const auto fail = [&first_failure](const std::string& msg) {
        if (first_failure.empty()) first_failure = msg;
    };

    const auto model =
        std::make_shared<const JStarAlgebraModel>(make_model(spec.kind, spec.m, spec.n));
    auto [derivation_spec, d] =
        random_inner_derivation(model, spec.derivation_scale, spec.derivation_seed);
    const ComplexMatrix direction =
        spec.direction ? *spec.direction : model->random_member(1.0, *spec.direction_seed);
    const MapHandle g = make_annulus_perturbation(
        model, AnnulusBumpSpec{spec.epsilon, spec.rho_inner, spec.rho_outer, direction}, 0);
    const MapHandle f = perturb(d, g);

    const CertificationResult cert =
        certify_hypothesis(f, PowerControl(kThetaProbe, spec.p, spec.r), spec.samples);
    const double theta_used =
        spec.theta ? *spec.theta : kCertSafetyFactor * cert.theta_required;
    bool cert_ok = cert.satisfied;
    if (spec.theta && cert.theta_required > *spec.theta) {
        cert_ok = false;
        fail("certification: declared theta " + format_number(*spec.theta) +
             " is below the required " + format_number(cert.theta_required));
    } else if (!cert.satisfied) {
        fail("certification: defect does not vanish where the control does");
    }
    const PowerControl ctrl(theta_used, spec.p, spec.r);
    const double L = min_contraction_L(ctrl).value;

    Json certification{{"theta_required", cert.theta_required},
                       {"theta_declared", spec.theta ? Json(*spec.theta) : Json(nullptr)},
                       {"safety_factor", spec.theta ? Json(nullptr) : Json(kCertSafetyFactor)},
                       {"theta_used", theta_used},
                       {"satisfied", cert_ok},
                       {"worst_point", worst_point_to_json(cert.worst)}};

    const bool want_direct = spec.engine != EngineChoice::FixedPoint;
    const bool want_fixed = spec.engine != EngineChoice::Direct;
    std::optional<DirectExperiment> direct;
    std::optional<AlternativeResult> alternative;

    Json report{{"spec", experiment_spec_to_json(spec)},
                {"resolved", Json{{"theta_used", theta_used}, {"contraction_L", L}}},
                {"certification", std::move(certification)}};

    if (want_direct) {
        direct = run_direct_experiment(f, ctrl, spec.iterations, spec.samples);
        const double step_sharp = cauchy_contraction_ratio(f, ctrl, spec.r, spec.iterations);
        const DirectRecoveryReport& rep = direct->report;
        if (rep.verdict != Verdict::Pass) {
            fail(std::string("direct: verdict ") + to_string(rep.verdict) +
                 ", bound_ratio_max " + format_number(rep.bound_ratio_max));
        }
        report["direct"] = Json{{"iterations", rep.iterations},
                                {"verdict", to_string(rep.verdict)},
                                {"bound_ratio_max", finite_or_tag(rep.bound_ratio_max)},
                                {"tight_bound_ratio_max", finite_or_tag(rep.tight_bound_ratio_max)},
                                {"per_step_ratio_vs_stated", finite_or_tag(step_sharp / spec.r)},
                                {"per_step_ratio_vs_sharp", finite_or_tag(step_sharp)},
                                {"linearity_residual", rep.linearity_residual},
                                {"jensen_residual", rep.jensen_residual},
                                {"derivation_defect_max", rep.derivation_defect_max},
                                {"cauchy_trace", trace_to_json(rep.cauchy_trace)}};
    }
    if (want_fixed) {
        alternative = run_alternative(f, spec.r, ctrl, L, spec.iterations, spec.samples);
        const FixedPointReport& rep = alternative->report;
        if (rep.branch == FixedPointBranch::AlwaysInfinite) {
            fail("fixed_point: branch ALWAYS_INFINITE, no fixed point exists at finite "
                 "distance");
        } else if (rep.verdict != Verdict::Pass) {
            fail(std::string("fixed_point: verdict ") + to_string(rep.verdict) +
                 ", final_bound_ratio " + format_number(rep.final_bound_ratio));
        }
        report["fixed_point"] =
            Json{{"branch", to_string(rep.branch)},
                 {"m0", rep.m0},
                 {"verdict", to_string(rep.verdict)},
                 {"contraction_L", L},
                 {"final_bound_ratio", finite_or_tag(rep.final_bound_ratio)},
                 {"sharper_bound_ratio", finite_or_tag(rep.sharper_bound_ratio)},
                 {"linearity_residual", rep.linearity_residual},
                 {"jensen_residual", rep.jensen_residual},
                 {"derivation_defect_max", rep.derivation_defect_max},
                 {"distance_trace", trace_to_json(rep.distance_trace)},
                 {"contraction_estimates", trace_to_json(rep.contraction_estimates)}};
    }

    if (want_direct && want_fixed && alternative->fixed_point) {
        double worst_gap = 0.0;
        for (const ComplexMatrix& probe : probe_members(*model)) {
            worst_gap = std::max(worst_gap, op_norm(direct->recovered.evaluate(probe) -
                                                    alternative->fixed_point->evaluate(probe)));
        }
        const bool agree = worst_gap <= kCrossEngineTol;
        if (!agree) {
            fail("cross_engine: recovered maps differ by " + format_number(worst_gap) +
                 " at a probe");
        }
        report["cross_engine"] = Json{{"max_gap_at_probes", worst_gap},
                                      {"tolerance", kCrossEngineTol},
                                      {"agree", agree}};
    }

    // Closed-form stability constants for the r = 2 family. The variant whose
    // denominator 2^{p-1} - 1 is negative on 0 < p < 1 cannot bound anything
    // and is reported as a suspected erratum; only the positive-denominator
    // form is checked against the recovered map.
    const bool constants_applicable = std::abs(spec.r - 2.0) <= 1e-12;
    Json constants{{"applicable", constants_applicable}, {"suspected_erratum", true}};
    if (constants_applicable) {
        const double two_p = std::pow(2.0, spec.p);
        const double negative_denominator = std::pow(2.0, spec.p - 1.0) - 1.0;
        const double stated = two_p * theta_used / negative_denominator;
        const double checked = stability_constant(ctrl, 1.0);
        const double contraction_form = L / (1.0 - L) * theta_used;
        const double consistency =
            checked == 0.0 ? 0.0 : std::abs(checked - contraction_form) / checked;
        constants["negative_denominator_constant"] = stated;
        constants["denominator_negative"] = negative_denominator < 0.0;
        constants["checked_constant"] = checked;
        constants["contraction_form"] = contraction_form;
        constants["consistency_residual"] = consistency;
    }

    // Per-sample bound table against the summed control and, when r = 2, the
    // closed-form constant; one row per sample.
    const MapHandle* recovered = nullptr;
    if (direct) recovered = &direct->recovered;
    else if (alternative && alternative->fixed_point) recovered = &*alternative->fixed_point;
    std::string table = "a_norm,gap,capital_phi,ratio\n";
    double worst_constant_ratio = 0.0;
    const double unit_constant =
        constants_applicable && theta_used > 0.0 ? stability_constant(ctrl, 1.0) : 0.0;
    if (recovered) {
        const ComplexMatrix zero = ComplexMatrix::zero(spec.m, spec.n);
        for (const ComplexMatrix& a : sample_members(*model, spec.samples)) {
            const double a_norm = op_norm(a);
            const double gap = op_norm(f.evaluate(a) - recovered->evaluate(a));
            const double phi_sum = capital_phi(ctrl, a, a, zero);
            double ratio = 0.0;
            if (phi_sum > 0.0) {
                ratio = gap / phi_sum;
            } else if (gap > 1e-12 * (1.0 + a_norm)) {
                ratio = std::numeric_limits<double>::infinity();
            }
            if (unit_constant > 0.0 && a_norm > 0.0) {
                worst_constant_ratio = std::max(
                    worst_constant_ratio, gap / (unit_constant * std::pow(a_norm, spec.p)));
            }
            table += format_number(a_norm) + "," + format_number(gap) + "," +
                     format_number(phi_sum) + "," + format_number(ratio) + "\n";
        }
    }
    if (constants_applicable) {
        constants["bound_ratio_max"] = finite_or_tag(worst_constant_ratio);
        if (recovered && worst_constant_ratio > 1.0) {
            fail("stability_constants: closed-form bound exceeded, ratio " +
                 format_number(worst_constant_ratio));
        }
    }
    report["stability_constants"] = std::move(constants);

    out.all_pass = first_failure.empty();
    out.first_failure = first_failure;
    report["all_pass"] = out.all_pass;
    report["first_failure"] = out.first_failure;
    out.report = std::move(report);
    out.bound_table = std::move(table);
    return out;
}

void emit_report(const ExperimentOutcome& outcome, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto write_file = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream stream(path, std::ios::binary);
        stream << text;
        stream.close();
        if (!stream) {
            throw std::runtime_error("emit_report: cannot write " + path.string());
        }
    };
    write_file(out_dir / "report.json", outcome.report.dump(2) + "\n");
    write_file(out_dir / "bound_table.csv", outcome.bound_table);
}

} // namespace jstab
