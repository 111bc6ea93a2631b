#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jstab/experiment.hpp"

namespace {

jstab::Json read_json_file(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) throw std::runtime_error("cannot open spec file: " + path);
    return jstab::Json::parse(stream);
}

jstab::ExperimentSpec load_experiment(const std::string& path,
                                      const std::optional<std::uint64_t>& seed_override) {
    jstab::ExperimentSpec spec = jstab::experiment_spec_from_json(read_json_file(path));
    if (seed_override) spec.samples.seed = *seed_override;
    return spec;
}

int run_pipeline(const std::string& spec_path, const std::optional<std::uint64_t>& seed,
                 const std::string& out_dir, std::optional<jstab::EngineChoice> engine) {
    jstab::ExperimentSpec spec = load_experiment(spec_path, seed);
    if (engine) spec.engine = *engine;
    const jstab::ExperimentOutcome outcome = jstab::run_experiment(spec);
    jstab::emit_report(outcome, out_dir);
    const jstab::Json& report = outcome.report;
    std::cout << "certification: theta_required="
              << jstab::format_number(report["certification"]["theta_required"].get<double>())
              << " theta_used="
              << jstab::format_number(report["certification"]["theta_used"].get<double>())
              << " satisfied=" << (report["certification"]["satisfied"].get<bool>() ? "true" : "false")
              << "\n";
    if (report.contains("direct")) {
        std::cout << "direct: verdict=" << report["direct"]["verdict"].get<std::string>()
                  << " bound_ratio_max=" << report["direct"]["bound_ratio_max"].dump() << "\n";
    }
    if (report.contains("fixed_point")) {
        std::cout << "fixed_point: branch=" << report["fixed_point"]["branch"].get<std::string>()
                  << " verdict=" << report["fixed_point"]["verdict"].get<std::string>() << "\n";
    }
    if (report.contains("cross_engine")) {
        std::cout << "cross_engine: agree="
                  << (report["cross_engine"]["agree"].get<bool>() ? "true" : "false") << "\n";
    }
    std::cout << "report: " << out_dir << "/report.json\n";
    if (!outcome.all_pass) {
        std::cerr << "FAIL: " << outcome.first_failure << "\n";
        return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for derivation stability on matrix triple systems"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::string kind = "FULL_RECTANGULAR";
    int m = 2;
    int n = 2;
    int trials = 200;
    std::uint64_t algebra_seed = 0;
    std::uint64_t make_seed = 0;
    double scale = 1.0;

    auto* algebra = app.add_subcommand("algebra", "model construction checks");
    algebra->require_subcommand(1);
    auto* algebra_check = algebra->add_subcommand("check", "verify triple closure of a model");
    algebra_check->add_option("--kind", kind, "model kind tag");
    algebra_check->add_option("--m", m, "ambient rows");
    algebra_check->add_option("--n", n, "ambient cols");
    algebra_check->add_option("--trials", trials, "random members to test");
    algebra_check->add_option("--seed", algebra_seed, "rng seed");

    auto* derivation = app.add_subcommand("derivation", "ground-truth derivations");
    derivation->require_subcommand(1);
    auto* derivation_make =
        derivation->add_subcommand("make", "draw a random derivation and verify its identity");
    derivation_make->add_option("--kind", kind, "model kind tag");
    derivation_make->add_option("--m", m, "ambient rows");
    derivation_make->add_option("--n", n, "ambient cols");
    derivation_make->add_option("--seed", make_seed, "rng seed");
    derivation_make->add_option("--scale", scale, "generator operator norm");
    derivation_make->add_option("--out", out_dir, "output directory");

    auto* perturb_cmd = app.add_subcommand("perturb", "hypothesis certification");
    perturb_cmd->require_subcommand(1);
    auto* perturb_certify =
        perturb_cmd->add_subcommand("certify", "certify the defect inequality empirically");
    perturb_certify->add_option("--spec", spec_path, "experiment spec file")->required();
    perturb_certify->add_option("--seed", seed, "override sample seed");

    auto* recover = app.add_subcommand("recover", "run one recovery engine");
    recover->require_subcommand(1);
    auto* recover_direct = recover->add_subcommand("direct", "scaling-limit recovery");
    recover_direct->add_option("--spec", spec_path, "experiment spec file")->required();
    recover_direct->add_option("--seed", seed, "override sample seed");
    recover_direct->add_option("--out", out_dir, "output directory");
    auto* recover_fixed = recover->add_subcommand("fixedpoint", "contraction iteration recovery");
    recover_fixed->add_option("--spec", spec_path, "experiment spec file")->required();
    recover_fixed->add_option("--seed", seed, "override sample seed");
    recover_fixed->add_option("--out", out_dir, "output directory");

    auto* experiment = app.add_subcommand("experiment", "full pipeline");
    experiment->require_subcommand(1);
    auto* experiment_run = experiment->add_subcommand("run", "run an experiment file end to end");
    experiment_run->add_option("--spec", spec_path, "experiment spec file")->required();
    experiment_run->add_option("--seed", seed, "override sample seed");
    experiment_run->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (algebra_check->parsed()) {
            const auto model = jstab::make_model(jstab::model_kind_from_string(kind), m, n);
            const auto result = jstab::check_triple_closure(model, trials, algebra_seed);
            std::cout << "model: " << jstab::to_string(model.kind()) << " " << m << "x" << n
                      << " dimension=" << model.dimension() << "\n"
                      << "closed: " << (result.closed ? "true" : "false")
                      << " worst_residual=" << jstab::format_number(result.worst_residual) << "\n";
            return result.closed ? 0 : 1;
        }
        if (derivation_make->parsed()) {
            const auto model = std::make_shared<const jstab::JStarAlgebraModel>(
                jstab::make_model(jstab::model_kind_from_string(kind), m, n));
            const auto [spec, handle] = jstab::random_inner_derivation(model, scale, make_seed);
            double worst = 0.0;
            for (std::uint64_t t = 0; t < 50; ++t) {
                const auto c = model->random_member(1.0, make_seed ^ (0xd00d + t));
                worst = std::max(worst,
                                 jstab::derivation_defect(handle, c) /
                                     (1.0 + std::pow(jstab::op_norm(c), 3.0)));
            }
            std::filesystem::create_directories(out_dir);
            std::ofstream file(std::filesystem::path(out_dir) / "derivation.json");
            file << jstab::derivation_spec_to_json(spec).dump(2) << "\n";
            if (!file) throw std::runtime_error("cannot write derivation.json under " + out_dir);
            std::cout << "derivation: written to " << out_dir << "/derivation.json"
                      << " worst_defect=" << jstab::format_number(worst) << "\n";
            return worst <= 1e-11 ? 0 : 1;
        }
        if (perturb_certify->parsed()) {
            jstab::ExperimentSpec spec = load_experiment(spec_path, seed);
            const auto model = std::make_shared<const jstab::JStarAlgebraModel>(
                jstab::make_model(spec.kind, spec.m, spec.n));
            const auto [dspec, d] =
                jstab::random_inner_derivation(model, spec.derivation_scale, spec.derivation_seed);
            const jstab::ComplexMatrix direction =
                spec.direction ? *spec.direction : model->random_member(1.0, *spec.direction_seed);
            const auto g = jstab::make_annulus_perturbation(
                model, jstab::AnnulusBumpSpec{spec.epsilon, spec.rho_inner, spec.rho_outer,
                                              direction},
                0);
            const auto f = jstab::perturb(d, g);
            const double probe_theta = spec.theta ? *spec.theta : 1e12;
            const auto cert = jstab::certify_hypothesis(
                f, jstab::PowerControl(probe_theta, spec.p, spec.r), spec.samples);
            std::cout << "theta_required: " << jstab::format_number(cert.theta_required) << "\n"
                      << "satisfied: " << (cert.satisfied ? "true" : "false") << "\n";
            return cert.satisfied ? 0 : 1;
        }
        if (recover_direct->parsed()) {
            return run_pipeline(spec_path, seed, out_dir, jstab::EngineChoice::Direct);
        }
        if (recover_fixed->parsed()) {
            return run_pipeline(spec_path, seed, out_dir, jstab::EngineChoice::FixedPoint);
        }
        if (experiment_run->parsed()) {
            return run_pipeline(spec_path, seed, out_dir, std::nullopt);
        }
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    }
}
