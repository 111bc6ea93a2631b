#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "jstab/fixed_point_engine.hpp"
#include "jstab/perturbation.hpp"
#include "jstab/serialization.hpp"

namespace jstab {

enum class EngineChoice { Direct, FixedPoint, Both };

const char* to_string(EngineChoice choice);
EngineChoice engine_from_string(std::string_view name);

// Complete description of one run: model, ground-truth derivation, bump
// perturbation, control parameters, engine selection, and sampling. When
// theta is absent the run certifies the hypothesis first and adopts the
// empirical requirement times a 1.25 safety factor.
struct ExperimentSpec {
    ModelKind kind = ModelKind::FullRectangular;
    int m = 3;
    int n = 2;
    std::uint64_t derivation_seed = 0;
    double derivation_scale = 1.0;
    double epsilon = 0.0;
    double rho_inner = 0.5;
    double rho_outer = 2.0;
    std::optional<std::uint64_t> direction_seed;
    std::optional<ComplexMatrix> direction;
    std::optional<double> theta;
    double p = 0.5;
    double r = 2.0;
    EngineChoice engine = EngineChoice::Both;
    int iterations = 40;
    SampleSpec samples;
};

ExperimentSpec experiment_spec_from_json(const Json& j);
Json experiment_spec_to_json(const ExperimentSpec& spec);

struct ExperimentOutcome {
    bool all_pass = false;
    std::string first_failure; // empty when all_pass
    Json report;
    std::string bound_table; // CSV: a_norm, gap, capital_phi, ratio
};

// Full pipeline: build, certify, recover through the chosen engine(s),
// verify every bound, and assemble the deterministic report. Never exits;
// failures land in first_failure so callers choose the exit status.
ExperimentOutcome run_experiment(const ExperimentSpec& spec);

// Writes report.json and bound_table.csv under out_dir, creating it first.
void emit_report(const ExperimentOutcome& outcome, const std::filesystem::path& out_dir);

} // namespace jstab
