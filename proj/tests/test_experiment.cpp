#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "jstab/errors.hpp"
#include "jstab/experiment.hpp"
#include "jstab/serialization.hpp"

using jstab::EngineChoice;
using jstab::Json;

namespace {

jstab::ExperimentSpec tiny_spec() {
    jstab::ExperimentSpec spec;
    spec.kind = jstab::ModelKind::FullRectangular;
    spec.m = 2;
    spec.n = 2;
    spec.derivation_seed = 11;
    spec.epsilon = 1e-3;
    spec.direction_seed = 12;
    spec.engine = EngineChoice::Both;
    spec.iterations = 24;
    spec.samples.count = 200;
    spec.samples.seed = 13;
    return spec;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("engine names round trip and unknown tags are rejected") {
    for (const EngineChoice choice :
         {EngineChoice::Direct, EngineChoice::FixedPoint, EngineChoice::Both}) {
        CHECK(jstab::engine_from_string(jstab::to_string(choice)) == choice);
    }
    CHECK_THROWS_AS(jstab::engine_from_string("NEITHER"), jstab::InvalidArgumentError);
}

TEST_CASE("experiment specs survive a JSON round trip") {
    const jstab::ExperimentSpec spec = tiny_spec();
    const Json j = jstab::experiment_spec_to_json(spec);
    const jstab::ExperimentSpec back = jstab::experiment_spec_from_json(j);
    CHECK(back.kind == spec.kind);
    CHECK(back.m == spec.m);
    CHECK(back.n == spec.n);
    CHECK(back.derivation_seed == spec.derivation_seed);
    CHECK(back.derivation_scale == spec.derivation_scale);
    CHECK(back.epsilon == spec.epsilon);
    CHECK(back.rho_inner == spec.rho_inner);
    CHECK(back.rho_outer == spec.rho_outer);
    REQUIRE(back.direction_seed.has_value());
    CHECK(*back.direction_seed == *spec.direction_seed);
    CHECK_FALSE(back.theta.has_value());
    CHECK(back.p == spec.p);
    CHECK(back.r == spec.r);
    CHECK(back.engine == spec.engine);
    CHECK(back.iterations == spec.iterations);
    CHECK(back.samples.count == spec.samples.count);
    CHECK(back.samples.seed == spec.samples.seed);
}

TEST_CASE("spec parsing rejects malformed documents") {
    const Json good = jstab::experiment_spec_to_json(tiny_spec());

    Json no_model = good;
    no_model.erase("model");
    CHECK_THROWS_AS(jstab::experiment_spec_from_json(no_model), jstab::InvalidArgumentError);

    Json bad_engine = good;
    bad_engine["engine"] = "SIDEWAYS";
    CHECK_THROWS_AS(jstab::experiment_spec_from_json(bad_engine), jstab::InvalidArgumentError);

    Json bad_control = good;
    bad_control["control"]["p"] = 1.5;
    CHECK_THROWS_AS(jstab::run_experiment(jstab::experiment_spec_from_json(bad_control)),
                    jstab::InvalidArgumentError);
}

TEST_CASE("a small perturbed experiment passes end to end") {
    const auto outcome = jstab::run_experiment(tiny_spec());
    CHECK(outcome.all_pass);
    CHECK(outcome.first_failure.empty());
    CHECK(outcome.report.contains("certification"));
    CHECK(outcome.report.contains("direct"));
    CHECK(outcome.report.contains("fixed_point"));
    CHECK(outcome.report.contains("cross_engine"));
    CHECK(outcome.report["cross_engine"]["agree"].get<bool>());
    CHECK(outcome.report["all_pass"].get<bool>());
    CHECK(outcome.report["direct"]["verdict"].get<std::string>() == "PASS");
    CHECK(outcome.report["fixed_point"]["branch"].get<std::string>() == "EVENTUALLY_FINITE");
    CHECK(outcome.bound_table.rfind("a_norm,gap,capital_phi,ratio\n", 0) == 0);
}

TEST_CASE("an undersized theta fails at certification") {
    jstab::ExperimentSpec spec = tiny_spec();
    spec.theta = 1e-12;
    const auto outcome = jstab::run_experiment(spec);
    CHECK_FALSE(outcome.all_pass);
    CHECK(outcome.first_failure.find("certification") != std::string::npos);
}

TEST_CASE("reports and tables are emitted and byte stable") {
    const auto outcome = jstab::run_experiment(tiny_spec());
    const auto dir = std::filesystem::temp_directory_path() / "jstab_test_emit";
    std::filesystem::remove_all(dir);
    jstab::emit_report(outcome, dir);
    const std::string report_a = slurp(dir / "report.json");
    const std::string table_a = slurp(dir / "bound_table.csv");
    CHECK(report_a == outcome.report.dump(2) + "\n");
    CHECK(table_a == outcome.bound_table);

    const auto again = jstab::run_experiment(tiny_spec());
    CHECK(again.report.dump(2) == outcome.report.dump(2));
    CHECK(again.bound_table == outcome.bound_table);
    std::filesystem::remove_all(dir);
}
