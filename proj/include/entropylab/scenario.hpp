#ifndef ENTROPYLAB_SCENARIO_HPP
#define ENTROPYLAB_SCENARIO_HPP

#include "entropylab/measures.hpp"
#include "entropylab/shiftspace.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace entropylab {

/// Schema or guard violation: maps to exit code 2.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A checked property failed during the run: maps to exit code 1.
struct AssertionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Scenario {
    Subshift space;
    std::map<std::string, ClopenSet> sets;
    std::string experiment;
    nlohmann::json parameters;
    std::uint64_t seed = 0;
};

Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

/// Exact value serialized as fraction string plus decimal rendering.
nlohmann::json rat_json(const Rat& r);

/// Uniformly seeded point sampling: a random point whose prefix lies in
/// the given clopen set.
Point random_point_in(const ClopenSet& a, std::mt19937_64& rng);
DiscreteMeasure random_measure_on(const Subshift& s, std::mt19937_64& rng,
                                  std::size_t max_support);

/// Executes the scenario's experiment; returns the report (deterministic
/// for fixed scenario and seed). Throws AssertionFailure / ScenarioError.
nlohmann::json run_experiment(const Scenario& s);

/// Runs a parsed scenario and writes report.json (and entropy.csv for
/// entropy runs) under out_dir; returns the process exit code (0 pass,
/// 1 assertion failure, 2 schema/guard error).
int run_scenario(const Scenario& s, const std::string& out_dir);

/// Full CLI contract: load, run, write reports; same exit codes, with 2
/// for unreadable or malformed scenario files.
int run_scenario_file(const std::string& path, const std::string& out_dir,
                      std::optional<std::uint64_t> seed_override = {});

} // namespace entropylab

#endif
