#include "entropylab/scenario.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace {

int execute(const std::string& path, const std::string& out_dir,
            std::optional<std::uint64_t> seed,
            const std::function<void(entropylab::Scenario&)>& patch) {
    try {
        entropylab::Scenario s = entropylab::load_scenario(path);
        if (seed) s.seed = *seed;
        patch(s);
        return entropylab::run_scenario(s, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"subshift entropy, independence and measure-space laboratory"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    bool guard_override = false;

    auto* run = app.add_subcommand("run", "run a scenario file as-is");
    run->add_option("scenario", scenario_path, "scenario JSON path")->required();
    run->add_option("--out", out_dir, "report output directory");
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_flag("--guard-override", guard_override,
                  "accept scenarios that raise the default guards");

    std::string ent_scenario;
    int nmax = 0;
    bool greedy = false, exact = false;
    auto* ent = app.add_subcommand("entropy", "cover entropy profile, CSV output");
    ent->add_option("--scenario", ent_scenario, "scenario JSON path")->required();
    ent->add_option("--nmax", nmax, "largest join depth");
    ent->add_flag("--exact", exact, "exact minimum subcovers (default)");
    ent->add_flag("--greedy", greedy, "greedy upper bounds instead of exact");
    ent->add_option("--out", out_dir, "report output directory");
    ent->add_option("--seed", seed, "override the scenario seed");

    std::string ind_scenario;
    int horizon = 0;
    bool do_search = false, do_verify = false;
    auto* ind = app.add_subcommand("independence", "independence search or verification");
    ind->add_option("--scenario", ind_scenario, "scenario JSON path")->required();
    ind->add_option("--horizon", horizon, "search window length");
    ind->add_flag("--search", do_search, "maximum-density search (default)");
    ind->add_flag("--verify", do_verify, "verify the scenario's index list");
    ind->add_option("--out", out_dir, "report output directory");
    ind->add_option("--seed", seed, "override the scenario seed");

    std::string cert_scenario;
    int depth = 0;
    std::string report_dir;
    auto* cert = app.add_subcommand("certificate", "entropy-witness matrix pipeline");
    cert->add_option("--scenario", cert_scenario, "scenario JSON path")->required();
    cert->add_option("--m", depth, "join depth");
    cert->add_option("--emit-report", report_dir, "report output directory");
    cert->add_option("--seed", seed, "override the scenario seed");

    std::string lift_scenario;
    auto* lift = app.add_subcommand("lemma32", "threshold-set product lifting");
    lift->add_option("--scenario", lift_scenario, "scenario JSON path")->required();
    lift->add_option("--out", out_dir, "report output directory");
    lift->add_option("--seed", seed, "override the scenario seed");

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand(run))
        return execute(scenario_path, out_dir, seed, [](entropylab::Scenario&) {});

    if (app.got_subcommand(ent))
        return execute(ent_scenario, out_dir, seed, [&](entropylab::Scenario& s) {
            s.experiment = "entropy";
            if (nmax > 0) s.parameters["n_max"] = nmax;
            if (greedy) s.parameters["exact"] = false;
            if (exact) s.parameters["exact"] = true;
        });

    if (app.got_subcommand(ind))
        return execute(ind_scenario, out_dir, seed, [&](entropylab::Scenario& s) {
            s.experiment = "independence";
            if (horizon > 0) s.parameters["horizon"] = horizon;
            if (do_verify) s.parameters["mode"] = "verify";
            if (do_search) s.parameters["mode"] = "search";
        });

    if (app.got_subcommand(cert))
        return execute(cert_scenario, report_dir.empty() ? out_dir : report_dir, seed,
                       [&](entropylab::Scenario& s) {
                           s.experiment = "certificate";
                           if (depth > 0) s.parameters["m"] = depth;
                       });

    if (app.got_subcommand(lift))
        return execute(lift_scenario, out_dir, seed,
                       [](entropylab::Scenario& s) { s.experiment = "lemma32"; });

    return 2;
}
