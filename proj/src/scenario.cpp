#include "entropylab/scenario.hpp"

#include "entropylab/covers.hpp"
#include "entropylab/gwcert.hpp"
#include "entropylab/independence.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace entropylab {

namespace {

using nlohmann::json;

void require(bool cond, const std::string& msg) {
    if (!cond) throw ScenarioError(msg);
}

Rat rat_param(const json& v) {
    if (v.is_string()) return rat_from_string(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long long>());
    throw ScenarioError("rational parameters must be fraction strings or integers");
}

std::vector<int> int_list(const json& v) {
    require(v.is_array(), "expected an integer list");
    std::vector<int> out;
    for (const auto& e : v) out.push_back(e.get<int>());
    return out;
}

std::vector<int> range(int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i) out.push_back(i);
    return out;
}

const ClopenSet& named_set(const Scenario& s, const std::string& name) {
    auto it = s.sets.find(name);
    require(it != s.sets.end(), "unknown set name: " + name);
    return it->second;
}

const ClopenSet& set_param(const Scenario& s, const std::string& key,
                           const std::string& fallback) {
    return named_set(s, s.parameters.value(key, fallback));
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json header(const Scenario& s) {
    return {{"report_version", 1}, {"experiment", s.experiment}, {"seed", s.seed}};
}

// --- experiments ---------------------------------------------------------

json run_entropy(const Scenario& s) {
    const ClopenSet& u0 = set_param(s, "u0", "U0");
    const ClopenSet& u1 = set_param(s, "u1", "U1");
    int n_max = s.parameters.value("n_max", 8);
    bool exact = s.parameters.value("exact", true);
    auto profile = cover_entropy_profile(u0, u1, n_max, exact);

    json rows = json::array();
    std::ostringstream csv;
    csv << "n,subcover_size,log2_over_n\n";
    for (const auto& row : profile.rows) {
        rows.push_back({{"n", row.n},
                        {"subcover_size", row.subcover_size.str()},
                        {"log2_over_n", row.log2_over_n}});
        csv << row.n << ',' << row.subcover_size.str() << ','
            << fmt_double(row.log2_over_n) << '\n';
    }
    json rep = header(s);
    rep["rows"] = rows;
    rep["fekete_estimate"] = profile.fekete_estimate;
    rep["last_value"] = profile.last_value;
    rep["exact"] = exact;
    rep["csv"] = csv.str();
    return rep;
}

json run_prohorov(const Scenario& s) {
    int pairs = s.parameters.value("pairs", 200);
    int max_support = s.parameters.value("max_support", 8);
    std::mt19937_64 rng(s.seed);
    for (int i = 0; i < pairs; ++i) {
        auto mu = random_measure_on(s.space, rng, max_support);
        auto nu = random_measure_on(s.space, rng, max_support);
        Rat flow = prohorov_flow(mu, nu);
        Rat one = prohorov_subset(mu, nu, false);
        Rat sym = prohorov_subset(mu, nu, true);
        if (!(flow == one && one == sym))
            throw AssertionFailure("distance algorithms disagree at pair " + std::to_string(i));
    }
    json rep = header(s);
    rep["pairs"] = pairs;
    rep["all_equal"] = true;
    return rep;
}

json run_independence(const Scenario& s) {
    const ClopenSet& u0 = set_param(s, "u0", "U0");
    const ClopenSet& u1 = set_param(s, "u1", "U1");
    std::string mode = s.parameters.value("mode", "search");
    json rep = header(s);
    if (mode == "search") {
        int horizon = s.parameters.value("horizon", 12);
        auto res = max_independence_density({u0, u1}, horizon);
        rep["horizon"] = horizon;
        rep["indices"] = res.indices;
        rep["density"] = rat_json(res.density);
    } else if (mode == "verify") {
        require(s.parameters.contains("indices"), "verify mode needs indices");
        auto indices = int_list(s.parameters.at("indices"));
        auto res = verify_independence({u0, u1}, indices);
        rep["indices"] = indices;
        rep["ok"] = res.ok;
        if (!res.ok) rep["counterexample"] = res.counterexample;
    } else {
        throw ScenarioError("independence mode must be search or verify");
    }
    return rep;
}

json run_certificate(const Scenario& s) {
    const ClopenSet& u0 = set_param(s, "u0", "U0");
    const ClopenSet& u1 = set_param(s, "u1", "U1");
    int m = s.parameters.value("m", 6);
    std::vector<int> j_indices = s.parameters.contains("j_indices")
                                     ? int_list(s.parameters.at("j_indices"))
                                     : range(m);
    ClopenSet v0 = s.parameters.contains("v0") ? named_set(s, s.parameters.at("v0").get<std::string>())
                                               : u0.difference(u1);
    ClopenSet v1 = s.parameters.contains("v1") ? named_set(s, s.parameters.at("v1").get<std::string>())
                                               : u1.difference(u0);
    Rat eta = s.parameters.contains("eta") ? rat_param(s.parameters.at("eta")) : Rat(9, 10);
    Rat eps = s.parameters.contains("eps") ? rat_param(s.parameters.at("eps")) : Rat(1, 2);

    auto rep = entropy_witness_pipeline(u0, u1, v0, v1, j_indices, m, {}, eta, eps);
    json out = header(s);
    out["m"] = rep.m;
    out["j_size"] = rep.j_size;
    out["k_m"] = rep.k_m;
    out["separated_count"] = rep.separated_count;
    out["witness_exponent"] = rep.witness_exponent;
    out["log2_km_over_m"] = rep.log2_km_over_m;
    out["all_images_separated"] = rep.all_images_separated;
    out["bound_consistency"] = rep.bound_consistency;
    out["subcover"] = rep.subcover;
    json matrix = json::array();
    for (const auto& row : rep.matrix.t) {
        std::string bits;
        for (int b : row) bits.push_back(char('0' + b));
        matrix.push_back(bits);
    }
    out["matrix"] = matrix;
    if (!rep.all_images_separated)
        throw AssertionFailure("phi-images are not pairwise separated");
    return out;
}

json run_lemma31(const Scenario& s) {
    int cases = s.parameters.value("cases", 50);
    int perturbations = s.parameters.value("perturbations", 50);
    Rat eps = s.parameters.contains("eps") ? rat_param(s.parameters.at("eps")) : Rat(1, 2);
    std::mt19937_64 rng(s.seed);
    for (int c = 0; c < cases; ++c) {
        auto mu = random_measure_on(s.space, rng, 4);
        auto w = basis_refine(mu, eps);
        if (!w_contains(w, mu)) throw AssertionFailure("refined set misses its center");
        Rat delta = w_robustness_radius(w, mu);
        if (!(delta > 0)) throw AssertionFailure("robustness radius not positive");
        unsigned k = 0;
        while (dyadic(k) >= delta) ++k;
        // perturbations inside the radius stay inside W
        for (int p = 0; p < perturbations; ++p) {
            std::vector<std::pair<Point, Rat>> atoms;
            for (const auto& [x, mass] : mu.atoms())
                atoms.emplace_back(
                    random_point_in(ClopenSet::cylinder(s.space, x.prefix(k)), rng), mass);
            DiscreteMeasure nu(std::move(atoms));
            if (!(prohorov_subset(nu, mu, true) < delta))
                throw AssertionFailure("perturbation escaped the radius");
            if (!w_contains(w, nu)) throw AssertionFailure("ball point escaped W");
        }
        // sampled members of W stay within eps of the center
        for (int p = 0; p < perturbations; ++p) {
            std::vector<std::pair<Point, Rat>> atoms;
            for (const auto& [part, eta] : w.parts())
                atoms.emplace_back(random_point_in(part, rng), measure_of(mu, part));
            DiscreteMeasure nu(std::move(atoms));
            if (!w_contains(w, nu)) throw AssertionFailure("constructed member misses W");
            if (!(prohorov_subset(nu, mu, true) < eps))
                throw AssertionFailure("member of W outside the eps-ball");
        }
    }
    json rep = header(s);
    rep["cases"] = cases;
    rep["perturbations"] = perturbations;
    rep["eps"] = rat_json(eps);
    rep["all_contained"] = true;
    return rep;
}

WNeighborhood w_from_json(const Scenario& s, const json& spec) {
    require(spec.is_array() && !spec.empty(), "threshold set needs parts");
    std::vector<std::pair<ClopenSet, Rat>> parts;
    for (const auto& part : spec)
        parts.emplace_back(named_set(s, part.at("set").get<std::string>()),
                           rat_param(part.at("eta")));
    return WNeighborhood(std::move(parts));
}

json run_lemma32(const Scenario& s) {
    unsigned n = s.parameters.value("n", 2u); // 0 marks unrestricted measures
    int samples = s.parameters.value("samples", 200);
    require(s.parameters.contains("w0") && s.parameters.contains("w1"),
            "lemma32 needs w0 and w1 threshold specs");
    WNeighborhood w0 = w_from_json(s, s.parameters.at("w0"));
    WNeighborhood w1 = w_from_json(s, s.parameters.at("w1"));
    auto lift = lift_open_to_product(w0, w1, n);
    std::mt19937_64 rng(s.seed);
    for (int p = 0; p < samples; ++p)
        for (int k = 0; k < 2; ++k) {
            std::vector<Point> xs;
            for (const auto& box : lift.boxes[k]) xs.push_back(random_point_in(box, rng));
            auto mu = r_m(xs);
            if (!w_contains(k == 0 ? w0 : w1, mu))
                throw AssertionFailure("box tuple left its target set");
            if (n > 0 && !in_m_n(mu, n))
                throw AssertionFailure("box tuple left the empirical lattice");
        }
    json rep = header(s);
    rep["n"] = n;
    rep["m"] = lift.m;
    rep["samples"] = samples;
    rep["failures"] = 0;
    return rep;
}

json run_upe_transfer(const Scenario& s) {
    const ClopenSet& u0 = set_param(s, "u0", "U0");
    const ClopenSet& u1 = set_param(s, "u1", "U1");
    unsigned n = s.parameters.value("n", 2u);
    int horizon = s.parameters.value("horizon", 8);

    auto density = max_independence_density({u0, u1}, horizon);
    require(!density.indices.empty(), "no independence set found");
    int m = s.parameters.value("m", density.indices.back() + 1);

    auto cert = lift_base_to_measure(density.indices, u0, u1, n, n);
    bool lift_ok = verify_certificate(cert);
    auto base = reduce_measure_to_base_finite_n(cert);
    bool reduce_ok = verify_certificate(base) && base.indices == density.indices;

    std::vector<int> j_indices;
    for (int j : density.indices)
        if (j < m) j_indices.push_back(j);
    auto pipeline =
        entropy_witness_pipeline(u0, u1, u0.difference(u1), u1.difference(u0), j_indices, m);

    bool pass = lift_ok && reduce_ok && pipeline.all_images_separated &&
                pipeline.bound_consistency;
    if (!pass) throw AssertionFailure("transfer round-trip failed");

    json rep = header(s);
    rep["horizon"] = horizon;
    rep["n"] = n;
    rep["m"] = m;
    rep["base_density"] = rat_json(density.density);
    rep["indices"] = density.indices;
    rep["lift_patterns"] = cert.measure_witnesses.size();
    rep["lift_verified"] = lift_ok;
    rep["roundtrip_verified"] = reduce_ok;
    rep["k_m"] = pipeline.k_m;
    rep["separated_count"] = pipeline.separated_count;
    rep["witness_exponent"] = pipeline.witness_exponent;
    rep["pass"] = true;
    return rep;
}

} // namespace

json rat_json(const Rat& r) {
    return {{"fraction", rat_to_string(r)}, {"decimal", rat_to_double(r)}};
}

Point random_point_in(const ClopenSet& a, std::mt19937_64& rng) {
    if (a.is_empty()) throw ScenarioError("cannot sample from the empty set");
    const Subshift& s = a.space();
    std::uniform_int_distribution<std::size_t> pick(0, a.words().size() - 1);
    auto it = a.words().begin();
    std::advance(it, pick(rng));
    std::string w = *it;
    std::uniform_int_distribution<int> extra(0, 3), sym(0, s.alphabet_size() - 1);
    int n = extra(rng);
    for (int i = 0; i < n; ++i) {
        int first = sym(rng);
        for (int off = 0; off < s.alphabet_size(); ++off) {
            w.push_back(s.symbol((first + off) % s.alphabet_size()));
            if (s.word_admissible(w)) break;
            w.pop_back();
        }
    }
    auto [tail, period] = s.least_tail(w);
    return Point(s, w + tail, period);
}

DiscreteMeasure random_measure_on(const Subshift& s, std::mt19937_64& rng,
                                  std::size_t max_support) {
    std::uniform_int_distribution<std::size_t> supp(1, max_support);
    std::uniform_int_distribution<int> wdist(1, 6);
    std::size_t n = supp(rng);
    std::vector<int> weights;
    Int total(0);
    for (std::size_t i = 0; i < n; ++i) {
        weights.push_back(wdist(rng));
        total += weights.back();
    }
    std::vector<std::pair<Point, Rat>> atoms;
    ClopenSet everything = ClopenSet::full(s);
    for (std::size_t i = 0; i < n; ++i)
        atoms.emplace_back(random_point_in(everything, rng), Rat(weights[i], total));
    return DiscreteMeasure(std::move(atoms));
}

Scenario parse_scenario(const json& j) {
    try {
        require(j.is_object(), "scenario must be a JSON object");
        require(j.contains("subshift"), "scenario needs a subshift");
        const json& sub = j.at("subshift");
        int alphabet = sub.value("alphabet", 2);
        std::vector<std::string> forbidden;
        for (const auto& w : sub.value("forbidden", json::array()))
            forbidden.push_back(w.get<std::string>());
        Subshift space(alphabet, std::move(forbidden));

        std::map<std::string, ClopenSet> sets;
        for (const auto& [name, spec] : j.value("sets", json::object()).items()) {
            std::set<std::string> words;
            for (const auto& w : spec.at("words")) words.insert(w.get<std::string>());
            sets.emplace(name, ClopenSet::from_words(space, spec.at("window").get<int>(),
                                                     std::move(words)));
        }
        // default symbol cylinders when not named explicitly
        sets.emplace("U0", ClopenSet::cylinder(space, "0"));
        sets.emplace("U1", ClopenSet::cylinder(space, "1"));

        Scenario s{std::move(space), std::move(sets), j.at("experiment").get<std::string>(),
                   j.value("parameters", json::object()), j.value("seed", std::uint64_t(1))};
        return s;
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario schema error: ") + e.what());
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot read scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }
    return parse_scenario(j);
}

json run_experiment(const Scenario& s) {
    if (s.experiment == "entropy") return run_entropy(s);
    if (s.experiment == "prohorov") return run_prohorov(s);
    if (s.experiment == "independence") return run_independence(s);
    if (s.experiment == "certificate") return run_certificate(s);
    if (s.experiment == "lemma31") return run_lemma31(s);
    if (s.experiment == "lemma32") return run_lemma32(s);
    if (s.experiment == "upe-transfer") return run_upe_transfer(s);
    throw ScenarioError("unknown experiment: " + s.experiment);
}

int run_scenario(const Scenario& s, const std::string& out_dir) {
    try {
        json report = run_experiment(s);

        std::filesystem::create_directories(out_dir);
        if (report.contains("csv")) {
            std::ofstream csv(std::filesystem::path(out_dir) / "entropy.csv");
            csv << report.at("csv").get<std::string>();
            report.erase("csv");
        }
        std::ofstream out(std::filesystem::path(out_dir) / "report.json");
        out << report.dump(2) << '\n';
        std::cout << report.dump(2) << std::endl;
        return 0;
    } catch (const AssertionFailure& e) {
        std::cerr << "assertion failure: " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
}

int run_scenario_file(const std::string& path, const std::string& out_dir,
                      std::optional<std::uint64_t> seed_override) {
    try {
        Scenario s = load_scenario(path);
        if (seed_override) s.seed = *seed_override;
        return run_scenario(s, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
}

} // namespace entropylab
