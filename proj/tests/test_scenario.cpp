#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qisim/scenario.hpp"

using namespace qisim;
using qisim::scenario::json;

namespace {

namespace fs = std::filesystem;

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("qisim_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("stirap scenario end to end") {
    const fs::path dir = temp_dir("stirap");
    const json cfg = {{"kind", "stirap"},
                      {"params", {{"omega0", 20.0}, {"tau", 1.0}, {"delay", 1.2}}},
                      {"grid", {{"points", 801}}}};
    const auto rr = scenario::run_scenario_json(cfg, "run", dir);
    CHECK(rr.summary["results"]["final_P_s"].get<double>() > 0.999);
    CHECK(fs::exists(dir / "run.csv"));
    CHECK(fs::exists(dir / "run_summary.json"));

    // header row names every column; schema block matches
    const std::string csv = slurp(dir / "run.csv");
    const std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header == "t,P_g,P_e,P_s,norm");
    CHECK(rr.summary["schema"]["columns"].size() == 5);
}

TEST_CASE("unknown keys are rejected everywhere") {
    const fs::path dir = temp_dir("strict");
    const json cfg = {{"kind", "stirap"},
                      {"params", {{"omega0", 20.0}, {"bogus", 1.0}}}};
    CHECK_THROWS_AS(scenario::run_scenario_json(cfg, "x", dir), scenario::ParseError);

    const json top = {{"kind", "stirap"}, {"params", {{"omega0", 20.0}}}, {"extra", 1}};
    CHECK_THROWS_AS(scenario::run_scenario_json(top, "x", dir), scenario::ParseError);
}

TEST_CASE("eit scan emits a transparent point when the dark resonance is stable") {
    const fs::path dir = temp_dir("eit");
    const json cfg = {{"kind", "eit-scan"},
                      {"params",
                       {{"scheme", "lambda"},
                        {"Omega_P", 1e-3},
                        {"Omega_C", 1.0},
                        {"Gamma_e", 1.0},
                        {"Gamma_s", 0.0}}},
                      {"grid", {{"min", -10.0}, {"max", 10.0}, {"points", 401}}}};
    const auto rr = scenario::run_scenario_json(cfg, "eit", dir);
    CHECK(std::abs(rr.summary["results"]["alpha_at_zero"].get<double>()) < 1e-10);

    // the delta = 0 row carries alpha = 0
    std::ifstream in(dir / "eit.csv");
    std::string line;
    std::getline(in, line); // header
    bool found = false;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        const double delta = std::stod(line.substr(0, comma));
        if (std::abs(delta) < 1e-12) {
            const auto second = line.find(',', comma + 1);
            const double alpha = std::stod(line.substr(comma + 1, second - comma - 1));
            CHECK(std::abs(alpha) < 1e-10);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("grover scenario summary") {
    const fs::path dir = temp_dir("grover");
    const json cfg = {{"kind", "grover"},
                      {"params", {{"n_qubits", 4}, {"target", 5}, {"iters", 3}}}};
    const auto rr = scenario::run_scenario_json(cfg, "g", dir);
    CHECK(rr.summary["results"]["success_probability"].get<double>() ==
          doctest::Approx(0.9613).epsilon(1e-3));
}

TEST_CASE("identical config and seed give byte-identical outputs") {
    const fs::path dir1 = temp_dir("det1");
    const fs::path dir2 = temp_dir("det2");
    const json cfg = {{"kind", "bb84"}, {"params", {{"n_pulses", 20000}}}, {"seed", 99}};
    scenario::run_scenario_json(cfg, "b", dir1);
    scenario::run_scenario_json(cfg, "b", dir2);
    CHECK(slurp(dir1 / "b.csv") == slurp(dir2 / "b.csv"));
    CHECK(slurp(dir1 / "b_summary.json") == slurp(dir2 / "b_summary.json"));
}

TEST_CASE("seed override changes the sampled key") {
    const fs::path dir1 = temp_dir("seed1");
    const fs::path dir2 = temp_dir("seed2");
    const json cfg = {{"kind", "bb84"}, {"params", {{"n_pulses", 5000}}}, {"seed", 1}};
    scenario::run_scenario_json(cfg, "b", dir1);
    scenario::run_scenario_json(cfg, "b", dir2, 2);
    CHECK(slurp(dir1 / "b.csv") != slurp(dir2 / "b.csv"));
}

TEST_CASE("sweep writes per-value outputs and a manifest") {
    const fs::path dir = temp_dir("sweep");
    const json base = {{"kind", "eit-scan"},
                       {"params",
                        {{"scheme", "lambda"},
                         {"Omega_P", 1e-3},
                         {"Omega_C", 1.0},
                         {"Gamma_e", 1.0},
                         {"Gamma_s", 0.0}}},
                       {"grid", {{"min", -15.0}, {"max", 15.0}, {"points", 601}}}};
    const fs::path cfg_path = dir / "base.json";
    {
        std::ofstream out(cfg_path);
        out << base.dump(2);
    }

    const json serial =
        scenario::sweep(cfg_path, "params.Omega_C", {1.0, 2.0, 4.0}, dir / "serial", {}, 1);
    const json parallel =
        scenario::sweep(cfg_path, "params.Omega_C", {1.0, 2.0, 4.0}, dir / "parallel", {}, 3);
    CHECK(serial["all_ok"].get<bool>());
    CHECK(parallel["all_ok"].get<bool>());

    // parallel equals serial byte for byte
    for (const char* name : {"base_000.csv", "base_001.csv", "base_002.csv"}) {
        CHECK(slurp(dir / "serial" / name) == slurp(dir / "parallel" / name));
        CHECK(!slurp(dir / "serial" / name).empty());
    }

    // transparency window widens with the coupling drive
    auto fwhm = [&](const char* name) {
        const json s = json::parse(slurp(dir / "serial" / name));
        return s["results"]["dip_fwhm"].get<double>();
    };
    const double w1 = fwhm("base_000_summary.json");
    const double w2 = fwhm("base_001_summary.json");
    const double w4 = fwhm("base_002_summary.json");
    CHECK(w1 < w2);
    CHECK(w2 < w4);
}

TEST_CASE("sweep rejects unknown or non-scalar parameters") {
    const fs::path dir = temp_dir("sweepbad");
    const json base = {{"kind", "deutsch"}, {"params", {{"f0", 0}, {"f1", 1}}}};
    const fs::path cfg_path = dir / "base.json";
    {
        std::ofstream out(cfg_path);
        out << base.dump(2);
    }
    CHECK_THROWS_AS(scenario::sweep(cfg_path, "params.nope", {1.0}, dir, {}, 1),
                    scenario::ParseError);
    CHECK_THROWS_AS(scenario::sweep(cfg_path, "kind", {1.0}, dir, {}, 1), scenario::ParseError);
    CHECK_THROWS_AS(scenario::sweep(cfg_path, "params.f0", {}, dir, {}, 1),
                    scenario::ParseError);
}

TEST_CASE("every kind runs from a minimal config") {
    const fs::path dir = temp_dir("kinds");
    const std::vector<json> configs = {
        {{"kind", "stirap"}, {"params", {{"omega0", 20.0}}}, {"grid", {{"points", 401}}}},
        {{"kind", "fstirap"}, {"params", {{"Theta", M_PI / 4}}}, {"grid", {{"points", 401}}}},
        {{"kind", "cpt"}, {"params", {{"Omega_P", 1.0}, {"Omega_C", 2.0}}}},
        {{"kind", "eit-scan"},
         {"params", {{"Omega_P", 1e-3}}},
         {"grid", {{"min", -5.0}, {"max", 5.0}, {"points", 101}}}},
        {{"kind", "interferometer"}, {"params", {{"phi1", 0.5}}}},
        {{"kind", "ramsey"}, {"params", {{"phi_e", 0.5}}}},
        {{"kind", "giant"}, {"params", {{"topology", "braided"}}}},
        {{"kind", "grover"}, {"params", {{"n_qubits", 3}, {"target", 2}}}},
        {{"kind", "deutsch"}, {"params", {{"f0", 0}, {"f1", 1}}}},
        {{"kind", "bb84"}, {"params", {{"n_pulses", 1000}}}},
        {{"kind", "squid"}, {"params", json::object()}},
        {{"kind", "coherence"}, {"params", json::object()}},
    };
    int i = 0;
    for (const json& cfg : configs) {
        const std::string stem = "k" + std::to_string(i++);
        const auto rr = scenario::run_scenario_json(cfg, stem, dir);
        CHECK(fs::exists(dir / (stem + ".csv")));
        CHECK(rr.summary.contains("results"));
        CHECK(rr.summary["schema"]["columns"].is_array());
    }
}
