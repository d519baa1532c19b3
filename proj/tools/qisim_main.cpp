// qisim: scenario runner for the quantum-interference simulation library.
//
//   qisim <kind> --config file.json [--out-dir d] [--seed n] [--threads k]
//   qisim sweep --config file.json --param name --values v1,v2,... [...]
//
// Exit codes: 0 success, 2 config parse/validation error, 3 numeric failure,
// 4 I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qisim/scenario.hpp"
#include "qisim/version.hpp"

namespace {

int default_threads() {
    if (const char* env = std::getenv("QISIM_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1)
                return n;
        } catch (...) {
        }
    }
    return 1;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    for (std::string tok; std::getline(ss, tok, ',');) {
        if (tok.empty())
            continue;
        size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw qisim::scenario::ParseError("bad numeric value '" + tok + "'", "--values");
        out.push_back(v);
    }
    return out;
}

struct CommonOpts {
    std::string config;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    int threads = default_threads();
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config, "scenario config (JSON)")->required();
    cmd->add_option("--out-dir", o.out_dir, "output directory (default: .)");
    cmd->add_option("--seed", o.seed, "seed override for randomized scenarios");
    cmd->add_option("--threads", o.threads, "worker threads for sweeps (env QISIM_THREADS)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum interference scenario runner"};
    app.set_version_flag("--version", std::string("qisim ") + qisim::version);
    app.require_subcommand(1);

    std::vector<std::pair<CLI::App*, CommonOpts*>> kind_cmds;
    std::vector<std::unique_ptr<CommonOpts>> storage;

    for (const std::string& kind : qisim::scenario::scenario_kinds()) {
        auto opts = std::make_unique<CommonOpts>();
        CLI::App* cmd = app.add_subcommand(kind, "run a '" + kind + "' scenario");
        add_common(cmd, *opts);
        kind_cmds.push_back({cmd, opts.get()});
        storage.push_back(std::move(opts));
    }

    CommonOpts sweep_opts;
    std::string sweep_param;
    std::string sweep_values;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a scenario once per parameter value");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--param", sweep_param, "dotted config path, e.g. params.Omega_C")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_cmd->parsed()) {
            const auto values = parse_values(sweep_values);
            const auto manifest = qisim::scenario::sweep(sweep_opts.config, sweep_param, values,
                                                         sweep_opts.out_dir, sweep_opts.seed,
                                                         sweep_opts.threads);
            std::cout << manifest.dump(2) << '\n';
            return manifest.value("all_ok", false) ? 0 : 3;
        }
        for (size_t i = 0; i < kind_cmds.size(); ++i) {
            if (!kind_cmds[i].first->parsed())
                continue;
            const CommonOpts& o = *kind_cmds[i].second;
            const std::string want = qisim::scenario::scenario_kinds()[i];
            std::ifstream in(o.config, std::ios::binary);
            if (!in) {
                std::cerr << "i/o error: cannot open config " << o.config << '\n';
                return 4;
            }
            nlohmann::json cfg;
            try {
                cfg = nlohmann::json::parse(in);
            } catch (const nlohmann::json::parse_error& ex) {
                std::cerr << "config error in " << o.config << ": " << ex.what() << '\n';
                return 2;
            }
            if (cfg.value("kind", "") != want) {
                std::cerr << "config kind '" << cfg.value("kind", "")
                          << "' does not match subcommand '" << want << "'\n";
                return 2;
            }
            const std::string stem = std::filesystem::path(o.config).stem().string();
            const auto rr = qisim::scenario::run_scenario_json(cfg, stem, o.out_dir, o.seed);
            std::cout << rr.summary.dump(2) << '\n';
            return 0;
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const qisim::scenario::ParseError& ex) {
        std::cerr << "config error at " << ex.where << ": " << ex.what() << '\n';
        return 2;
    } catch (const qisim::IoError& ex) {
        std::cerr << "i/o error: " << ex.what() << '\n';
        return 4;
    } catch (const qisim::Error& ex) {
        std::cerr << "numeric error: " << ex.what() << '\n';
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 3;
    }
}
