#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qisim/errors.hpp"

// Declarative scenario execution: JSON config in, CSV time series/spectra
// plus a JSON summary out. Known kinds: stirap, fstirap, cpt, eit-scan,
// interferometer, ramsey, giant, grover, deutsch, bb84, squid, coherence.
//
// Parsing is strict: unknown keys anywhere in the document are rejected.
// Outputs are deterministic for a fixed config and seed.

namespace qisim::scenario {

using json = nlohmann::json;

// Config rejected (syntax or schema). `where` is a line/column note for
// syntax errors or a JSON pointer for schema violations.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::string where_)
        : Error(what), where(std::move(where_)) {}
    std::string where;
};

struct RunResult {
    json summary;
    std::vector<std::filesystem::path> files;
};

// Executes the scenario in `config`, writing <stem>.csv and
// <stem>_summary.json under out_dir. `seed` overrides the config's seed.
RunResult run_scenario_json(const json& config, const std::string& stem,
                            const std::filesystem::path& out_dir,
                            std::optional<std::uint64_t> seed = std::nullopt);

// Loads the file (strict JSON) and runs it; stem is the config filename stem.
RunResult run_scenario(const std::filesystem::path& config_path,
                       const std::filesystem::path& out_dir,
                       std::optional<std::uint64_t> seed = std::nullopt);

// Runs the scenario once per value with `param` (a dotted path into the
// config, e.g. "params.Omega_C") replaced. Runs execute concurrently up to
// `threads`; outputs get deterministic _NNN suffixes and a manifest JSON
// records every run's status.
json sweep(const std::filesystem::path& config_path, const std::string& param,
           const std::vector<double>& values, const std::filesystem::path& out_dir,
           std::optional<std::uint64_t> seed, int threads);

// The kinds understood by run_scenario.
const std::vector<std::string>& scenario_kinds();

} // namespace qisim::scenario
