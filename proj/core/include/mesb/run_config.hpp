#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mesb/card.hpp"
#include "mesb/evolution.hpp"

namespace mesb {

/// A fully resolved run: the in-memory config, the loaded catalog, and the
/// config echo (every field explicit, paths absolute) whose hash stamps the
/// run's artifacts. Re-running from the echo reproduces the run exactly.
struct RunSpec {
    RunConfig run;
    CardCatalog catalog;
    std::string catalog_path;
    std::string echo;
    std::uint64_t config_hash = 0;
};

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
};

RunSpec parse_run_spec(const std::string& text, const std::string& base_dir,
                       const RunOverrides& overrides = {});
RunSpec load_run_spec(const std::string& path, const RunOverrides& overrides = {});

/// The weights as a full config-file JSON object (style plus every
/// coefficient), for building derived run configs.
std::string weights_to_json_text(const HeuristicWeights& weights);

} // namespace mesb
