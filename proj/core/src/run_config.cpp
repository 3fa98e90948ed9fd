#include "mesb/run_config.hpp"

#include <filesystem>

#include <json.hpp>

#include "mesb/error.hpp"
#include "mesb/rng.hpp"
#include "mesb/table_io.hpp"

namespace mesb {

using nlohmann::json;

namespace {

const char* const kKnownKeys[] = {
    "batch_size",      "bootstrap_evaluations", "buffer_capacity", "catalog",
    "catalog_hash",    "games_per_evaluation",  "max_resolution",  "min_resolution",
    "opponents",       "plan_budget",           "player_weights",  "remap_frequency",
    "seed",            "total_evaluations",     "turn_cap",
};

bool known_key(const std::string& key) {
    for (const char* candidate : kKnownKeys)
        if (key == candidate) return true;
    return false;
}

HeuristicWeights weights_from_json(const json& value, const std::string& context) {
    if (value.is_string()) return HeuristicWeights::preset(value.get<std::string>());
    if (!value.is_object())
        throw Error::config(context + ": weights must be a preset name or an object");

    std::string style = "custom";
    if (value.contains("style")) {
        if (!value["style"].is_string()) throw Error::config(context + ": style must be a string");
        style = value["style"].get<std::string>();
    }
    HeuristicWeights weights;
    if (style == "aggro" || style == "control") weights = HeuristicWeights::preset(style);
    else if (style == "custom") weights.style = "custom";
    else throw Error::config(context + ": unknown style '" + style + "'");

    const std::pair<const char*, double HeuristicWeights::*> coefficients[] = {
        {"opp_hero_damage", &HeuristicWeights::opp_hero_damage},
        {"own_hero_health", &HeuristicWeights::own_hero_health},
        {"own_board_attack", &HeuristicWeights::own_board_attack},
        {"own_board_health", &HeuristicWeights::own_board_health},
        {"opp_board_attack", &HeuristicWeights::opp_board_attack},
        {"opp_board_health", &HeuristicWeights::opp_board_health},
        {"hand_size", &HeuristicWeights::hand_size},
    };
    for (const auto& [key, subvalue] : value.items()) {
        if (key == "style") continue;
        bool matched = false;
        for (const auto& [name, member] : coefficients) {
            if (key == name) {
                if (!subvalue.is_number())
                    throw Error::config(context + ": " + key + " must be a number");
                weights.*member = subvalue.get<double>();
                matched = true;
                break;
            }
        }
        if (!matched) throw Error::config(context + ": unknown weights key '" + key + "'");
    }
    return weights;
}

json weights_to_json(const HeuristicWeights& weights) {
    return json{{"style", weights.style},
                {"opp_hero_damage", weights.opp_hero_damage},
                {"own_hero_health", weights.own_hero_health},
                {"own_board_attack", weights.own_board_attack},
                {"own_board_health", weights.own_board_health},
                {"opp_board_attack", weights.opp_board_attack},
                {"opp_board_health", weights.opp_board_health},
                {"hand_size", weights.hand_size}};
}

std::string resolve_path(const std::string& raw, const std::string& base_dir) {
    namespace fs = std::filesystem;
    fs::path p(raw);
    if (!p.is_absolute()) p = fs::path(base_dir) / p;
    return fs::absolute(p).lexically_normal().string();
}

int get_int(const json& config, const char* key, int fallback, int minimum) {
    if (!config.contains(key)) return fallback;
    if (!config[key].is_number_integer())
        throw Error::config(std::string(key) + " must be an integer");
    const long long value = config[key].get<long long>();
    if (value < minimum)
        throw Error::config(std::string(key) + " must be >= " + std::to_string(minimum));
    return static_cast<int>(value);
}

} // namespace

RunSpec parse_run_spec(const std::string& text, const std::string& base_dir,
                       const RunOverrides& overrides) {
    json config = json::parse(text, nullptr, false);
    if (config.is_discarded()) throw Error::config("run config is not valid JSON");
    if (!config.is_object()) throw Error::config("run config must be a JSON object");
    for (const auto& [key, value] : config.items()) {
        (void)value;
        if (!known_key(key)) throw Error::config("unknown config key '" + key + "'");
    }
    if (!config.contains("catalog") || !config["catalog"].is_string())
        throw Error::config("config needs a catalog path");
    if (!config.contains("opponents") || !config["opponents"].is_array() ||
        config["opponents"].empty())
        throw Error::config("config needs a non-empty opponents array");

    RunSpec spec;
    spec.catalog_path = resolve_path(config["catalog"].get<std::string>(), base_dir);
    spec.catalog = CardCatalog::load_file(spec.catalog_path);
    if (config.contains("catalog_hash")) {
        if (!config["catalog_hash"].is_string())
            throw Error::config("catalog_hash must be a string");
        const std::uint64_t expected =
            parse_hex64(config["catalog_hash"].get<std::string>(), "config catalog_hash");
        if (expected != spec.catalog.content_hash())
            throw Error::config("catalog_hash does not match the catalog file");
    }

    RunConfig& run = spec.run;
    run.archive.total_evaluations = static_cast<std::uint64_t>(
        get_int(config, "total_evaluations", static_cast<int>(run.archive.total_evaluations), 1));
    run.archive.remap_frequency = static_cast<std::uint64_t>(
        get_int(config, "remap_frequency", static_cast<int>(run.archive.remap_frequency), 1));
    run.archive.min_resolution = get_int(config, "min_resolution", run.archive.min_resolution, 2);
    run.archive.max_resolution = get_int(config, "max_resolution", run.archive.max_resolution, 2);
    if (config.contains("buffer_capacity")) {
        if (config["buffer_capacity"].is_null()) run.archive.buffer_capacity = std::nullopt;
        else run.archive.buffer_capacity =
            static_cast<std::size_t>(get_int(config, "buffer_capacity", 0, 1));
    }
    run.games_per_evaluation = get_int(config, "games_per_evaluation", run.games_per_evaluation, 1);
    run.bootstrap_evaluations = get_int(config, "bootstrap_evaluations", run.bootstrap_evaluations, 0);
    run.batch_size = get_int(config, "batch_size", run.batch_size, 1);
    run.game.turn_cap = get_int(config, "turn_cap", run.game.turn_cap, 1);
    run.game.plan_budget = get_int(config, "plan_budget", run.game.plan_budget, 1);

    if (config.contains("seed")) {
        if (!config["seed"].is_number_unsigned() && !config["seed"].is_number_integer())
            throw Error::config("seed must be an integer");
        run.seed = config["seed"].get<std::uint64_t>();
    }
    if (overrides.seed) run.seed = *overrides.seed;
    if (overrides.workers) {
        if (*overrides.workers < 1) throw Error::config("workers must be >= 1");
        run.workers = *overrides.workers;
    }

    if (config.contains("player_weights"))
        run.player_weights = weights_from_json(config["player_weights"], "player_weights");

    json opponents_echo = json::array();
    for (std::size_t i = 0; i < config["opponents"].size(); ++i) {
        const json& entry = config["opponents"][i];
        const std::string context = "opponents[" + std::to_string(i) + "]";
        if (!entry.is_object() || !entry.contains("deck") || !entry["deck"].is_string())
            throw Error::config(context + " needs a deck path");
        for (const auto& [key, value] : entry.items()) {
            (void)value;
            if (key != "deck" && key != "weights")
                throw Error::config(context + ": unknown key '" + key + "'");
        }
        const std::string deck_path = resolve_path(entry["deck"].get<std::string>(), base_dir);
        Opponent opponent;
        opponent.deck = load_deck_file(deck_path, spec.catalog);
        opponent.weights = entry.contains("weights")
            ? weights_from_json(entry["weights"], context)
            : HeuristicWeights::aggro();
        run.opponents.push_back(std::move(opponent));
        opponents_echo.push_back({{"deck", deck_path},
                                  {"weights", weights_to_json(run.opponents.back().weights)}});
    }

    run.validate();

    json echo;
    echo["batch_size"] = run.batch_size;
    echo["bootstrap_evaluations"] = run.bootstrap_evaluations;
    if (run.archive.buffer_capacity)
        echo["buffer_capacity"] = static_cast<std::uint64_t>(*run.archive.buffer_capacity);
    else echo["buffer_capacity"] = nullptr;
    echo["catalog"] = spec.catalog_path;
    echo["catalog_hash"] = hex64(spec.catalog.content_hash());
    echo["games_per_evaluation"] = run.games_per_evaluation;
    echo["max_resolution"] = run.archive.max_resolution;
    echo["min_resolution"] = run.archive.min_resolution;
    echo["opponents"] = opponents_echo;
    echo["plan_budget"] = run.game.plan_budget;
    echo["player_weights"] = weights_to_json(run.player_weights);
    echo["remap_frequency"] = run.archive.remap_frequency;
    echo["seed"] = run.seed;
    echo["total_evaluations"] = run.archive.total_evaluations;
    echo["turn_cap"] = run.game.turn_cap;
    spec.echo = echo.dump(2) + "\n";
    spec.config_hash = fnv1a64(spec.echo);
    return spec;
}

RunSpec load_run_spec(const std::string& path, const RunOverrides& overrides) {
    const std::string text = read_text_file(path);
    const std::string base_dir = std::filesystem::path(path).parent_path().string();
    return parse_run_spec(text, base_dir.empty() ? "." : base_dir, overrides);
}

std::string weights_to_json_text(const HeuristicWeights& weights) {
    return weights_to_json(weights).dump();
}

} // namespace mesb
