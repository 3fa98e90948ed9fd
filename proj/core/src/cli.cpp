#include "mesb/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mesb/apriori.hpp"
#include "mesb/balance.hpp"
#include "mesb/density.hpp"
#include "mesb/error.hpp"
#include "mesb/evolution.hpp"
#include "mesb/run_config.hpp"
#include "mesb/snapshot.hpp"
#include "mesb/table_io.hpp"

namespace mesb {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string default_out_dir() {
    const char* env = std::getenv("MESB_OUT_DIR");
    return (env != nullptr && *env != '\0') ? env : ".";
}

std::string out_path(const std::string& dir, const std::string& name) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error::io("cannot create output directory " + dir + ": " + ec.message());
    return (fs::path(dir) / name).string();
}

void emit(const std::string& path, const std::string& content) {
    write_text_file(path, content);
    std::cout << "wrote " << path << "\n";
}

HeuristicWeights weights_option(const std::string& style) {
    try {
        return HeuristicWeights::preset(style);
    } catch (const Error& e) {
        throw Error::config(e.what());
    }
}

/// Options shared by every subcommand. The seed only matters to the
/// stochastic commands; the rest take it for interface uniformity.
struct CommonArgs {
    std::string out_dir = default_out_dir();
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--out-dir", args.out_dir,
                    "Directory for output files (default: $MESB_OUT_DIR or .)");
    cmd->add_option("--seed", args.seed, "Master random seed");
}

RunOverrides overrides_from(const CommonArgs& common, std::optional<int> workers) {
    RunOverrides overrides;
    overrides.seed = common.seed;
    if (workers) overrides.workers = *workers;
    return overrides;
}

void write_run_artifacts(const RunSpec& spec, const RunResult& result,
                         const CommonArgs& common, const std::string& label) {
    const SnapshotMeta meta{spec.run.seed, spec.config_hash, spec.catalog.content_hash()};
    emit(out_path(common.out_dir, label + ".config.json"), spec.echo);
    emit(out_path(common.out_dir, label + ".snapshot.tsv"),
         snapshot_to_string(result.archive, meta, spec.catalog));
    emit(out_path(common.out_dir, label + ".log.tsv"), run_log_to_tsv(result.log, meta));
    const auto& queue = result.archive.buffer().samples();
    emit(out_path(common.out_dir, label + ".samples.tsv"),
         samples_to_tsv({queue.begin(), queue.end()}));
    emit(out_path(common.out_dir, label + ".points.tsv"), archive_points_tsv(result.archive));
    std::cout << "run complete: " << result.log.entries.size() << " evaluations, "
              << result.archive.occupied() << " occupied cells\n";
}

struct RunArgs {
    CommonArgs common;
    std::string config_path;
    std::optional<int> workers;
    std::string label = "run";
};

void cmd_run(const RunArgs& args) {
    const RunSpec spec = load_run_spec(args.config_path, overrides_from(args.common, args.workers));
    const RunResult result = run_mesb(spec.catalog, spec.run);
    write_run_artifacts(spec, result, args.common, args.label);
}

struct AdversariesArgs {
    CommonArgs common;
    std::string config_path;
    std::string snapshot_path;
    int top_n = kDefaultAdversaryCount;
    std::optional<int> workers;
    std::string label = "adversaries";
};

/// Builds the opponent pool from a snapshot's best elites, saves those decks
/// beside the other outputs, and runs with a config echo that references the
/// saved files, so the derived run reproduces through the plain run command.
void cmd_adversaries(const AdversariesArgs& args) {
    const RunSpec base = load_run_spec(args.config_path,
                                       overrides_from(args.common, args.workers));
    const LoadedSnapshot loaded = load_snapshot(args.snapshot_path, base.catalog);
    const std::vector<Opponent> pool =
        build_adversary_pool(loaded.archive, base.run.player_weights, args.top_n);

    json config = json::parse(base.echo);
    config["opponents"] = json::array();
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const std::string name = args.label + ".adversary_" + std::to_string(i) + ".deck";
        const std::string path = out_path(args.common.out_dir, name);
        std::string body;
        for (const std::string& id : deck_to_ids(pool[i].deck, base.catalog)) {
            body += id;
            body += '\n';
        }
        emit(path, body);
        config["opponents"].push_back(
            {{"deck", fs::absolute(path).lexically_normal().string()},
             {"weights", json::parse(weights_to_json_text(pool[i].weights))}});
    }

    RunOverrides overrides;
    if (args.workers) overrides.workers = *args.workers;
    const RunSpec spec = parse_run_spec(config.dump(2) + "\n", args.common.out_dir, overrides);
    const RunResult result = run_mesb(spec.catalog, spec.run);
    write_run_artifacts(spec, result, args.common, args.label);
}

struct PatchArgs {
    CommonArgs common;
    std::string catalog_path;
    std::string patch_path;
    std::string output = "catalog.patched.json";
};

void cmd_patch(const PatchArgs& args) {
    const CardCatalog catalog = CardCatalog::load_file(args.catalog_path);
    const BalancePatch patch = BalancePatch::load_file(args.patch_path);
    const CardCatalog patched = apply_patch(catalog, patch);
    emit(out_path(args.common.out_dir, args.output), patched.to_json());
    std::cout << "patched " << patch.edits.size() << " card field(s)\n";
}

struct MineArgs {
    CommonArgs common;
    std::string snapshot_path;
    std::string catalog_path;
    double min_support = kDefaultMinSupport;
    std::string label = "mine";
};

void cmd_mine(const MineArgs& args) {
    const CardCatalog catalog = CardCatalog::load_file(args.catalog_path);
    const LoadedSnapshot loaded = load_snapshot(args.snapshot_path, catalog);
    if (loaded.archive.cells().empty())
        throw Error::validation("snapshot holds no elites to mine");

    TransactionSet transactions;
    transactions.reserve(loaded.archive.cells().size());
    for (const auto& [coord, elite] : loaded.archive.cells()) {
        const std::vector<std::string> ids = deck_to_ids(elite.genome, catalog);
        const std::set<std::string> distinct(ids.begin(), ids.end());
        transactions.emplace_back(distinct.begin(), distinct.end());
    }

    const ItemsetReport report = apriori(transactions, args.min_support);
    emit(out_path(args.common.out_dir, args.label + ".itemsets.tsv"), itemsets_to_tsv(report));
    const FrequencyTable frequency = card_frequency(loaded.archive, catalog);
    emit(out_path(args.common.out_dir, args.label + ".frequency.tsv"),
         frequency_to_tsv(frequency));
    std::cout << "mined " << report.itemsets.size() << " frequent itemsets from "
              << report.transactions << " decks\n";
}

struct DistributionArgs {
    CommonArgs common;
    std::string snapshot_path;
    std::string log_path;
    std::string catalog_path;
    int deck_size = kDeckSize;
    std::string label = "density";
};

void cmd_distribution(const DistributionArgs& args) {
    const CardCatalog catalog = CardCatalog::load_file(args.catalog_path);
    const LoadedSnapshot loaded = load_snapshot(args.snapshot_path, catalog);
    const BoundaryGrid& grid = loaded.archive.grid();

    const DensityGrid exact = exact_behavior_distribution(catalog, args.deck_size, grid);
    emit(out_path(args.common.out_dir, args.label + ".exact.tsv"),
         density_to_tsv(exact, "exact"));

    const auto [log, meta] = parse_run_log(read_text_file(args.log_path));
    DensityGrid observed = observed_density(log.behaviors(), grid);
    observed.catalog_hash = catalog.content_hash();
    observed.deck_size = args.deck_size;
    emit(out_path(args.common.out_dir, args.label + ".observed.tsv"),
         density_to_tsv(observed, "observed"));

    emit(out_path(args.common.out_dir, args.label + ".points.tsv"),
         archive_points_tsv(loaded.archive));
}

struct CompareArgs {
    CommonArgs common;
    std::string snapshot_a;
    std::string snapshot_b;
    std::string catalog_a;
    std::string catalog_b;  // defaults to catalog_a
    std::string weights_a = "aggro";
    std::string weights_b = "aggro";
    int games = 1000;
    int turn_cap = kDefaultTurnCap;
    int plan_budget = kDefaultPlanBudget;
    std::string label = "compare";
};

/// Games run under catalog A's card definitions, so B's catalog must expose
/// the same ids at the same indices (a stat patch qualifies, a reshuffled or
/// extended catalog does not).
void cmd_compare(const CompareArgs& args) {
    const CardCatalog catalog = CardCatalog::load_file(args.catalog_a);
    const LoadedSnapshot a = load_snapshot(args.snapshot_a, catalog);

    CardCatalog catalog_b = catalog;
    if (!args.catalog_b.empty() && args.catalog_b != args.catalog_a)
        catalog_b = CardCatalog::load_file(args.catalog_b);
    if (catalog_b.size() != catalog.size())
        throw Error::validation("compare catalogs differ in card count");
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        const auto index = static_cast<CardIndex>(i);
        if (catalog.id_of(index) != catalog_b.id_of(index))
            throw Error::validation("compare catalogs must list the same card ids in the "
                                    "same order; they diverge at " + catalog.id_of(index));
    }
    const LoadedSnapshot b = load_snapshot(args.snapshot_b, catalog_b);

    GameOptions options;
    options.turn_cap = args.turn_cap;
    options.plan_budget = args.plan_budget;
    const HeadToHead report = compare_archives(
        a.archive, b.archive, weights_option(args.weights_a), weights_option(args.weights_b),
        catalog, args.games, args.common.seed.value_or(0), options);

    emit(out_path(args.common.out_dir, args.label + ".head_to_head.tsv"),
         head_to_head_to_tsv(report));
    std::cout << "A won " << report.wins_a << ", B won " << report.wins_b << ", "
              << report.draws << " draws over " << report.games << " games\n";
}

struct DiffArgs {
    CommonArgs common;
    std::string before_path;
    std::string after_path;
    double threshold = kDefaultShiftThreshold;
    std::string label = "diff";
};

void cmd_diff(const DiffArgs& args) {
    const FrequencyTable before = parse_frequency_tsv(read_text_file(args.before_path));
    const FrequencyTable after = parse_frequency_tsv(read_text_file(args.after_path));
    const ShiftReport report = frequency_diff(before, after, args.threshold);
    emit(out_path(args.common.out_dir, args.label + ".diff.tsv"), shift_report_to_tsv(report));

    int crossed = 0;
    for (const FrequencyShift& row : report.rows)
        if (row.below_before != row.below_after) ++crossed;
    std::cout << crossed << " card(s) crossed the " << format_double(args.threshold)
              << " occurrence threshold\n";
}

std::string one_line(const char* what) {
    std::string text(what);
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\n') {
            text[i] = ';';
            if (i + 1 < text.size() && text[i + 1] == ' ') continue;
            text.insert(i + 1, " ");
        }
    }
    return text;
}

int exit_code(ErrorClass cls) {
    switch (cls) {
        case ErrorClass::Config: return 2;
        case ErrorClass::Io: return 3;
        case ErrorClass::Validation: return 4;
        case ErrorClass::Internal: return 5;
    }
    return 5;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Quality-diversity deck search over a card-game simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Execute an evolution run from a config file");
    run->add_option("--config", run_args.config_path, "Run configuration file")->required();
    run->add_option("--workers", run_args.workers,
                    "Worker threads (execution only; never changes results)");
    run->add_option("--label", run_args.label, "Basename for the output files");
    add_common(run, run_args.common);
    run->callback([&run_args] { cmd_run(run_args); });

    AdversariesArgs adv_args;
    CLI::App* adversaries = app.add_subcommand(
        "adversaries", "Re-run against the best elites of a previous snapshot");
    adversaries->add_option("--config", adv_args.config_path, "Run configuration file")
        ->required();
    adversaries->add_option("--snapshot", adv_args.snapshot_path, "Source archive snapshot")
        ->required();
    adversaries->add_option("--top-n", adv_args.top_n, "Number of elite adversaries");
    adversaries->add_option("--workers", adv_args.workers,
                            "Worker threads (execution only; never changes results)");
    adversaries->add_option("--label", adv_args.label, "Basename for the output files");
    add_common(adversaries, adv_args.common);
    adversaries->callback([&adv_args] { cmd_adversaries(adv_args); });

    PatchArgs patch_args;
    CLI::App* patch = app.add_subcommand("patch", "Apply a balance patch to a card catalog");
    patch->add_option("--catalog", patch_args.catalog_path, "Card catalog file")->required();
    patch->add_option("--patch", patch_args.patch_path, "Balance patch file")->required();
    patch->add_option("--output", patch_args.output, "Output catalog filename");
    add_common(patch, patch_args.common);
    patch->callback([&patch_args] { cmd_patch(patch_args); });

    MineArgs mine_args;
    CLI::App* mine = app.add_subcommand(
        "mine", "Mine frequent card itemsets and per-card frequencies from a snapshot");
    mine->add_option("--snapshot", mine_args.snapshot_path, "Archive snapshot")->required();
    mine->add_option("--catalog", mine_args.catalog_path, "Card catalog file")->required();
    mine->add_option("--min-support", mine_args.min_support, "Minimum support ratio (0,1]");
    mine->add_option("--label", mine_args.label, "Basename for the output files");
    add_common(mine, mine_args.common);
    mine->callback([&mine_args] { cmd_mine(mine_args); });

    DistributionArgs dist_args;
    CLI::App* distribution = app.add_subcommand(
        "distribution", "Export exact and observed behavior-space densities");
    distribution->add_option("--snapshot", dist_args.snapshot_path,
                             "Snapshot supplying the grid boundaries")->required();
    distribution->add_option("--log", dist_args.log_path, "Run log supplying observed behaviors")
        ->required();
    distribution->add_option("--catalog", dist_args.catalog_path, "Card catalog file")
        ->required();
    distribution->add_option("--deck-size", dist_args.deck_size, "Deck size for the exact count");
    distribution->add_option("--label", dist_args.label, "Basename for the output files");
    add_common(distribution, dist_args.common);
    distribution->callback([&dist_args] { cmd_distribution(dist_args); });

    CompareArgs compare_args;
    CLI::App* compare = app.add_subcommand(
        "compare", "Play the best elites of two snapshots head to head");
    compare->add_option("--snapshot-a", compare_args.snapshot_a, "First archive snapshot")
        ->required();
    compare->add_option("--snapshot-b", compare_args.snapshot_b, "Second archive snapshot")
        ->required();
    compare->add_option("--catalog-a", compare_args.catalog_a,
                        "Catalog for snapshot A (games use these card definitions)")
        ->required();
    compare->add_option("--catalog-b", compare_args.catalog_b,
                        "Catalog for snapshot B (default: catalog A)");
    compare->add_option("--weights-a", compare_args.weights_a, "Agent preset for side A");
    compare->add_option("--weights-b", compare_args.weights_b, "Agent preset for side B");
    compare->add_option("--games", compare_args.games, "Number of games to play");
    compare->add_option("--turn-cap", compare_args.turn_cap, "Rounds before a forced draw");
    compare->add_option("--plan-budget", compare_args.plan_budget,
                        "Action sequences sampled per turn");
    compare->add_option("--label", compare_args.label, "Basename for the output files");
    add_common(compare, compare_args.common);
    compare->callback([&compare_args] { cmd_compare(compare_args); });

    DiffArgs diff_args;
    CLI::App* diff = app.add_subcommand(
        "diff", "Diff two card frequency tables (before and after a patch)");
    diff->add_option("--before", diff_args.before_path, "Frequency table before")->required();
    diff->add_option("--after", diff_args.after_path, "Frequency table after")->required();
    diff->add_option("--threshold", diff_args.threshold, "Low-occurrence marker threshold");
    diff->add_option("--label", diff_args.label, "Basename for the output files");
    add_common(diff, diff_args.common);
    diff->callback([&diff_args] { cmd_diff(diff_args); });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << one_line(e.what()) << "\n";
        return exit_code(e.error_class());
    } catch (const std::exception& e) {
        std::cerr << "error: " << one_line(e.what()) << "\n";
        return 5;
    }
}

} // namespace mesb
