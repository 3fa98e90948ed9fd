#pragma once

#include <cstdint>
#include <vector>

#include "mesb/archive.hpp"
#include "mesb/deck.hpp"
#include "mesb/match.hpp"

namespace mesb {

using DeckArchive = SlidingArchive<Deck>;

struct RunConfig {
    ArchiveConfig archive;                 // total_evaluations is the run budget
    HeuristicWeights player_weights = HeuristicWeights::aggro();
    std::vector<Opponent> opponents;
    int games_per_evaluation = 200;
    int bootstrap_evaluations = 100;       // random decks before parent selection
    std::uint64_t seed = 0;
    int batch_size = 1;                    // parents per archive snapshot; semantic
    int workers = 1;                       // execution width; never affects results
    GameOptions game;

    void validate() const;
};

struct LogEntry {
    int eval_index = 0;
    double mean_mana = 0.0;
    double var_mana = 0.0;
    double fitness = 0.0;
    double winrate = 0.0;
    InsertOutcome outcome = InsertOutcome::Rejected;
    int resolution = 0;
    int occupied_cells = 0;
    double best_fitness = 0.0;   // running max over evaluated candidates
    double best_winrate = 0.0;   // max over current elites
    double avg_winrate = 0.0;    // mean over current elites
};

struct RunLog {
    std::vector<LogEntry> entries;

    std::vector<BehaviorVector> behaviors() const;
};

struct RunResult {
    DeckArchive archive;
    RunLog log;
};

/// The MESB loop: evaluations 0..B-1 draw a random deck during the bootstrap
/// phase (or while the archive is empty) and otherwise mutate a uniformly
/// selected elite, evaluate it against the opponent pool, and offer it to the
/// archive. Candidates within a batch pick parents from the archive state at
/// batch start and are inserted in ascending index order; per-evaluation
/// seeds are index-derived, so any worker count gives identical results.
RunResult run_mesb(const CardCatalog& catalog, const RunConfig& config);

inline constexpr int kDefaultAdversaryCount = 5;

/// The top_n elites by fitness (ties broken by cell coordinate, ascending),
/// each paired with the given agent weights.
std::vector<Opponent> build_adversary_pool(const DeckArchive& archive,
                                           const HeuristicWeights& weights, int top_n);

struct HeadToHead {
    int games = 0;
    int wins_a = 0;
    int wins_b = 0;
    int draws = 0;
    double winrate_a = 0.0;
    double winrate_b = 0.0;
    double mean_margin_a = 0.0;
    double mean_margin_b = 0.0;
};

/// Best elite of each archive, played head to head for the stated game
/// count, alternating which side goes first.
HeadToHead compare_archives(const DeckArchive& a, const DeckArchive& b,
                            const HeuristicWeights& weights_a, const HeuristicWeights& weights_b,
                            const CardCatalog& catalog, int games, std::uint64_t seed,
                            const GameOptions& options = {});

} // namespace mesb
