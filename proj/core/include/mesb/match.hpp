#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mesb/agent.hpp"
#include "mesb/deck.hpp"
#include "mesb/game.hpp"

namespace mesb {

inline constexpr int kDefaultTurnCap = 50;

struct GameOptions {
    int turn_cap = kDefaultTurnCap;       // full rounds before a forced draw
    int plan_budget = kDefaultPlanBudget;
};

inline constexpr int kDrawnGame = -1;

struct GameOutcome {
    int winner = kDrawnGame;   // 0 = first player, 1 = second, -1 = draw
    int health_margin = 0;     // first player hero health - second player hero health
    int turns = 0;             // full rounds elapsed when the game ended
};

/// Chooses the active player's actions for one turn. The sequence must end
/// the turn or the game.
using TurnPolicy = std::function<ActionSequence(const GameState&, Rng&)>;

TurnPolicy planning_policy(const CardCatalog& catalog, HeuristicWeights weights,
                           int sample_budget = kDefaultPlanBudget);

GameOutcome play_game_with(const Deck& deck_a, const Deck& deck_b,
                           const TurnPolicy& policy_a, const TurnPolicy& policy_b,
                           const CardCatalog& catalog, std::uint64_t seed,
                           const GameOptions& options = {});

/// Shuffles, deals 3/4, then alternates planned turns until a hero dies or
/// the turn cap forces a draw. Pure function of (decks, weights, seed).
GameOutcome play_game(const Deck& deck_a, const Deck& deck_b,
                      const HeuristicWeights& weights_a, const HeuristicWeights& weights_b,
                      const CardCatalog& catalog, std::uint64_t seed,
                      const GameOptions& options = {});

/// Process-wide count of completed games, for run reporting.
std::uint64_t games_played();

struct Opponent {
    Deck deck;
    HeuristicWeights weights;
};

struct FitnessResult {
    double fitness = 0.0;  // sum of per-game health margins, candidate viewpoint
    double winrate = 0.0;
    int wins = 0;
    int draws = 0;
    int games = 0;
};

struct EvalOptions {
    int games = 200;
    int workers = 1;
    GameOptions game;
};

/// Plays `games` matches split round-robin across the opponents (remainder to
/// the earlier ones), alternating which side goes first on each pass through
/// the list. Per-game seeds are index-derived, so results are byte-identical
/// at any worker count.
FitnessResult evaluate_deck(const Deck& deck, const HeuristicWeights& weights,
                            const std::vector<Opponent>& opponents,
                            const CardCatalog& catalog, std::uint64_t seed,
                            const EvalOptions& options = {});

} // namespace mesb
