#pragma once

#include <cstdint>
#include <string>

#include "mesb/game.hpp"
#include "mesb/rng.hpp"

namespace mesb {

/// Linear evaluation coefficients. Opponent board terms are usually negative:
/// the weight values carry the sign, the features are raw totals.
struct HeuristicWeights {
    std::string style = "custom";
    double opp_hero_damage = 0.0;  // applied to 30 - opponent hero health
    double own_hero_health = 0.0;
    double own_board_attack = 0.0;
    double own_board_health = 0.0;
    double opp_board_attack = 0.0;
    double opp_board_health = 0.0;
    double hand_size = 0.0;

    static HeuristicWeights aggro();
    static HeuristicWeights control();
    static HeuristicWeights preset(const std::string& style);

    bool operator==(const HeuristicWeights&) const = default;
};

double heuristic_score(const GameState& state, int viewpoint, const HeuristicWeights& weights);

struct PlanResult {
    ActionSequence actions;
    double score = 0.0;
    std::uint32_t sequences = 0;  // end-of-turn states scored
    std::uint32_t hash_hits = 0;  // duplicate states skipped
};

inline constexpr int kDefaultPlanBudget = 200;

/// Randomized exploration of the active player's turn: expands distinct
/// states depth-first in shuffled action order, scoring up to sample_budget
/// end-of-turn (or game-over) leaves, and returns the best-scoring action
/// sequence. States are hashed so none is visited twice. End-turn alone is
/// always available, so a result is guaranteed.
PlanResult plan_turn(const GameState& state, const CardCatalog& catalog,
                     const HeuristicWeights& weights, Rng& rng,
                     int sample_budget = kDefaultPlanBudget);

} // namespace mesb
