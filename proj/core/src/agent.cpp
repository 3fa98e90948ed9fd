#include "mesb/agent.hpp"

#include <unordered_set>
#include <vector>

#include "mesb/error.hpp"

namespace mesb {

HeuristicWeights HeuristicWeights::aggro() {
    return {"aggro", 3.0, 0.5, 1.0, 0.5, -0.5, -0.5, 0.5};
}

HeuristicWeights HeuristicWeights::control() {
    return {"control", 0.5, 1.0, 2.0, 2.0, -2.0, -2.0, 1.0};
}

HeuristicWeights HeuristicWeights::preset(const std::string& style) {
    if (style == "aggro") return aggro();
    if (style == "control") return control();
    throw Error::config("unknown heuristic preset: " + style);
}

double heuristic_score(const GameState& state, int viewpoint, const HeuristicWeights& weights) {
    if (viewpoint != 0 && viewpoint != 1) throw Error::internal("bad viewpoint");
    const PlayerState& own = state.players[viewpoint];
    const PlayerState& opp = state.players[1 - viewpoint];
    return weights.opp_hero_damage * (kHeroHealth - opp.hero_health)
         + weights.own_hero_health * own.hero_health
         + weights.own_board_attack * own.board_attack_total()
         + weights.own_board_health * own.board_health_total()
         + weights.opp_board_attack * opp.board_attack_total()
         + weights.opp_board_health * opp.board_health_total()
         + weights.hand_size * static_cast<double>(own.hand.size());
}

namespace {

// Won games outrank any board position, lost games rank below all of them.
constexpr double kWinBonus = 1e6;

struct PlanNode {
    GameState state;
    ActionSequence actions;
};

} // namespace

PlanResult plan_turn(const GameState& state, const CardCatalog& catalog,
                     const HeuristicWeights& weights, Rng& rng, int sample_budget) {
    if (sample_budget < 1) throw Error::internal("plan_turn needs a positive budget");
    if (state.over()) throw Error::internal("plan_turn on a finished game");

    const int viewpoint = state.active;
    const Action end_turn{ActionType::EndTurn, 0, 0};

    PlanResult result;
    result.actions.push_back(end_turn);
    std::unordered_set<std::uint64_t> visited;
    visited.insert(state_hash(state));
    {
        GameState passed = state;
        apply_action(passed, end_turn, catalog);
        result.score = heuristic_score(passed, viewpoint, weights);
        if (passed.over())
            result.score += passed.players[viewpoint].hero_health > 0 ? kWinBonus : -kWinBonus;
        result.sequences = 1;
        visited.insert(state_hash(passed));
    }
    double best_score = result.score;

    std::vector<PlanNode> stack;
    stack.push_back({state, {}});

    while (!stack.empty() && result.sequences < static_cast<std::uint32_t>(sample_budget)) {
        PlanNode node = std::move(stack.back());
        stack.pop_back();

        ActionList actions = legal_actions(node.state, catalog);
        rng.shuffle(actions);
        for (const Action& action : actions) {
            if (result.sequences >= static_cast<std::uint32_t>(sample_budget)) break;
            GameState child = node.state;
            apply_action(child, action, catalog);

            if (!visited.insert(state_hash(child)).second) {
                result.hash_hits += 1;
                continue;
            }

            const bool leaf = child.over() || action.type == ActionType::EndTurn;
            if (!leaf) {
                stack.push_back({std::move(child), node.actions});
                stack.back().actions.push_back(action);
                continue;
            }

            result.sequences += 1;
            double score = heuristic_score(child, viewpoint, weights);
            if (child.over())
                score += child.players[viewpoint].hero_health > 0 ? kWinBonus : -kWinBonus;
            if (score > best_score) {
                best_score = score;
                result.actions = node.actions;
                result.actions.push_back(action);
                result.score = score;
            }
        }
    }
    return result;
}

} // namespace mesb
