#include "mesb/match.hpp"

#include <atomic>
#include <thread>

#include "mesb/error.hpp"

namespace mesb {

namespace {

std::atomic<std::uint64_t> g_games_played{0};

void require_valid(const Deck& deck, const CardCatalog& catalog, const char* what) {
    const std::vector<DeckViolation> violations = validate_deck(deck, catalog);
    if (!violations.empty())
        throw Error::validation(std::string(what) + ": " + violations.front().message);
}

} // namespace

TurnPolicy planning_policy(const CardCatalog& catalog, HeuristicWeights weights,
                           int sample_budget) {
    return [&catalog, weights = std::move(weights), sample_budget](
               const GameState& state, Rng& rng) {
        return plan_turn(state, catalog, weights, rng, sample_budget).actions;
    };
}

GameOutcome play_game_with(const Deck& deck_a, const Deck& deck_b,
                           const TurnPolicy& policy_a, const TurnPolicy& policy_b,
                           const CardCatalog& catalog, std::uint64_t seed,
                           const GameOptions& options) {
    if (options.turn_cap < 1) throw Error::config("turn cap must be at least 1");

    Rng setup_rng(derive_seed(seed, kStreamGame, 0));
    GameState state = setup_game(deck_a, deck_b, catalog, setup_rng);

    std::uint64_t player_turn = 0;
    while (!state.over() && state.turn_number <= options.turn_cap) {
        Rng turn_rng(derive_seed(seed, kStreamPlan, player_turn));
        const TurnPolicy& policy = state.active == 0 ? policy_a : policy_b;
        ActionSequence actions = policy(state, turn_rng);
        if (actions.empty()) throw Error::internal("turn policy returned no actions");
        for (const Action& action : actions) {
            apply_action(state, action, catalog);
            if (state.over()) break;
        }
        player_turn += 1;
    }

    GameOutcome outcome;
    outcome.health_margin = state.players[0].hero_health - state.players[1].hero_health;
    outcome.turns = std::min<int>(state.turn_number, options.turn_cap);
    if (state.players[1].hero_health <= 0) outcome.winner = 0;
    else if (state.players[0].hero_health <= 0) outcome.winner = 1;
    g_games_played.fetch_add(1, std::memory_order_relaxed);
    return outcome;
}

GameOutcome play_game(const Deck& deck_a, const Deck& deck_b,
                      const HeuristicWeights& weights_a, const HeuristicWeights& weights_b,
                      const CardCatalog& catalog, std::uint64_t seed,
                      const GameOptions& options) {
    require_valid(deck_a, catalog, "first deck");
    require_valid(deck_b, catalog, "second deck");
    return play_game_with(deck_a, deck_b,
                          planning_policy(catalog, weights_a, options.plan_budget),
                          planning_policy(catalog, weights_b, options.plan_budget),
                          catalog, seed, options);
}

std::uint64_t games_played() {
    return g_games_played.load(std::memory_order_relaxed);
}

FitnessResult evaluate_deck(const Deck& deck, const HeuristicWeights& weights,
                            const std::vector<Opponent>& opponents,
                            const CardCatalog& catalog, std::uint64_t seed,
                            const EvalOptions& options) {
    if (opponents.empty()) throw Error::validation("evaluate_deck needs at least one opponent");
    if (options.games < 1) throw Error::config("evaluate_deck needs at least one game");
    require_valid(deck, catalog, "candidate deck");
    for (const Opponent& opponent : opponents)
        require_valid(opponent.deck, catalog, "opponent deck");

    const int n = options.games;
    const std::size_t m = opponents.size();
    std::vector<int> margins(static_cast<std::size_t>(n), 0);
    std::vector<signed char> results(static_cast<std::size_t>(n), 0);

    auto run_game = [&](int g) {
        const Opponent& opponent = opponents[static_cast<std::size_t>(g) % m];
        const bool candidate_first = (static_cast<std::size_t>(g) / m) % 2 == 0;
        const std::uint64_t game_seed = derive_seed(seed, kStreamEval, static_cast<std::uint64_t>(g));
        GameOutcome outcome = candidate_first
            ? play_game(deck, opponent.deck, weights, opponent.weights, catalog, game_seed, options.game)
            : play_game(opponent.deck, deck, opponent.weights, weights, catalog, game_seed, options.game);
        const int own_side = candidate_first ? 0 : 1;
        margins[static_cast<std::size_t>(g)] =
            own_side == 0 ? outcome.health_margin : -outcome.health_margin;
        if (outcome.winner == kDrawnGame) results[static_cast<std::size_t>(g)] = 0;
        else results[static_cast<std::size_t>(g)] = outcome.winner == own_side ? 1 : -1;
    };

    const int workers = std::max(1, options.workers);
    if (workers == 1) {
        for (int g = 0; g < n; ++g) run_game(g);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int g = next.fetch_add(1); g < n; g = next.fetch_add(1)) run_game(g);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    FitnessResult result;
    result.games = n;
    long long fitness = 0;
    for (int g = 0; g < n; ++g) {
        fitness += margins[static_cast<std::size_t>(g)];
        if (results[static_cast<std::size_t>(g)] > 0) result.wins += 1;
        if (results[static_cast<std::size_t>(g)] == 0) result.draws += 1;
    }
    result.fitness = static_cast<double>(fitness);
    result.winrate = static_cast<double>(result.wins) / static_cast<double>(n);
    return result;
}

} // namespace mesb
