#include "mesb/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "mesb/error.hpp"

namespace mesb {

void RunConfig::validate() const {
    archive.validate();
    if (games_per_evaluation < 1) throw Error::config("games_per_evaluation must be >= 1");
    if (bootstrap_evaluations < 0) throw Error::config("bootstrap_evaluations must be >= 0");
    if (batch_size < 1) throw Error::config("batch_size must be >= 1");
    if (workers < 1) throw Error::config("workers must be >= 1");
    if (opponents.empty()) throw Error::config("opponent pool must not be empty");
    if (game.turn_cap < 1) throw Error::config("turn_cap must be >= 1");
    if (game.plan_budget < 1) throw Error::config("plan_budget must be >= 1");
}

std::vector<BehaviorVector> RunLog::behaviors() const {
    std::vector<BehaviorVector> out;
    out.reserve(entries.size());
    for (const LogEntry& entry : entries) out.push_back({entry.mean_mana, entry.var_mana});
    return out;
}

namespace {

template <typename Fn>
void run_indexed_jobs(int jobs, int workers, Fn&& job) {
    if (workers <= 1 || jobs <= 1) {
        for (int k = 0; k < jobs; ++k) job(k);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto drain = [&] {
        try {
            for (int k = next.fetch_add(1); k < jobs; k = next.fetch_add(1)) job(k);
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    const int width = std::min(workers, jobs);
    pool.reserve(static_cast<std::size_t>(width));
    for (int w = 0; w < width; ++w) pool.emplace_back(drain);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

void check_deck(const Deck& deck, const CardCatalog& catalog, const char* what) {
    std::vector<DeckViolation> violations = validate_deck(deck, catalog);
    if (!violations.empty())
        throw Error::validation(std::string(what) + ": " + violations.front().message);
}

} // namespace

RunResult run_mesb(const CardCatalog& catalog, const RunConfig& config) {
    config.validate();
    for (const Opponent& opponent : config.opponents)
        check_deck(opponent.deck, catalog, "opponent deck invalid");
    if (catalog.capacity() < static_cast<int>(kDeckSize))
        throw Error::validation("catalog cannot fill a deck");

    const std::uint64_t budget = config.archive.total_evaluations;
    RunResult result{DeckArchive(config.archive), {}};
    result.log.entries.reserve(budget);

    double best_fitness = 0.0;
    bool have_best = false;

    std::vector<Deck> candidates;
    std::vector<FitnessResult> fitnesses;
    for (std::uint64_t batch_start = 0; batch_start < budget;
         batch_start += static_cast<std::uint64_t>(config.batch_size)) {
        const int batch_n = static_cast<int>(std::min<std::uint64_t>(
            config.batch_size, budget - batch_start));

        candidates.assign(static_cast<std::size_t>(batch_n), Deck{});
        for (int k = 0; k < batch_n; ++k) {
            const std::uint64_t i = batch_start + static_cast<std::uint64_t>(k);
            Rng rng(derive_seed(config.seed, kStreamSelect, i));
            if (i < static_cast<std::uint64_t>(config.bootstrap_evaluations) ||
                result.archive.empty()) {
                candidates[static_cast<std::size_t>(k)] = random_deck(catalog, rng);
            } else {
                const Deck& parent = result.archive.select_random(rng).genome;
                candidates[static_cast<std::size_t>(k)] = mutate_deck(parent, catalog, rng);
            }
        }

        fitnesses.assign(static_cast<std::size_t>(batch_n), FitnessResult{});
        EvalOptions eval;
        eval.games = config.games_per_evaluation;
        eval.game = config.game;
        eval.workers = batch_n == 1 ? config.workers : 1;
        run_indexed_jobs(batch_n, batch_n == 1 ? 1 : config.workers, [&](int k) {
            const std::uint64_t i = batch_start + static_cast<std::uint64_t>(k);
            fitnesses[static_cast<std::size_t>(k)] = evaluate_deck(
                candidates[static_cast<std::size_t>(k)], config.player_weights,
                config.opponents, catalog, derive_seed(config.seed, kStreamEval, i), eval);
        });

        for (int k = 0; k < batch_n; ++k) {
            const std::uint64_t i = batch_start + static_cast<std::uint64_t>(k);
            const FitnessResult& fitness = fitnesses[static_cast<std::size_t>(k)];
            BehaviorVector behavior = behavior_of(candidates[static_cast<std::size_t>(k)], catalog);

            Elite<Deck> candidate;
            candidate.genome = std::move(candidates[static_cast<std::size_t>(k)]);
            candidate.behavior = behavior;
            candidate.fitness = fitness.fitness;
            candidate.stats = {fitness.winrate, static_cast<std::uint32_t>(fitness.games)};
            const InsertOutcome outcome = result.archive.try_insert(std::move(candidate));

            LogEntry entry;
            entry.eval_index = static_cast<int>(i);
            entry.mean_mana = behavior[0];
            entry.var_mana = behavior[1];
            entry.fitness = fitness.fitness;
            entry.winrate = fitness.winrate;
            entry.outcome = outcome;
            entry.resolution = resolution_for(i, config.archive);
            entry.occupied_cells = static_cast<int>(result.archive.occupied());

            best_fitness = have_best ? std::max(best_fitness, fitness.fitness) : fitness.fitness;
            have_best = true;
            entry.best_fitness = best_fitness;

            double best_winrate = 0.0;
            double winrate_sum = 0.0;
            for (const auto& [coord, elite] : result.archive.cells()) {
                best_winrate = std::max(best_winrate, elite.stats.winrate);
                winrate_sum += elite.stats.winrate;
            }
            entry.best_winrate = best_winrate;
            entry.avg_winrate = winrate_sum / static_cast<double>(result.archive.occupied());
            result.log.entries.push_back(entry);
        }
    }
    return result;
}

namespace {

const Elite<Deck>& best_elite(const DeckArchive& archive) {
    const Elite<Deck>* best = nullptr;
    for (const auto& [coord, elite] : archive.cells()) {
        if (best == nullptr || elite.fitness > best->fitness) best = &elite;
    }
    if (best == nullptr) throw Error::validation("archive is empty");
    return *best;
}

} // namespace

std::vector<Opponent> build_adversary_pool(const DeckArchive& archive,
                                           const HeuristicWeights& weights, int top_n) {
    if (top_n < 1) throw Error::validation("adversary pool size must be >= 1");
    if (archive.occupied() < static_cast<std::size_t>(top_n))
        throw Error::validation("archive holds " + std::to_string(archive.occupied()) +
                                " elites, need " + std::to_string(top_n));

    std::vector<const Elite<Deck>*> order;
    order.reserve(archive.occupied());
    for (const auto& [coord, elite] : archive.cells()) order.push_back(&elite);
    std::stable_sort(order.begin(), order.end(),
                     [](const Elite<Deck>* a, const Elite<Deck>* b) {
                         return a->fitness > b->fitness;
                     });

    std::vector<Opponent> pool;
    pool.reserve(static_cast<std::size_t>(top_n));
    for (int i = 0; i < top_n; ++i) pool.push_back({order[static_cast<std::size_t>(i)]->genome, weights});
    return pool;
}

HeadToHead compare_archives(const DeckArchive& a, const DeckArchive& b,
                            const HeuristicWeights& weights_a, const HeuristicWeights& weights_b,
                            const CardCatalog& catalog, int games, std::uint64_t seed,
                            const GameOptions& options) {
    if (games < 1) throw Error::validation("head-to-head needs at least one game");
    const Deck deck_a = best_elite(a).genome;
    const Deck deck_b = best_elite(b).genome;

    HeadToHead report;
    report.games = games;
    long long margin_sum_a = 0;
    for (int g = 0; g < games; ++g) {
        const std::uint64_t game_seed = derive_seed(seed, kStreamEval, static_cast<std::uint64_t>(g));
        const bool a_first = g % 2 == 0;
        const GameOutcome outcome = a_first
            ? play_game(deck_a, deck_b, weights_a, weights_b, catalog, game_seed, options)
            : play_game(deck_b, deck_a, weights_b, weights_a, catalog, game_seed, options);
        const int margin_a = a_first ? outcome.health_margin : -outcome.health_margin;
        margin_sum_a += margin_a;
        if (outcome.winner == kDrawnGame) report.draws += 1;
        else if ((outcome.winner == 0) == a_first) report.wins_a += 1;
        else report.wins_b += 1;
    }
    report.winrate_a = static_cast<double>(report.wins_a) / games;
    report.winrate_b = static_cast<double>(report.wins_b) / games;
    report.mean_margin_a = static_cast<double>(margin_sum_a) / games;
    report.mean_margin_b = -report.mean_margin_a;
    return report;
}

} // namespace mesb
