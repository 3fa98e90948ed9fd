#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <mesb/agent.hpp>
#include <mesb/deck.hpp>
#include <mesb/error.hpp>
#include <mesb/game.hpp>
#include <mesb/match.hpp>
#include <mesb/rng.hpp>

#include "test_support.hpp"

using namespace mesb;
using namespace mesbtest;

namespace {

enum BattleCard : CardIndex { kImp = 0, kOgre, kWall, kRunner, kBolt, kZap, kNova, kPebble };

CardCatalog battle_catalog() {
    std::vector<Card> cards;
    cards.push_back(make_minion("imp", 1, 1, 1));
    cards.push_back(make_minion("ogre", 2, 2, 1));
    cards.push_back(make_minion("wall", 2, 1, 4, true));
    cards.push_back(make_minion("runner", 1, 2, 1, false, true));
    cards.push_back(make_spell("bolt", 3, 4, SpellTarget::EnemyHero));
    cards.push_back(make_spell("zap", 1, 2, SpellTarget::EnemyMinion));
    cards.push_back(make_spell("nova", 4, 2, SpellTarget::AllEnemyMinions));
    cards.push_back(make_minion("pebble", 1, 0, 3));
    return CardCatalog(std::move(cards));
}

Minion on_board(const CardCatalog& catalog, CardIndex index, bool exhausted = false) {
    const Card& card = catalog.card(index);
    return Minion{index, static_cast<std::int16_t>(card.attack),
                  static_cast<std::int16_t>(card.health), exhausted, card.taunt};
}

// Both sides empty-handed with a little mana; a clean slate for hand-built
// scenarios.
GameState blank_state(int mana = 0) {
    GameState state;
    for (PlayerState& p : state.players) {
        p.mana_crystals = static_cast<std::int8_t>(mana);
        p.current_mana = static_cast<std::int8_t>(mana);
    }
    return state;
}

bool contains_action(const ActionList& actions, const Action& wanted) {
    return std::find(actions.begin(), actions.end(), wanted) != actions.end();
}

const TurnPolicy kPassPolicy = [](const GameState&, Rng&) {
    return ActionSequence{Action{}};
};

} // namespace

TEST_CASE("legal actions list plays then attacks then end turn") {
    auto catalog = battle_catalog();

    auto state = blank_state();
    auto actions = legal_actions(state, catalog);
    REQUIRE(actions.size() == 1);
    CHECK(actions[0] == Action{ActionType::EndTurn, 0, 0});

    state = blank_state(1);
    state.players[0].hand.push_back(kImp);
    actions = legal_actions(state, catalog);
    REQUIRE(actions.size() == 2);
    CHECK(actions[0] == Action{ActionType::PlayMinion, 0, 0});
    CHECK(actions[1] == Action{ActionType::EndTurn, 0, 0});

    state.players[0].current_mana = 0;
    actions = legal_actions(state, catalog);
    REQUIRE(actions.size() == 1);  // too poor to play

    state = blank_state(2);
    state.players[0].board.push_back(on_board(catalog, kOgre));
    state.players[1].board.push_back(on_board(catalog, kImp));
    actions = legal_actions(state, catalog);
    REQUIRE(actions.size() == 3);
    CHECK(actions[0] == Action{ActionType::Attack, 0, kTargetHero});
    CHECK(actions[1] == Action{ActionType::Attack, 0, 0});
    CHECK(actions[2] == Action{ActionType::EndTurn, 0, 0});
}

TEST_CASE("taunt minions wall off every other target") {
    auto catalog = battle_catalog();
    auto state = blank_state();
    state.players[0].board.push_back(on_board(catalog, kOgre));
    state.players[1].board.push_back(on_board(catalog, kImp));   // target 0
    state.players[1].board.push_back(on_board(catalog, kWall));  // target 1, taunt

    auto actions = legal_actions(state, catalog);
    REQUIRE(actions.size() == 2);
    CHECK(actions[0] == Action{ActionType::Attack, 0, 1});
    CHECK(actions[1] == Action{ActionType::EndTurn, 0, 0});

    CHECK_THROWS_WITH_AS(apply_action(state, {ActionType::Attack, 0, kTargetHero}, catalog),
                         doctest::Contains("taunt must be attacked first"), Error);
    CHECK_THROWS_WITH_AS(apply_action(state, {ActionType::Attack, 0, 0}, catalog),
                         doctest::Contains("taunt must be attacked first"), Error);

    apply_action(state, {ActionType::Attack, 0, 1}, catalog);
    CHECK(state.players[1].board.size() == 2);
    CHECK(state.players[1].board[1].health == 2);  // wall took 2
    CHECK(state.players[0].board.empty());         // ogre traded into the wall
}

TEST_CASE("exhausted and toothless minions cannot attack") {
    auto catalog = battle_catalog();
    auto state = blank_state();
    state.players[0].board.push_back(on_board(catalog, kOgre, true));
    state.players[0].board.push_back(on_board(catalog, kPebble));  // 0 attack

    auto actions = legal_actions(state, catalog);
    REQUIRE(actions.size() == 1);
    CHECK_THROWS_WITH_AS(apply_action(state, {ActionType::Attack, 0, kTargetHero}, catalog),
                         doctest::Contains("exhausted"), Error);
    CHECK_THROWS_WITH_AS(apply_action(state, {ActionType::Attack, 1, kTargetHero}, catalog),
                         doctest::Contains("no attack"), Error);
}

TEST_CASE("spells offer one action per legal target") {
    auto catalog = battle_catalog();
    auto state = blank_state(4);
    state.players[0].hand.push_back(kBolt);
    state.players[0].hand.push_back(kZap);
    state.players[0].hand.push_back(kNova);

    // no enemy minions: bolt at the hero, nova at the empty board, zap nothing
    auto actions = legal_actions(state, catalog);
    REQUIRE(actions.size() == 3);
    CHECK(actions[0] == Action{ActionType::PlaySpell, 0, kTargetHero});
    CHECK(actions[1] == Action{ActionType::PlaySpell, 2, kTargetAll});

    state.players[1].board.push_back(on_board(catalog, kImp));
    state.players[1].board.push_back(on_board(catalog, kWall));
    actions = legal_actions(state, catalog);
    REQUIRE(actions.size() == 5);
    CHECK(contains_action(actions, {ActionType::PlaySpell, 1, 0}));
    CHECK(contains_action(actions, {ActionType::PlaySpell, 1, 1}));
}

TEST_CASE("combat is simultaneous and the dead are swept") {
    auto catalog = battle_catalog();
    auto state = blank_state();
    state.players[0].board.push_back(on_board(catalog, kOgre));  // 2/1
    state.players[1].board.push_back(on_board(catalog, kImp));   // 1/1

    apply_action(state, {ActionType::Attack, 0, 0}, catalog);
    CHECK(state.players[0].board.empty());
    CHECK(state.players[1].board.empty());
    CHECK(state.players[0].hero_health == kHeroHealth);
    CHECK(state.players[1].hero_health == kHeroHealth);
}

TEST_CASE("face attacks spend the minion for the turn") {
    auto catalog = battle_catalog();
    auto state = blank_state();
    state.players[0].board.push_back(on_board(catalog, kOgre));

    apply_action(state, {ActionType::Attack, 0, kTargetHero}, catalog);
    CHECK(state.players[1].hero_health == 28);
    CHECK(state.players[0].board[0].exhausted);
    CHECK_THROWS_AS(apply_action(state, {ActionType::Attack, 0, kTargetHero}, catalog), Error);
}

TEST_CASE("spells resolve their named effect") {
    auto catalog = battle_catalog();
    auto state = blank_state(4);
    state.players[0].hand.push_back(kBolt);
    apply_action(state, {ActionType::PlaySpell, 0, kTargetHero}, catalog);
    CHECK(state.players[1].hero_health == 26);
    CHECK(state.players[0].current_mana == 1);
    CHECK(state.players[0].hand.empty());

    state = blank_state(4);
    state.players[0].hand.push_back(kZap);
    state.players[1].board.push_back(on_board(catalog, kWall));
    apply_action(state, {ActionType::PlaySpell, 0, 0}, catalog);
    CHECK(state.players[1].board[0].health == 2);

    state = blank_state(4);
    state.players[0].hand.push_back(kNova);
    state.players[0].board.push_back(on_board(catalog, kImp));  // friendly, untouched
    state.players[1].board.push_back(on_board(catalog, kImp));
    state.players[1].board.push_back(on_board(catalog, kWall));
    apply_action(state, {ActionType::PlaySpell, 0, kTargetAll}, catalog);
    REQUIRE(state.players[1].board.size() == 1);
    CHECK(state.players[1].board[0].health == 2);
    CHECK(state.players[0].board.size() == 1);
    CHECK(state.players[0].board[0].health == 1);
}

TEST_CASE("minions enter exhausted unless they have charge") {
    auto catalog = battle_catalog();
    auto state = blank_state(2);
    state.players[0].hand.push_back(kImp);
    state.players[0].hand.push_back(kRunner);

    apply_action(state, {ActionType::PlayMinion, 0, 0}, catalog);
    apply_action(state, {ActionType::PlayMinion, 0, 0}, catalog);  // hand shifted left
    REQUIRE(state.players[0].board.size() == 2);
    CHECK(state.players[0].board[0].exhausted);        // imp waits
    CHECK_FALSE(state.players[0].board[1].exhausted);  // runner has charge

    CHECK_THROWS_AS(apply_action(state, {ActionType::Attack, 0, kTargetHero}, catalog), Error);
    apply_action(state, {ActionType::Attack, 1, kTargetHero}, catalog);
    CHECK(state.players[1].hero_health == 28);
}

TEST_CASE("the board holds seven minions") {
    auto catalog = battle_catalog();
    auto state = blank_state(10);
    for (int i = 0; i < kMaxBoard; ++i) {
        state.players[0].board.push_back(on_board(catalog, kImp));
    }
    state.players[0].hand.push_back(kImp);

    auto actions = legal_actions(state, catalog);
    CHECK_FALSE(contains_action(actions, {ActionType::PlayMinion, 0, 0}));
    CHECK_THROWS_WITH_AS(apply_action(state, {ActionType::PlayMinion, 0, 0}, catalog),
                         doctest::Contains("board is full"), Error);
}

TEST_CASE("end turn grows mana readies minions and draws from the deck back") {
    auto catalog = battle_catalog();
    auto state = blank_state();
    state.players[1].mana_crystals = 3;
    state.players[1].deck.push_back(kWall);
    state.players[1].deck.push_back(kOgre);  // back: drawn first
    state.players[1].board.push_back(on_board(catalog, kImp, true));

    apply_action(state, {ActionType::EndTurn, 0, 0}, catalog);
    CHECK(state.active == 1);
    CHECK(state.turn_number == 1);  // only the second player's end advances it
    CHECK(state.players[1].mana_crystals == 4);
    CHECK(state.players[1].current_mana == 4);
    REQUIRE(state.players[1].hand.size() == 1);
    CHECK(state.players[1].hand[0] == kOgre);
    CHECK(state.players[1].deck.size() == 1);
    CHECK_FALSE(state.players[1].board[0].exhausted);

    apply_action(state, {ActionType::EndTurn, 0, 0}, catalog);
    CHECK(state.active == 0);
    CHECK(state.turn_number == 2);
    CHECK(state.players[0].mana_crystals == 1);

    // crystals cap at ten
    state.players[1].mana_crystals = 10;
    apply_action(state, {ActionType::EndTurn, 0, 0}, catalog);
    CHECK(state.players[1].mana_crystals == 10);
    CHECK(state.players[1].current_mana == 10);
}

TEST_CASE("drawing into a full hand burns the card") {
    auto catalog = battle_catalog();
    auto state = blank_state();
    for (int i = 0; i < kMaxHand; ++i) state.players[1].hand.push_back(kImp);
    state.players[1].deck.push_back(kOgre);

    apply_action(state, {ActionType::EndTurn, 0, 0}, catalog);
    CHECK(state.players[1].hand.size() == kMaxHand);
    CHECK(state.players[1].deck.empty());
    CHECK(state.players[1].hero_health == kHeroHealth);  // a burn is not fatigue
}

TEST_CASE("empty decks deal escalating fatigue") {
    auto catalog = battle_catalog();
    auto state = blank_state();

    apply_action(state, {ActionType::EndTurn, 0, 0}, catalog);
    CHECK(state.players[1].fatigue == 1);
    CHECK(state.players[1].hero_health == 29);

    apply_action(state, {ActionType::EndTurn, 0, 0}, catalog);
    CHECK(state.players[0].fatigue == 1);
    CHECK(state.players[0].hero_health == 29);

    apply_action(state, {ActionType::EndTurn, 0, 0}, catalog);
    CHECK(state.players[1].fatigue == 2);
    CHECK(state.players[1].hero_health == 27);
}

TEST_CASE("finished games accept no further actions") {
    auto catalog = battle_catalog();
    auto state = blank_state();
    state.players[1].hero_health = 0;
    REQUIRE(state.over());
    CHECK_THROWS_WITH_AS(legal_actions(state, catalog),
                         doctest::Contains("finished game"), Error);
    CHECK_THROWS_WITH_AS(apply_action(state, {ActionType::EndTurn, 0, 0}, catalog),
                         doctest::Contains("game is over"), Error);
    try {
        legal_actions(state, catalog);
    } catch (const Error& e) {
        CHECK(e.error_class() == ErrorClass::Internal);
    }
}

TEST_CASE("illegal plays are rejected by name") {
    auto catalog = battle_catalog();
    auto state = blank_state(1);
    state.players[0].hand.push_back(kBolt);  // costs 3

    CHECK_THROWS_WITH_AS(apply_action(state, {ActionType::PlaySpell, 0, kTargetHero}, catalog),
                         doctest::Contains("not enough mana"), Error);
    state.players[0].hand[0] = kZap;  // affordable, so the kind check fires
    CHECK_THROWS_WITH_AS(apply_action(state, {ActionType::PlayMinion, 0, 0}, catalog),
                         doctest::Contains("not a minion"), Error);
    state.players[0].hand[0] = kBolt;
    CHECK_THROWS_WITH_AS(apply_action(state, {ActionType::PlayMinion, 3, 0}, catalog),
                         doctest::Contains("no such hand card"), Error);
    CHECK_THROWS_WITH_AS(apply_action(state, {ActionType::Attack, 0, kTargetHero}, catalog),
                         doctest::Contains("no such attacker"), Error);

    state.players[0].current_mana = 10;
    state.players[0].hand[0] = kZap;
    CHECK_THROWS_WITH_AS(apply_action(state, {ActionType::PlaySpell, 0, 5}, catalog),
                         doctest::Contains("spell needs an enemy minion"), Error);
}

TEST_CASE("setup deals three and four then starts the first turn") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    auto first = load_deck_file(data_path("decks/starter_aggro.deck"), catalog);
    auto second = load_deck_file(data_path("decks/starter_control.deck"), catalog);

    Rng rng(404);
    auto state = setup_game(first, second, catalog, rng);
    CHECK(state.active == 0);
    CHECK(state.turn_number == 1);
    CHECK(state.players[0].hand.size() == 4);  // 3 dealt + the turn-one draw
    CHECK(state.players[0].deck.size() == 26);
    CHECK(state.players[0].mana_crystals == 1);
    CHECK(state.players[0].current_mana == 1);
    CHECK(state.players[1].hand.size() == 4);
    CHECK(state.players[1].deck.size() == 26);
    CHECK(state.players[1].mana_crystals == 0);

    // dealing only rearranges the deck
    for (int p = 0; p < 2; ++p) {
        std::vector<CardIndex> held(state.players[p].hand.begin(), state.players[p].hand.end());
        held.insert(held.end(), state.players[p].deck.begin(), state.players[p].deck.end());
        std::sort(held.begin(), held.end());
        const Deck& source = p == 0 ? first : second;
        CHECK(held == source.cards);
    }

    CHECK_THROWS_WITH_AS(setup_game(Deck{}, second, catalog, rng),
                         doctest::Contains("requires full decks"), Error);
}

TEST_CASE("state encodings differ whenever any field differs") {
    auto catalog = battle_catalog();
    auto base = blank_state(3);
    base.players[0].hand.push_back(kImp);
    base.players[0].deck.push_back(kOgre);
    base.players[0].board.push_back(on_board(catalog, kWall));
    base.players[1].board.push_back(on_board(catalog, kOgre, true));

    auto copy = base;
    CHECK(encode_state(copy) == encode_state(base));
    CHECK(state_hash(copy) == state_hash(base));

    auto touch = [&](auto&& edit) {
        GameState s = base;
        edit(s);
        CHECK(encode_state(s) != encode_state(base));
        CHECK(state_hash(s) != state_hash(base));
    };
    touch([](GameState& s) { s.players[0].hero_health -= 1; });
    touch([](GameState& s) { s.players[1].hero_health -= 1; });
    touch([](GameState& s) { s.players[0].current_mana -= 1; });
    touch([](GameState& s) { s.players[0].mana_crystals -= 1; });
    touch([](GameState& s) { s.players[1].fatigue = 3; });
    touch([](GameState& s) { s.players[0].hand.push_back(kZap); });
    touch([](GameState& s) { s.players[0].deck.push_back(kZap); });
    touch([](GameState& s) { s.players[0].board[0].attack += 1; });
    touch([](GameState& s) { s.players[0].board[0].health -= 1; });
    touch([](GameState& s) { s.players[0].board[0].exhausted = true; });
    touch([](GameState& s) { s.players[0].board[0].taunt = false; });
    touch([](GameState& s) { s.players[1].board[0].exhausted = false; });
    touch([](GameState& s) { s.active = 1; });
    touch([](GameState& s) { s.turn_number += 1; });
}

TEST_CASE("heuristic scores follow the linear formula") {
    auto catalog = battle_catalog();
    auto state = blank_state(3);
    state.players[0].hero_health = 22;
    state.players[1].hero_health = 17;
    state.players[0].hand.push_back(kImp);
    state.players[0].hand.push_back(kBolt);
    state.players[0].board.push_back(on_board(catalog, kOgre));   // 2/1
    state.players[0].board.push_back(on_board(catalog, kWall));   // 1/4
    state.players[1].board.push_back(on_board(catalog, kRunner)); // 2/1

    HeuristicWeights w;
    w.opp_hero_damage = 3.0;
    w.own_hero_health = 0.5;
    w.own_board_attack = 1.0;
    w.own_board_health = 0.25;
    w.opp_board_attack = -0.5;
    w.opp_board_health = -1.0;
    w.hand_size = 2.0;

    const double expected_p0 = 3.0 * (30 - 17) + 0.5 * 22 + 1.0 * 3 + 0.25 * 5 +
                               -0.5 * 2 + -1.0 * 1 + 2.0 * 2;
    CHECK(heuristic_score(state, 0, w) == expected_p0);

    const double expected_p1 = 3.0 * (30 - 22) + 0.5 * 17 + 1.0 * 2 + 0.25 * 1 +
                               -0.5 * 3 + -1.0 * 5 + 2.0 * 0;
    CHECK(heuristic_score(state, 1, w) == expected_p1);
}

TEST_CASE("weight presets resolve by name") {
    const auto aggro = HeuristicWeights::aggro();
    CHECK(aggro.style == "aggro");
    CHECK(aggro.opp_hero_damage == 3.0);
    CHECK(aggro.own_hero_health == 0.5);
    CHECK(aggro.own_board_attack == 1.0);
    CHECK(aggro.own_board_health == 0.5);
    CHECK(aggro.opp_board_attack == -0.5);
    CHECK(aggro.opp_board_health == -0.5);
    CHECK(aggro.hand_size == 0.5);

    const auto control = HeuristicWeights::control();
    CHECK(control.style == "control");
    CHECK(control.opp_hero_damage == 0.5);
    CHECK(control.own_board_attack == 2.0);

    CHECK(HeuristicWeights::preset("aggro") == aggro);
    CHECK(HeuristicWeights::preset("control") == control);
    CHECK_THROWS_WITH_AS(HeuristicWeights::preset("midrange"),
                         doctest::Contains("unknown heuristic preset"), Error);
    try {
        HeuristicWeights::preset("midrange");
    } catch (const Error& e) {
        CHECK(e.error_class() == ErrorClass::Config);
    }
}

TEST_CASE("the planner always ends the turn or the game") {
    auto catalog = battle_catalog();
    auto state = blank_state();
    state.players[0].deck.push_back(kImp);
    state.players[1].deck.push_back(kImp);

    Rng rng(1);
    auto plan = plan_turn(state, catalog, HeuristicWeights::aggro(), rng, 50);
    REQUIRE(plan.actions.size() == 1);
    CHECK(plan.actions[0] == Action{ActionType::EndTurn, 0, 0});
    CHECK(plan.sequences >= 1);
}

TEST_CASE("the planner takes a waiting lethal") {
    auto catalog = battle_catalog();
    auto state = blank_state(2);
    state.players[0].board.push_back(on_board(catalog, kOgre));
    state.players[0].hand.push_back(kImp);
    state.players[1].hero_health = 2;
    state.players[0].deck.push_back(kImp);
    state.players[1].deck.push_back(kImp);

    Rng rng(9);
    auto plan = plan_turn(state, catalog, HeuristicWeights::aggro(), rng, 64);
    GameState replay = state;
    for (const Action& action : plan.actions) apply_action(replay, action, catalog);
    CHECK(replay.over());
    CHECK(replay.players[1].hero_health <= 0);
}

TEST_CASE("the planner skips permuted duplicates of one state") {
    auto catalog = battle_catalog();
    auto state = blank_state();
    state.players[0].board.push_back(on_board(catalog, kOgre));
    state.players[0].board.push_back(on_board(catalog, kOgre));
    state.players[0].deck.push_back(kImp);
    state.players[1].deck.push_back(kImp);

    Rng rng(14);
    auto plan = plan_turn(state, catalog, HeuristicWeights::aggro(), rng, 200);
    CHECK(plan.hash_hits >= 1);  // both attack orders reach the same state
    CHECK(plan.sequences <= 200);
}

TEST_CASE("planning is a pure function of state and seed") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    auto deck_a = load_deck_file(data_path("decks/starter_aggro.deck"), catalog);
    auto deck_b = load_deck_file(data_path("decks/starter_control.deck"), catalog);
    Rng setup(77);
    auto state = setup_game(deck_a, deck_b, catalog, setup);

    Rng r1(123);
    Rng r2(123);
    auto p1 = plan_turn(state, catalog, HeuristicWeights::control(), r1, 120);
    auto p2 = plan_turn(state, catalog, HeuristicWeights::control(), r2, 120);
    CHECK(p1.actions == p2.actions);
    CHECK(p1.score == p2.score);
    CHECK(p1.sequences == p2.sequences);
    CHECK(p1.hash_hits == p2.hash_hits);
}

TEST_CASE("a passed-out game follows the fatigue arithmetic exactly") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    auto deck_a = load_deck_file(data_path("decks/starter_aggro.deck"), catalog);
    auto deck_b = load_deck_file(data_path("decks/starter_control.deck"), catalog);

    // replay the draw schedule with plain counters: 27/26 cards after the
    // deal, one draw at every turn start, then 1, 2, 3... damage
    int deck_left[2] = {27, 26};
    int health[2] = {kHeroHealth, kHeroHealth};
    int fatigue[2] = {0, 0};
    int round = 0;
    int expected_winner = -2;
    for (int step = 0;; ++step) {
        const int p = step % 2;
        if (p == 0) ++round;
        if (deck_left[p] > 0) {
            --deck_left[p];
        } else {
            health[p] -= ++fatigue[p];
        }
        if (health[p] <= 0) {
            expected_winner = 1 - p;
            break;
        }
    }
    REQUIRE(expected_winner == 0);
    REQUIRE(health[0] - health[1] == 8);
    REQUIRE(round == 34);

    const auto outcome = play_game_with(deck_a, deck_b, kPassPolicy, kPassPolicy, catalog, 5);
    CHECK(outcome.winner == expected_winner);
    CHECK(outcome.health_margin == health[0] - health[1]);
    CHECK(outcome.turns == round);

    GameOptions capped;
    capped.turn_cap = 10;
    const auto drawn = play_game_with(deck_a, deck_b, kPassPolicy, kPassPolicy, catalog, 5, capped);
    CHECK(drawn.winner == kDrawnGame);
    CHECK(drawn.health_margin == 0);
    CHECK(drawn.turns == 10);
}

TEST_CASE("played games are deterministic in the seed") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    auto deck_a = load_deck_file(data_path("decks/starter_aggro.deck"), catalog);
    auto deck_b = load_deck_file(data_path("decks/starter_control.deck"), catalog);
    GameOptions options;
    options.plan_budget = 16;
    options.turn_cap = 40;

    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto first = play_game(deck_a, deck_b, HeuristicWeights::aggro(),
                                     HeuristicWeights::control(), catalog, seed, options);
        const auto again = play_game(deck_a, deck_b, HeuristicWeights::aggro(),
                                     HeuristicWeights::control(), catalog, seed, options);
        CHECK(first.winner == again.winner);
        CHECK(first.health_margin == again.health_margin);
        CHECK(first.turns == again.turns);

        // winner and margin always agree in sign
        if (first.winner == 0) CHECK(first.health_margin > 0);
        if (first.winner == 1) CHECK(first.health_margin < 0);
    }
}

TEST_CASE("mirror matches show no systematic side bias") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    auto deck = load_deck_file(data_path("decks/starter_aggro.deck"), catalog);
    GameOptions options;
    options.plan_budget = 12;

    auto first_player_rate = [&](std::uint64_t base_seed, int games) {
        int first_wins = 0;
        int decided = 0;
        for (int g = 0; g < games; ++g) {
            const auto out =
                play_game(deck, deck, HeuristicWeights::aggro(), HeuristicWeights::aggro(),
                          catalog, derive_seed(base_seed, kStreamGame, g), options);
            if (out.winner == 0) ++first_wins;
            if (out.winner != kDrawnGame) ++decided;
            if (out.winner == 0) CHECK(out.health_margin > 0);
            if (out.winner == 1) CHECK(out.health_margin < 0);
        }
        REQUIRE(decided > games / 2);
        return first_wins / static_cast<double>(games);
    };

    const double estimate_a = first_player_rate(1001, 1000);
    const double estimate_b = first_player_rate(2002, 1000);
    CHECK(std::abs(estimate_a - estimate_b) <= 0.04);
}

TEST_CASE("evaluate_deck is the sum of its per-game replays") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    auto candidate = load_deck_file(data_path("decks/starter_aggro.deck"), catalog);
    std::vector<Opponent> opponents;
    opponents.push_back({load_deck_file(data_path("decks/starter_control.deck"), catalog),
                         HeuristicWeights::aggro()});
    opponents.push_back({candidate, HeuristicWeights::control()});

    EvalOptions options;
    options.games = 10;
    options.game.plan_budget = 10;
    options.game.turn_cap = 30;
    const std::uint64_t seed = 555;
    const auto result = evaluate_deck(candidate, HeuristicWeights::aggro(), opponents,
                                      catalog, seed, options);

    double fitness = 0.0;
    int wins = 0;
    int draws = 0;
    for (int g = 0; g < options.games; ++g) {
        const auto& opp = opponents[g % opponents.size()];
        const bool candidate_first = (g / opponents.size()) % 2 == 0;
        const std::uint64_t game_seed = derive_seed(seed, kStreamEval, g);
        GameOutcome out;
        if (candidate_first) {
            out = play_game(candidate, opp.deck, HeuristicWeights::aggro(), opp.weights,
                            catalog, game_seed, options.game);
            fitness += out.health_margin;
            if (out.winner == 0) ++wins;
        } else {
            out = play_game(opp.deck, candidate, opp.weights, HeuristicWeights::aggro(),
                            catalog, game_seed, options.game);
            fitness -= out.health_margin;
            if (out.winner == 1) ++wins;
        }
        if (out.winner == kDrawnGame) ++draws;
    }

    CHECK(result.games == options.games);
    CHECK(result.fitness == fitness);
    CHECK(result.wins == wins);
    CHECK(result.draws == draws);
    CHECK(result.winrate == wins / static_cast<double>(options.games));
}

TEST_CASE("evaluation results are identical at any worker width") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    auto candidate = load_deck_file(data_path("decks/starter_aggro.deck"), catalog);
    std::vector<Opponent> opponents;
    opponents.push_back({load_deck_file(data_path("decks/starter_control.deck"), catalog),
                         HeuristicWeights::control()});

    EvalOptions narrow;
    narrow.games = 9;
    narrow.workers = 1;
    narrow.game.plan_budget = 8;
    narrow.game.turn_cap = 25;
    EvalOptions wide = narrow;
    wide.workers = 4;

    const auto a = evaluate_deck(candidate, HeuristicWeights::aggro(), opponents, catalog, 77, narrow);
    const auto b = evaluate_deck(candidate, HeuristicWeights::aggro(), opponents, catalog, 77, wide);
    CHECK(a.fitness == b.fitness);
    CHECK(a.winrate == b.winrate);
    CHECK(a.wins == b.wins);
    CHECK(a.draws == b.draws);
    CHECK(a.games == b.games);
}

TEST_CASE("a turn cap of one forces a draw") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    auto candidate = load_deck_file(data_path("decks/starter_aggro.deck"), catalog);
    std::vector<Opponent> opponents;
    opponents.push_back({candidate, HeuristicWeights::aggro()});

    EvalOptions options;
    options.games = 6;
    options.game.turn_cap = 1;
    options.game.plan_budget = 8;
    const auto result = evaluate_deck(candidate, HeuristicWeights::aggro(), opponents,
                                      catalog, 3, options);
    CHECK(result.draws == result.games);
    CHECK(result.wins == 0);
    CHECK(result.winrate == 0.0);
}

TEST_CASE("match entry points validate their inputs") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    auto good = load_deck_file(data_path("decks/starter_aggro.deck"), catalog);
    Deck bad = good;
    bad.cards.pop_back();

    CHECK_THROWS_WITH_AS(play_game(bad, good, HeuristicWeights::aggro(),
                                   HeuristicWeights::aggro(), catalog, 1),
                         doctest::Contains("first deck"), Error);
    CHECK_THROWS_WITH_AS(play_game(good, bad, HeuristicWeights::aggro(),
                                   HeuristicWeights::aggro(), catalog, 1),
                         doctest::Contains("second deck"), Error);

    GameOptions no_rounds;
    no_rounds.turn_cap = 0;
    CHECK_THROWS_AS(play_game(good, good, HeuristicWeights::aggro(),
                              HeuristicWeights::aggro(), catalog, 1, no_rounds),
                    Error);

    std::vector<Opponent> opponents;
    CHECK_THROWS_WITH_AS(evaluate_deck(good, HeuristicWeights::aggro(), opponents, catalog, 1),
                         doctest::Contains("at least one opponent"), Error);

    opponents.push_back({good, HeuristicWeights::aggro()});
    EvalOptions zero_games;
    zero_games.games = 0;
    CHECK_THROWS_AS(evaluate_deck(good, HeuristicWeights::aggro(), opponents, catalog, 1, zero_games),
                    Error);
    CHECK_THROWS_WITH_AS(evaluate_deck(bad, HeuristicWeights::aggro(), opponents, catalog, 1),
                         doctest::Contains("candidate deck"), Error);

    opponents[0].deck = bad;
    CHECK_THROWS_WITH_AS(evaluate_deck(good, HeuristicWeights::aggro(), opponents, catalog, 1),
                         doctest::Contains("opponent deck"), Error);
}

TEST_CASE("the games-played counter tracks completed games") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    auto deck = load_deck_file(data_path("decks/starter_aggro.deck"), catalog);
    std::vector<Opponent> opponents;
    opponents.push_back({deck, HeuristicWeights::aggro()});

    EvalOptions options;
    options.games = 5;
    options.game.plan_budget = 6;
    options.game.turn_cap = 10;
    const auto before = games_played();
    evaluate_deck(deck, HeuristicWeights::aggro(), opponents, catalog, 12, options);
    CHECK(games_played() - before == 5);
}

TEST_CASE("random walks through the rules never break an invariant") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    Rng deck_rng(808);
    const int games = 800;
    const int turn_cap = 40;

    for (int g = 0; g < games; ++g) {
        const Deck deck_a = random_deck(catalog, deck_rng);
        const Deck deck_b = random_deck(catalog, deck_rng);
        Rng rng(derive_seed(31, kStreamGame, g));
        GameState state = setup_game(deck_a, deck_b, catalog, rng);

        int steps = 0;
        while (!state.over() && state.turn_number <= turn_cap) {
            const auto actions = legal_actions(state, catalog);
            REQUIRE(!actions.empty());
            REQUIRE(actions.back().type == ActionType::EndTurn);

            // every sixteenth step, check the whole list is truly playable
            if (steps % 16 == 0) {
                for (const Action& a : actions) {
                    GameState probe = state;
                    apply_action(probe, a, catalog);
                }
            }

            const Action chosen = actions[rng.index(actions.size())];
            if (chosen.type == ActionType::Attack) {
                const auto& opp = state.opponent();
                if (opp.has_taunt()) {
                    REQUIRE(chosen.b != kTargetHero);
                    REQUIRE(opp.board[chosen.b].taunt);
                }
            }
            apply_action(state, chosen, catalog);
            ++steps;

            for (const PlayerState& p : state.players) {
                REQUIRE(p.hand.size() <= kMaxHand);
                REQUIRE(p.board.size() <= kMaxBoard);
                REQUIRE(p.current_mana >= 0);
                REQUIRE(p.mana_crystals <= kMaxMana);
                REQUIRE(p.hero_health <= kHeroHealth);
                for (const Minion& m : p.board) REQUIRE(m.health >= 1);
            }
        }

        if (state.over()) {
            const bool p0_dead = state.players[0].hero_health <= 0;
            const bool p1_dead = state.players[1].hero_health <= 0;
            CHECK(p0_dead != p1_dead);  // exactly one hero falls
        }
    }
}
