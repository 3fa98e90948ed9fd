#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <mesb/card.hpp>
#include <mesb/deck.hpp>
#include <mesb/error.hpp>
#include <mesb/rng.hpp>

#include "test_support.hpp"

using namespace mesb;
using namespace mesbtest;

namespace {

std::map<CardIndex, int> counts_of(const Deck& deck) {
    std::map<CardIndex, int> counts;
    for (CardIndex c : deck.cards) counts[c]++;
    return counts;
}

bool has_violation(const std::vector<DeckViolation>& violations, const std::string& message) {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const DeckViolation& v) { return v.message == message; });
}

// Textbook two-pass variance, independent of the streaming formula.
BehaviorVector two_pass_behavior(const Deck& deck, const CardCatalog& catalog) {
    double mean = 0.0;
    for (CardIndex c : deck.cards) mean += catalog.card(c).mana_cost;
    mean /= static_cast<double>(deck.cards.size());
    double var = 0.0;
    for (CardIndex c : deck.cards) {
        const double d = catalog.card(c).mana_cost - mean;
        var += d * d;
    }
    var /= static_cast<double>(deck.cards.size());
    return {mean, var};
}

} // namespace

TEST_CASE("a catalog at exact capacity forces the one legal deck") {
    auto catalog = forced_catalog();
    REQUIRE(catalog.capacity() == kDeckSize);

    Rng rng(3);
    const Deck deck = random_deck(catalog, rng);
    REQUIRE(deck.cards.size() == kDeckSize);
    CHECK(is_valid_deck(deck, catalog));
    for (const auto& [index, count] : counts_of(deck)) CHECK(count == 2);
    CHECK(counts_of(deck).size() == 15);

    // mutation has nowhere to go either
    for (int i = 0; i < 500; ++i) {
        CHECK(mutate_deck(deck, catalog, rng) == deck);
    }
}

TEST_CASE("a catalog below deck size cannot deal") {
    std::vector<Card> cards;
    for (int i = 0; i < 14; ++i) cards.push_back(make_minion("m" + std::to_string(i), 1, 1, 1));
    cards.push_back(make_minion("boss", 5, 9, 9, false, false, true));
    CardCatalog catalog(std::move(cards));
    REQUIRE(catalog.capacity() == 29);

    Rng rng(4);
    CHECK_THROWS_WITH_AS(random_deck(catalog, rng),
                         doctest::Contains("capacity 29 < 30"), Error);
    CHECK_THROWS_WITH_AS(mutate_deck(Deck{}, catalog, rng),
                         doctest::Contains("capacity 29 < 30"), Error);

    auto fillable = forced_catalog();
    CHECK_THROWS_WITH_AS(mutate_deck(Deck{}, fillable, rng),
                         doctest::Contains("cannot mutate a deck of 0 cards"), Error);
}

TEST_CASE("random decks always respect the invariants") {
    auto catalog = CardCatalog::load_file(data_path("catalog60.json"));
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const Deck deck = random_deck(catalog, rng);
        REQUIRE(validate_deck(deck, catalog).empty());
        REQUIRE(std::is_sorted(deck.cards.begin(), deck.cards.end()));
    }
}

TEST_CASE("swap counts follow the halving law") {
    Rng rng(12);
    std::map<int, int> histogram;
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) histogram[draw_swap_count(rng)]++;

    for (const auto& [k, count] : histogram) {
        REQUIRE(k >= 1);
        REQUIRE(k <= MutationConfig{}.max_k);
    }
    CHECK(std::abs(histogram[1] / static_cast<double>(draws) - 0.5) <= 0.005);
    CHECK(std::abs(histogram[2] / static_cast<double>(draws) - 0.25) <= 0.005);
    CHECK(std::abs(histogram[3] / static_cast<double>(draws) - 0.125) <= 0.004);

    // residual tail mass collapses onto max_k
    MutationConfig capped;
    capped.max_k = 3;
    std::map<int, int> capped_hist;
    for (int i = 0; i < draws; ++i) capped_hist[draw_swap_count(rng, capped)]++;
    REQUIRE(capped_hist.rbegin()->first == 3);
    CHECK(std::abs(capped_hist[1] / static_cast<double>(draws) - 0.5) <= 0.005);
    CHECK(std::abs(capped_hist[2] / static_cast<double>(draws) - 0.25) <= 0.005);
    CHECK(std::abs(capped_hist[3] / static_cast<double>(draws) - 0.25) <= 0.005);
}

TEST_CASE("mutation chains never leave the valid deck space") {
    auto catalog = CardCatalog::load_file(data_path("catalog60.json"));
    Rng rng(21);
    Deck deck = random_deck(catalog, rng);
    for (int i = 0; i < 20000; ++i) {
        deck = mutate_deck(deck, catalog, rng);
        REQUIRE(validate_deck(deck, catalog).empty());
        if (i % 10 == 9) deck = random_deck(catalog, rng);  // fresh starting points
    }
}

TEST_CASE("mutation is deterministic under a fixed seed") {
    auto catalog = CardCatalog::load_file(data_path("catalog60.json"));
    Rng seed_rng(8);
    const Deck parent = random_deck(catalog, seed_rng);
    Rng a(505);
    Rng b(505);
    for (int i = 0; i < 50; ++i) {
        CHECK(mutate_deck(parent, catalog, a) == mutate_deck(parent, catalog, b));
    }
}

TEST_CASE("behavior descriptors match the worked examples") {
    std::vector<Card> flat;
    for (int i = 0; i < 15; ++i) flat.push_back(make_minion("c" + std::to_string(i), 2, 1, 1));
    CardCatalog all_twos(std::move(flat));
    Rng rng(1);
    const Deck twos = random_deck(all_twos, rng);
    CHECK(behavior_of(twos, all_twos) == BehaviorVector{2.0, 0.0});

    std::vector<Card> split;
    for (int i = 0; i < 8; ++i) split.push_back(make_minion("low" + std::to_string(i), 1, 1, 1));
    for (int i = 0; i < 8; ++i) split.push_back(make_minion("high" + std::to_string(i), 3, 1, 1));
    CardCatalog two_costs(std::move(split));
    std::vector<std::pair<CardIndex, int>> picks;
    for (CardIndex i = 0; i < 7; ++i) picks.push_back({i, 2});
    picks.push_back({7, 1});
    for (CardIndex i = 8; i < 15; ++i) picks.push_back({i, 2});
    picks.push_back({15, 1});
    const Deck half = deck_from_counts(picks);
    REQUIRE(validate_deck(half, two_costs).empty());
    CHECK(behavior_of(half, two_costs) == BehaviorVector{2.0, 1.0});
}

TEST_CASE("streaming and two-pass variance agree to 1e-12") {
    auto catalog = CardCatalog::load_file(data_path("catalog60.json"));
    Rng rng(99);
    for (int i = 0; i < 1000; ++i) {
        const Deck deck = random_deck(catalog, rng);
        const BehaviorVector fast = behavior_of(deck, catalog);
        const BehaviorVector slow = two_pass_behavior(deck, catalog);
        REQUIRE(std::abs(fast[0] - slow[0]) <= 1e-12);
        REQUIRE(std::abs(fast[1] - slow[1]) <= 1e-12);
        REQUIRE(fast[0] >= 0.0);
        REQUIRE(fast[0] <= kMaxManaCost);
        REQUIRE(fast[1] >= 0.0);
        REQUIRE(fast[1] <= 25.0);  // half the range squared

        // the shared integer-sum formula is the same code path bit for bit
        long long sum = 0;
        long long sum_sq = 0;
        for (CardIndex c : deck.cards) {
            const long long cost = catalog.card(c).mana_cost;
            sum += cost;
            sum_sq += cost * cost;
        }
        REQUIRE(behavior_from_sums(sum, sum_sq, kDeckSize) == fast);
    }
}

TEST_CASE("deck validation reports every violation by name") {
    auto catalog = forced_catalog();
    Rng rng(2);
    Deck deck = random_deck(catalog, rng);

    Deck small = deck;
    small.cards.pop_back();
    CHECK(has_violation(validate_deck(small, catalog), "deck has 29 cards, expected 30"));

    Deck unknown = deck;
    unknown.cards[0] = 999;
    unknown.canonicalize();
    CHECK(has_violation(validate_deck(unknown, catalog), "unknown card index 999"));

    Deck triple = deck;
    triple.cards[29] = triple.cards[0];
    triple.canonicalize();
    CHECK(has_violation(validate_deck(triple, catalog),
                        "card 'm0' appears 3 times (limit 2)"));

    std::vector<Card> with_boss;
    for (int i = 0; i < 15; ++i) with_boss.push_back(make_minion("m" + std::to_string(i), 1, 1, 1));
    with_boss.push_back(make_minion("boss", 5, 9, 9, false, false, true));
    CardCatalog legendary_catalog(std::move(with_boss));
    std::vector<std::pair<CardIndex, int>> picks;
    for (CardIndex i = 0; i < 14; ++i) picks.push_back({i, 2});
    picks.push_back({15, 2});
    const Deck doubled = deck_from_counts(picks);
    CHECK(has_violation(validate_deck(doubled, legendary_catalog),
                        "card 'boss' appears 2 times (limit 1)"));
    CHECK_FALSE(is_valid_deck(doubled, legendary_catalog));
}

TEST_CASE("decks are canonical multisets") {
    Deck shuffled;
    shuffled.cards = {4, 2, 2, 9, 0};
    shuffled.canonicalize();
    CHECK(shuffled.cards == std::vector<CardIndex>{0, 2, 2, 4, 9});

    Deck other;
    other.cards = {2, 0, 9, 2, 4};
    other.canonicalize();
    CHECK(shuffled == other);
}

TEST_CASE("any deck reaches any other deck through valid single swaps") {
    auto catalog = CardCatalog::load_file(data_path("catalog60.json"));
    Rng rng(42);
    for (int round = 0; round < 50; ++round) {
        const Deck from = random_deck(catalog, rng);
        const Deck to = random_deck(catalog, rng);

        Deck current = from;
        int steps = 0;
        while (!(current == to)) {
            auto current_counts = counts_of(current);
            auto target_counts = counts_of(to);
            CardIndex surplus = 0;
            CardIndex deficit = 0;
            for (const auto& [idx, n] : current_counts) {
                if (n > target_counts[idx]) surplus = idx;
            }
            for (const auto& [idx, n] : target_counts) {
                if (n > current_counts[idx]) deficit = idx;
            }
            auto it = std::find(current.cards.begin(), current.cards.end(), surplus);
            REQUIRE(it != current.cards.end());
            *it = deficit;
            current.canonicalize();
            ++steps;
            REQUIRE(steps <= kDeckSize);
            REQUIRE(validate_deck(current, catalog).empty());
        }
    }
}

TEST_CASE("deck id round trips need the catalog") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    Rng rng(17);
    const Deck deck = random_deck(catalog, rng);

    const auto ids = deck_to_ids(deck, catalog);
    REQUIRE(ids.size() == kDeckSize);
    CHECK(deck_from_ids(ids, catalog) == deck);

    auto reversed = ids;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(deck_from_ids(reversed, catalog) == deck);

    CHECK_THROWS_WITH_AS(deck_from_ids({"no_such_card"}, catalog),
                         doctest::Contains("unknown card id"), Error);
}

TEST_CASE("deck files skip comments and validate their contents") {
    auto catalog = CardCatalog::load_file(data_path("catalog30.json"));
    Rng rng(23);
    const Deck deck = random_deck(catalog, rng);
    TempDir dir("deckio");

    std::string text = "# opponent pool entry\n\n";
    for (const auto& id : deck_to_ids(deck, catalog)) text += id + "\r\n";
    {
        std::ofstream out(dir.file("good.deck"), std::ios::binary);
        out << text;
    }
    CHECK(load_deck_file(dir.file("good.deck"), catalog) == deck);

    CHECK_THROWS_WITH_AS(load_deck_file(dir.file("absent.deck"), catalog),
                         doctest::Contains("cannot open deck file"), Error);
    try {
        load_deck_file(dir.file("absent.deck"), catalog);
    } catch (const Error& e) {
        CHECK(e.error_class() == ErrorClass::Io);
    }

    {
        std::ofstream out(dir.file("short.deck"));
        for (int i = 0; i < 29; ++i) out << catalog.id_of(0) << "\n";
    }
    CHECK_THROWS_WITH_AS(load_deck_file(dir.file("short.deck"), catalog),
                         doctest::Contains("short.deck"), Error);
    try {
        load_deck_file(dir.file("short.deck"), catalog);
    } catch (const Error& e) {
        CHECK(e.error_class() == ErrorClass::Validation);
    }

    const auto starter = load_deck_file(data_path("decks/starter_aggro.deck"), catalog);
    CHECK(validate_deck(starter, catalog).empty());
}
