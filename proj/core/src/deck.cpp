#include "mesb/deck.hpp"

#include <algorithm>
#include <fstream>

#include "mesb/error.hpp"

namespace mesb {

namespace {

void require_fillable(const CardCatalog& catalog) {
    if (catalog.capacity() < kDeckSize) {
        throw Error::validation("catalog cannot fill a deck: capacity " +
                                std::to_string(catalog.capacity()) + " < " +
                                std::to_string(kDeckSize));
    }
}

} // namespace

void Deck::canonicalize() {
    std::sort(cards.begin(), cards.end());
}

Deck random_deck(const CardCatalog& catalog, Rng& rng) {
    require_fillable(catalog);
    std::vector<int> remaining(catalog.size());
    std::vector<CardIndex> open;  // ids with allowance left
    open.reserve(catalog.size());
    for (CardIndex i = 0; i < catalog.size(); ++i) {
        remaining[i] = catalog.copy_limit(i);
        open.push_back(i);
    }

    Deck deck;
    deck.cards.reserve(kDeckSize);
    while (deck.cards.size() < kDeckSize) {
        const std::size_t pick = rng.index(open.size());
        const CardIndex card = open[pick];
        deck.cards.push_back(card);
        if (--remaining[card] == 0) {
            open[pick] = open.back();
            open.pop_back();
        }
    }
    deck.canonicalize();
    return deck;
}

int draw_swap_count(Rng& rng, const MutationConfig& config) {
    int k = 1;
    while (k < config.max_k && rng.coin()) ++k;
    return k;
}

Deck mutate_deck(const Deck& deck, const CardCatalog& catalog, Rng& rng,
                 const MutationConfig& config) {
    require_fillable(catalog);
    if (deck.cards.size() != static_cast<std::size_t>(kDeckSize)) {
        throw Error::validation("cannot mutate a deck of " + std::to_string(deck.cards.size()) +
                                " cards, expected " + std::to_string(kDeckSize));
    }
    const int k = draw_swap_count(rng, config);

    Deck out = deck;
    // Remove k uniformly chosen instances.
    for (int i = 0; i < k; ++i) {
        const std::size_t pos = rng.index(out.cards.size());
        out.cards[pos] = out.cards.back();
        out.cards.pop_back();
    }

    std::vector<int> multiplicity(catalog.size(), 0);
    for (CardIndex c : out.cards) ++multiplicity[c];

    // Insert k uniform picks; resample any pick that would bust a copy limit.
    for (int i = 0; i < k; ++i) {
        for (;;) {
            const CardIndex card = static_cast<CardIndex>(rng.index(catalog.size()));
            if (multiplicity[card] < catalog.copy_limit(card)) {
                out.cards.push_back(card);
                ++multiplicity[card];
                break;
            }
        }
    }
    out.canonicalize();
    return out;
}

BehaviorVector behavior_of(const Deck& deck, const CardCatalog& catalog) {
    long long sum = 0;
    long long sum_sq = 0;
    for (CardIndex c : deck.cards) {
        const long long cost = catalog.card(c).mana_cost;
        sum += cost;
        sum_sq += cost * cost;
    }
    return behavior_from_sums(sum, sum_sq, static_cast<int>(deck.cards.size()));
}

BehaviorVector behavior_from_sums(long long sum, long long sum_sq, int deck_size) {
    const double n = static_cast<double>(deck_size);
    const double mean = static_cast<double>(sum) / n;
    const double variance = std::max(0.0, static_cast<double>(sum_sq) / n - mean * mean);
    return {mean, variance};
}

std::vector<DeckViolation> validate_deck(const Deck& deck, const CardCatalog& catalog) {
    std::vector<DeckViolation> out;
    if (deck.cards.size() != kDeckSize) {
        out.push_back({"deck has " + std::to_string(deck.cards.size()) + " cards, expected " +
                       std::to_string(kDeckSize)});
    }
    std::vector<int> multiplicity(catalog.size(), 0);
    for (CardIndex c : deck.cards) {
        if (c >= catalog.size()) {
            out.push_back({"unknown card index " + std::to_string(c)});
            continue;
        }
        ++multiplicity[c];
    }
    for (CardIndex c = 0; c < catalog.size(); ++c) {
        if (multiplicity[c] > catalog.copy_limit(c)) {
            out.push_back({"card '" + catalog.id_of(c) + "' appears " +
                           std::to_string(multiplicity[c]) + " times (limit " +
                           std::to_string(catalog.copy_limit(c)) + ")"});
        }
    }
    return out;
}

bool is_valid_deck(const Deck& deck, const CardCatalog& catalog) {
    return validate_deck(deck, catalog).empty();
}

std::vector<std::string> deck_to_ids(const Deck& deck, const CardCatalog& catalog) {
    std::vector<std::string> ids;
    ids.reserve(deck.cards.size());
    for (CardIndex c : deck.cards) ids.push_back(catalog.id_of(c));
    return ids;
}

Deck deck_from_ids(const std::vector<std::string>& ids, const CardCatalog& catalog) {
    Deck deck;
    deck.cards.reserve(ids.size());
    for (const auto& id : ids) deck.cards.push_back(catalog.index_of(id));
    deck.canonicalize();
    return deck;
}

Deck load_deck_file(const std::string& path, const CardCatalog& catalog) {
    std::ifstream in(path);
    if (!in) {
        throw Error::io("cannot open deck file: " + path);
    }
    std::vector<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        ids.push_back(line);
    }
    Deck deck = deck_from_ids(ids, catalog);
    if (auto violations = validate_deck(deck, catalog); !violations.empty()) {
        throw Error::validation("deck file " + path + ": " + violations.front().message);
    }
    return deck;
}

} // namespace mesb
