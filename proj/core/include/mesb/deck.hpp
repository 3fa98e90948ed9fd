#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mesb/behavior.hpp"
#include "mesb/card.hpp"
#include "mesb/rng.hpp"

namespace mesb {

inline constexpr int kDeckSize = 30;

/// Fixed-size multiset of catalog card indices; canonical form is sorted
/// ascending, so decks equal as multisets compare equal.
struct Deck {
    std::vector<CardIndex> cards;  // size kDeckSize, sorted

    void canonicalize();
    bool operator==(const Deck&) const = default;
    auto operator<=>(const Deck&) const = default;
};

struct MutationConfig {
    /// Geometric law on the swap count k: Pr(k) = (1/2)^k for k = 1..max_k-1,
    /// with the residual tail mass at max_k.
    int max_k = kDeckSize;
};

struct DeckViolation {
    std::string message;
};

/// Samples one card at a time, uniformly over ids that still have copy
/// allowance, until the deck is full.
Deck random_deck(const CardCatalog& catalog, Rng& rng);

/// Geometric-k swap: remove k uniformly chosen card instances, insert k
/// uniform replacements, rejection-resampling any pick that would break a
/// copy limit.
Deck mutate_deck(const Deck& deck, const CardCatalog& catalog, Rng& rng,
                 const MutationConfig& config = {});

/// Draws the swap count alone (exposed for the distribution checks).
int draw_swap_count(Rng& rng, const MutationConfig& config = {});

/// A-priori behavior descriptor: (mean mana cost, population variance of
/// mana cost). Needs no game simulation.
BehaviorVector behavior_of(const Deck& deck, const CardCatalog& catalog);

/// The same descriptor from integer cost sums. Everything that bins decks
/// (behavior extraction, the exact-distribution dynamic program, oracles)
/// goes through this one formula so the doubles agree bit for bit.
BehaviorVector behavior_from_sums(long long sum, long long sum_sq, int deck_size);

/// Reports every violated deck invariant; empty means the deck is legal.
std::vector<DeckViolation> validate_deck(const Deck& deck, const CardCatalog& catalog);

bool is_valid_deck(const Deck& deck, const CardCatalog& catalog);

/// Deck literal form: the 30 card-id strings, in canonical order.
std::vector<std::string> deck_to_ids(const Deck& deck, const CardCatalog& catalog);
Deck deck_from_ids(const std::vector<std::string>& ids, const CardCatalog& catalog);

/// One id per line; used by opponent-pool deck files.
Deck load_deck_file(const std::string& path, const CardCatalog& catalog);

} // namespace mesb
