#pragma once

#include <array>
#include <cstdint>

#include <boost/container/small_vector.hpp>
#include <boost/container/static_vector.hpp>

#include "mesb/card.hpp"
#include "mesb/deck.hpp"

namespace mesb {

inline constexpr int kHeroHealth = 30;
inline constexpr int kMaxHand = 10;
inline constexpr int kMaxBoard = 7;
inline constexpr int kMaxMana = 10;

struct Minion {
    CardIndex card = 0;
    std::int16_t attack = 0;
    std::int16_t health = 0;
    bool exhausted = false;
    bool taunt = false;
};

struct PlayerState {
    std::int16_t hero_health = kHeroHealth;
    std::int8_t mana_crystals = 0;
    std::int8_t current_mana = 0;
    std::int16_t fatigue = 0;  // escalating empty-deck draw damage
    boost::container::static_vector<CardIndex, kMaxHand> hand;
    boost::container::static_vector<CardIndex, kDeckSize> deck;  // back = next draw
    boost::container::static_vector<Minion, kMaxBoard> board;

    int board_attack_total() const;
    int board_health_total() const;
    bool has_taunt() const;
};

struct GameState {
    std::array<PlayerState, 2> players;
    std::int16_t turn_number = 1;  // full rounds, 1-based
    std::int8_t active = 0;

    PlayerState& active_player() { return players[active]; }
    const PlayerState& active_player() const { return players[active]; }
    PlayerState& opponent() { return players[1 - active]; }
    const PlayerState& opponent() const { return players[1 - active]; }
    bool over() const {
        return players[0].hero_health <= 0 || players[1].hero_health <= 0;
    }
};

enum class ActionType : std::uint8_t { PlayMinion, PlaySpell, Attack, EndTurn };

inline constexpr std::uint8_t kTargetHero = 0xFF;
inline constexpr std::uint8_t kTargetAll = 0xFE;

struct Action {
    ActionType type = ActionType::EndTurn;
    // PlayMinion/PlaySpell: a = hand index. Attack: a = attacker board index.
    std::uint8_t a = 0;
    // PlaySpell: enemy board index, kTargetHero or kTargetAll.
    // Attack: enemy board index or kTargetHero.
    std::uint8_t b = 0;

    bool operator==(const Action&) const = default;
};

using ActionList = boost::container::small_vector<Action, 32>;
using ActionSequence = boost::container::small_vector<Action, 24>;

/// Every atomic action the active player may take, in a fixed deterministic
/// order: card plays by hand index (targets: hero, then board order), attacks
/// by attacker then target, end-turn last. Taunt minions must be attacked
/// before anything else. Throws if the game is over.
ActionList legal_actions(const GameState& state, const CardCatalog& catalog);

/// Applies one action in place. Minion combat is simultaneous; dead minions
/// are swept. End-turn hands priority over: the new active player gains a
/// mana crystal (cap 10), refills mana, readies minions and draws (empty deck
/// escalates fatigue damage). Throws on an illegal action.
void apply_action(GameState& state, const Action& action, const CardCatalog& catalog);

/// Shuffles both decks with the seeded source, deals 3 cards to the first
/// player and 4 to the second, then starts the first player's turn.
GameState setup_game(const Deck& first, const Deck& second, const CardCatalog& catalog, Rng& rng);

/// Full canonical byte encoding of a state; two states encode equally iff
/// they are identical field-for-field.
using StateEncoding = boost::container::static_vector<unsigned char, 320>;
StateEncoding encode_state(const GameState& state);
std::uint64_t state_hash(const GameState& state);

} // namespace mesb
