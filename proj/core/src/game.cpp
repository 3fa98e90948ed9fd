#include "mesb/game.hpp"

#include <algorithm>

#include "mesb/error.hpp"
#include "mesb/rng.hpp"

namespace mesb {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw Error::validation(std::string("illegal action: ") + what);
}

void sweep_dead(PlayerState& player) {
    auto& board = player.board;
    auto it = std::remove_if(board.begin(), board.end(),
                             [](const Minion& m) { return m.health <= 0; });
    board.erase(it, board.end());
}

void draw_card(PlayerState& player) {
    if (player.deck.empty()) {
        player.fatigue += 1;
        player.hero_health -= player.fatigue;
        return;
    }
    CardIndex card = player.deck.back();
    player.deck.pop_back();
    if (player.hand.size() < kMaxHand) player.hand.push_back(card);
    // A full hand burns the drawn card.
}

void begin_turn(GameState& state) {
    PlayerState& p = state.active_player();
    p.mana_crystals = static_cast<std::int8_t>(std::min(kMaxMana, p.mana_crystals + 1));
    p.current_mana = p.mana_crystals;
    for (Minion& m : p.board) m.exhausted = false;
    draw_card(p);
}

void resolve_attack(GameState& state, std::uint8_t attacker_index, std::uint8_t target) {
    PlayerState& own = state.active_player();
    PlayerState& opp = state.opponent();
    require(attacker_index < own.board.size(), "no such attacker");
    Minion& attacker = own.board[attacker_index];
    require(!attacker.exhausted, "attacker is exhausted");
    require(attacker.attack >= 1, "attacker has no attack");

    if (target == kTargetHero) {
        require(!opp.has_taunt(), "taunt must be attacked first");
        opp.hero_health -= attacker.attack;
        attacker.exhausted = true;
        return;
    }

    require(target < opp.board.size(), "no such target");
    Minion& defender = opp.board[target];
    require(!opp.has_taunt() || defender.taunt, "taunt must be attacked first");
    defender.health -= attacker.attack;
    attacker.health -= defender.attack;
    attacker.exhausted = true;
    sweep_dead(own);
    sweep_dead(opp);
}

void resolve_spell(GameState& state, const Card& card, std::uint8_t target) {
    PlayerState& opp = state.opponent();
    const SpellEffect& effect = *card.spell;
    switch (effect.target) {
      case SpellTarget::EnemyHero:
        require(target == kTargetHero, "spell targets the enemy hero");
        opp.hero_health -= effect.damage;
        break;
      case SpellTarget::EnemyMinion:
        require(target < opp.board.size(), "spell needs an enemy minion");
        opp.board[target].health -= effect.damage;
        sweep_dead(opp);
        break;
      case SpellTarget::AllEnemyMinions:
        require(target == kTargetAll, "spell hits all enemy minions");
        for (Minion& m : opp.board) m.health -= effect.damage;
        sweep_dead(opp);
        break;
    }
}

} // namespace

int PlayerState::board_attack_total() const {
    int total = 0;
    for (const Minion& m : board) total += m.attack;
    return total;
}

int PlayerState::board_health_total() const {
    int total = 0;
    for (const Minion& m : board) total += m.health;
    return total;
}

bool PlayerState::has_taunt() const {
    return std::any_of(board.begin(), board.end(),
                       [](const Minion& m) { return m.taunt; });
}

ActionList legal_actions(const GameState& state, const CardCatalog& catalog) {
    if (state.over()) throw Error::internal("legal_actions on a finished game");

    ActionList actions;
    const PlayerState& own = state.active_player();
    const PlayerState& opp = state.opponent();

    for (std::uint8_t h = 0; h < own.hand.size(); ++h) {
        const Card& card = catalog.card(own.hand[h]);
        if (card.mana_cost > own.current_mana) continue;
        if (card.kind == CardKind::Minion) {
            if (own.board.size() < kMaxBoard)
                actions.push_back({ActionType::PlayMinion, h, 0});
            continue;
        }
        switch (card.spell->target) {
          case SpellTarget::EnemyHero:
            actions.push_back({ActionType::PlaySpell, h, kTargetHero});
            break;
          case SpellTarget::EnemyMinion:
            for (std::uint8_t t = 0; t < opp.board.size(); ++t)
                actions.push_back({ActionType::PlaySpell, h, t});
            break;
          case SpellTarget::AllEnemyMinions:
            actions.push_back({ActionType::PlaySpell, h, kTargetAll});
            break;
        }
    }

    const bool taunt_wall = opp.has_taunt();
    for (std::uint8_t i = 0; i < own.board.size(); ++i) {
        const Minion& m = own.board[i];
        if (m.exhausted || m.attack < 1) continue;
        if (!taunt_wall) actions.push_back({ActionType::Attack, i, kTargetHero});
        for (std::uint8_t t = 0; t < opp.board.size(); ++t) {
            if (taunt_wall && !opp.board[t].taunt) continue;
            actions.push_back({ActionType::Attack, i, t});
        }
    }

    actions.push_back({ActionType::EndTurn, 0, 0});
    return actions;
}

void apply_action(GameState& state, const Action& action, const CardCatalog& catalog) {
    if (state.over()) throw Error::validation("illegal action: game is over");
    PlayerState& own = state.active_player();

    switch (action.type) {
      case ActionType::PlayMinion:
      case ActionType::PlaySpell: {
        require(action.a < own.hand.size(), "no such hand card");
        const Card& card = catalog.card(own.hand[action.a]);
        require(card.mana_cost <= own.current_mana, "not enough mana");
        if (action.type == ActionType::PlayMinion) {
            require(card.kind == CardKind::Minion, "card is not a minion");
            require(own.board.size() < kMaxBoard, "board is full");
            own.current_mana = static_cast<std::int8_t>(own.current_mana - card.mana_cost);
            own.hand.erase(own.hand.begin() + action.a);
            own.board.push_back({catalog.index_of(card.id),
                                 static_cast<std::int16_t>(card.attack),
                                 static_cast<std::int16_t>(card.health),
                                 !card.charge, card.taunt});
        } else {
            require(card.kind == CardKind::Spell, "card is not a spell");
            own.current_mana = static_cast<std::int8_t>(own.current_mana - card.mana_cost);
            own.hand.erase(own.hand.begin() + action.a);
            resolve_spell(state, card, action.b);
        }
        break;
      }
      case ActionType::Attack:
        resolve_attack(state, action.a, action.b);
        break;
      case ActionType::EndTurn:
        if (state.active == 1) state.turn_number += 1;
        state.active = static_cast<std::int8_t>(1 - state.active);
        begin_turn(state);
        break;
    }
}

GameState setup_game(const Deck& first, const Deck& second, const CardCatalog& catalog, Rng& rng) {
    if (first.cards.size() != kDeckSize || second.cards.size() != kDeckSize)
        throw Error::validation("setup_game requires full decks");

    GameState state;
    const Deck* decks[2] = {&first, &second};
    for (int p = 0; p < 2; ++p) {
        PlayerState& player = state.players[p];
        for (CardIndex card : decks[p]->cards) {
            if (card >= catalog.size())
                throw Error::validation("deck card index out of catalog range");
            player.deck.push_back(card);
        }
        rng.shuffle(player.deck);
    }
    for (int i = 0; i < 3; ++i) draw_card(state.players[0]);
    for (int i = 0; i < 4; ++i) draw_card(state.players[1]);
    begin_turn(state);
    return state;
}

StateEncoding encode_state(const GameState& state) {
    StateEncoding bytes;
    auto put8 = [&bytes](std::uint8_t v) { bytes.push_back(v); };
    auto put16 = [&bytes](std::uint16_t v) {
        bytes.push_back(static_cast<unsigned char>(v & 0xFF));
        bytes.push_back(static_cast<unsigned char>(v >> 8));
    };

    put8(static_cast<std::uint8_t>(state.active));
    put16(static_cast<std::uint16_t>(state.turn_number));
    for (const PlayerState& p : state.players) {
        put16(static_cast<std::uint16_t>(p.hero_health));
        put8(static_cast<std::uint8_t>(p.mana_crystals));
        put8(static_cast<std::uint8_t>(p.current_mana));
        put16(static_cast<std::uint16_t>(p.fatigue));
        put8(static_cast<std::uint8_t>(p.hand.size()));
        for (CardIndex card : p.hand) put16(card);
        put8(static_cast<std::uint8_t>(p.deck.size()));
        for (CardIndex card : p.deck) put16(card);
        put8(static_cast<std::uint8_t>(p.board.size()));
        for (const Minion& m : p.board) {
            put16(m.card);
            put16(static_cast<std::uint16_t>(m.attack));
            put16(static_cast<std::uint16_t>(m.health));
            put8(static_cast<std::uint8_t>((m.exhausted ? 1 : 0) | (m.taunt ? 2 : 0)));
        }
    }
    return bytes;
}

std::uint64_t state_hash(const GameState& state) {
    StateEncoding bytes = encode_state(state);
    return fnv1a64(bytes.data(), bytes.size());
}

} // namespace mesb
