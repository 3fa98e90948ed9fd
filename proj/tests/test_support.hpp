#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <mesb/card.hpp>
#include <mesb/deck.hpp>

namespace mesbtest {

inline std::string data_path(const std::string& name) {
    return std::string(MESB_DATA_DIR) + "/" + name;
}

/// Unique scratch directory under the system temp root, removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        auto root = std::filesystem::temp_directory_path();
        std::mt19937_64 rng(std::random_device{}());
        path_ = root / ("mesb-" + tag + "-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string str() const { return path_.string(); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline mesb::Card make_minion(std::string id, int cost, int attack, int health,
                              bool taunt = false, bool charge = false, bool legendary = false) {
    mesb::Card c;
    c.id = id;
    c.name = std::move(id);
    c.mana_cost = cost;
    c.kind = mesb::CardKind::Minion;
    c.attack = attack;
    c.health = health;
    c.taunt = taunt;
    c.charge = charge;
    c.legendary = legendary;
    return c;
}

inline mesb::Card make_spell(std::string id, int cost, int damage, mesb::SpellTarget target,
                             bool legendary = false) {
    mesb::Card c;
    c.id = id;
    c.name = std::move(id);
    c.mana_cost = cost;
    c.kind = mesb::CardKind::Spell;
    c.spell = mesb::SpellEffect{damage, target};
    c.legendary = legendary;
    return c;
}

/// n distinct vanilla minions, costs cycling 0..10. Capacity 2n.
inline mesb::CardCatalog plain_catalog(int n) {
    std::vector<mesb::Card> cards;
    for (int i = 0; i < n; ++i) {
        cards.push_back(make_minion("m" + std::to_string(i), i % (mesb::kMaxManaCost + 1), 2, 2));
    }
    return mesb::CardCatalog(std::move(cards));
}

/// 15 vanilla minions: capacity exactly 30, so the only legal deck is the
/// full catalog at two copies each.
inline mesb::CardCatalog forced_catalog() {
    return plain_catalog(15);
}

inline mesb::Deck deck_from_counts(const std::vector<std::pair<mesb::CardIndex, int>>& counts) {
    mesb::Deck d;
    for (const auto& [idx, n] : counts) {
        for (int i = 0; i < n; ++i) d.cards.push_back(idx);
    }
    d.canonicalize();
    return d;
}

} // namespace mesbtest
