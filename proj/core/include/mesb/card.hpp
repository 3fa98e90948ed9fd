#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace mesb {

using CardIndex = std::uint16_t;

inline constexpr int kMaxManaCost = 10;

enum class CardKind : std::uint8_t { Minion, Spell };

enum class SpellTarget : std::uint8_t {
    EnemyHero,
    EnemyMinion,      // caster picks one enemy minion
    AllEnemyMinions,  // hits every enemy minion
};

struct SpellEffect {
    int damage = 1;
    SpellTarget target = SpellTarget::EnemyHero;

    bool operator==(const SpellEffect&) const = default;
};

struct Card {
    std::string id;
    std::string name;
    int mana_cost = 0;  // 0..10
    CardKind kind = CardKind::Minion;
    int attack = 0;     // minions only
    int health = 1;     // minions only
    bool taunt = false;
    bool charge = false;
    std::optional<SpellEffect> spell;  // spells only
    bool legendary = false;

    bool operator==(const Card&) const = default;
};

/// Immutable card pool. Cards are addressed internally by dense index; ids
/// are stable strings used by every file format.
class CardCatalog {
public:
    CardCatalog() = default;
    explicit CardCatalog(std::vector<Card> cards);

    static CardCatalog load_file(const std::string& path);
    static CardCatalog parse_json(const std::string& text, const std::string& origin = "<memory>");
    std::string to_json() const;
    void save_file(const std::string& path) const;

    std::size_t size() const { return cards_.size(); }
    const Card& card(CardIndex i) const { return cards_.at(i); }
    const std::vector<Card>& cards() const { return cards_; }

    int copy_limit(CardIndex i) const { return cards_.at(i).legendary ? 1 : 2; }

    /// Sum of copy limits; the largest deck the catalog can fill.
    int capacity() const;

    bool has_id(const std::string& id) const { return index_.count(id) > 0; }
    CardIndex index_of(const std::string& id) const;
    const std::string& id_of(CardIndex i) const { return cards_.at(i).id; }

    /// Hash of the canonical content; recorded in snapshots and density grids
    /// so mismatched catalog/artifact pairs are detectable.
    std::uint64_t content_hash() const;

private:
    std::vector<Card> cards_;
    std::unordered_map<std::string, CardIndex> index_;
};

} // namespace mesb
