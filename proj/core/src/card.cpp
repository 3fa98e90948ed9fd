#include "mesb/card.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mesb/error.hpp"
#include "mesb/rng.hpp"

namespace mesb {

namespace {

using nlohmann::json;

bool valid_id(const std::string& id) {
    if (id.empty()) return false;
    for (char c : id) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    }
    return true;
}

void check_card(const Card& c) {
    if (!valid_id(c.id)) {
        throw Error::validation("card id '" + c.id + "' must be non-empty [A-Za-z0-9_-]");
    }
    if (c.mana_cost < 0 || c.mana_cost > kMaxManaCost) {
        throw Error::validation("card '" + c.id + "': mana_cost must be in 0..10");
    }
    if (c.kind == CardKind::Minion) {
        if (c.spell.has_value()) {
            throw Error::validation("card '" + c.id + "': minions cannot carry a spell_effect");
        }
        if (c.attack < 0) throw Error::validation("card '" + c.id + "': attack must be >= 0");
        if (c.health < 1) throw Error::validation("card '" + c.id + "': health must be >= 1");
    } else {
        if (!c.spell.has_value()) {
            throw Error::validation("card '" + c.id + "': spells need a spell_effect");
        }
        if (c.spell->damage < 1) {
            throw Error::validation("card '" + c.id + "': spell damage must be >= 1");
        }
        if (c.taunt || c.charge) {
            throw Error::validation("card '" + c.id + "': spells cannot have minion keywords");
        }
    }
}

SpellTarget parse_target(const std::string& s, const std::string& card_id) {
    if (s == "enemy-hero") return SpellTarget::EnemyHero;
    if (s == "enemy-minion") return SpellTarget::EnemyMinion;
    if (s == "all-enemy-minions") return SpellTarget::AllEnemyMinions;
    throw Error::validation("card '" + card_id + "': unknown spell target '" + s + "'");
}

const char* target_name(SpellTarget t) {
    switch (t) {
        case SpellTarget::EnemyHero: return "enemy-hero";
        case SpellTarget::EnemyMinion: return "enemy-minion";
        case SpellTarget::AllEnemyMinions: return "all-enemy-minions";
    }
    return "?";
}

Card card_from_json(const json& j) {
    Card c;
    c.id = j.at("id").get<std::string>();
    c.name = j.value("name", c.id);
    c.mana_cost = j.at("mana_cost").get<int>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "minion") {
        c.kind = CardKind::Minion;
        c.attack = j.at("attack").get<int>();
        c.health = j.at("health").get<int>();
    } else if (kind == "spell") {
        c.kind = CardKind::Spell;
        const auto& e = j.at("spell_effect");
        SpellEffect fx;
        fx.damage = e.at("damage").get<int>();
        fx.target = parse_target(e.at("target").get<std::string>(), c.id);
        c.spell = fx;
    } else {
        throw Error::validation("card '" + c.id + "': unknown kind '" + kind + "'");
    }
    for (const auto& kw : j.value("keywords", json::array())) {
        const std::string k = kw.get<std::string>();
        if (k == "taunt") c.taunt = true;
        else if (k == "charge") c.charge = true;
        else throw Error::validation("card '" + c.id + "': unknown keyword '" + k + "'");
    }
    c.legendary = j.value("legendary", false);
    return c;
}

json card_to_json(const Card& c) {
    json j;
    j["id"] = c.id;
    j["name"] = c.name;
    j["mana_cost"] = c.mana_cost;
    if (c.kind == CardKind::Minion) {
        j["kind"] = "minion";
        j["attack"] = c.attack;
        j["health"] = c.health;
    } else {
        j["kind"] = "spell";
        j["spell_effect"] = {{"damage", c.spell->damage}, {"target", target_name(c.spell->target)}};
    }
    json keywords = json::array();
    if (c.taunt) keywords.push_back("taunt");
    if (c.charge) keywords.push_back("charge");
    j["keywords"] = keywords;
    j["legendary"] = c.legendary;
    return j;
}

} // namespace

CardCatalog::CardCatalog(std::vector<Card> cards) : cards_(std::move(cards)) {
    if (cards_.empty()) {
        throw Error::validation("card catalog must not be empty");
    }
    if (cards_.size() > 60000) {
        throw Error::validation("card catalog too large");
    }
    for (std::size_t i = 0; i < cards_.size(); ++i) {
        check_card(cards_[i]);
        auto [it, fresh] = index_.emplace(cards_[i].id, static_cast<CardIndex>(i));
        if (!fresh) {
            throw Error::validation("duplicate card id '" + cards_[i].id + "'");
        }
    }
}

CardCatalog CardCatalog::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error::io("cannot open catalog file: " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

CardCatalog CardCatalog::parse_json(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error::validation("catalog " + origin + ": " + e.what());
    }
    if (!doc.is_array()) {
        throw Error::validation("catalog " + origin + ": expected a top-level array of card records");
    }
    std::vector<Card> cards;
    cards.reserve(doc.size());
    try {
        for (const auto& j : doc) cards.push_back(card_from_json(j));
    } catch (const json::exception& e) {
        throw Error::validation("catalog " + origin + ": " + e.what());
    }
    return CardCatalog(std::move(cards));
}

std::string CardCatalog::to_json() const {
    json doc = json::array();
    for (const auto& c : cards_) doc.push_back(card_to_json(c));
    return doc.dump(2) + "\n";
}

void CardCatalog::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
        throw Error::io("cannot write catalog file: " + path);
    }
    out << to_json();
}

int CardCatalog::capacity() const {
    int total = 0;
    for (CardIndex i = 0; i < cards_.size(); ++i) total += copy_limit(i);
    return total;
}

CardIndex CardCatalog::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw Error::validation("unknown card id '" + id + "'");
    }
    return it->second;
}

std::uint64_t CardCatalog::content_hash() const {
    return fnv1a64(to_json());
}

} // namespace mesb
