#include "mesb/balance.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mesb/error.hpp"

namespace mesb {

using nlohmann::json;

std::string field_name(CardField field) {
    switch (field) {
      case CardField::ManaCost: return "mana_cost";
      case CardField::Attack: return "attack";
      case CardField::Health: return "health";
    }
    throw Error::internal("bad card field");
}

CardField parse_field(const std::string& name) {
    if (name == "mana_cost") return CardField::ManaCost;
    if (name == "attack") return CardField::Attack;
    if (name == "health") return CardField::Health;
    throw Error::validation("unknown patch field: " + name);
}

BalancePatch BalancePatch::parse_json(const std::string& text) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) throw Error::validation("patch is not valid JSON");
    if (!parsed.is_array()) throw Error::validation("patch must be a JSON array of edits");

    BalancePatch patch;
    for (const json& entry : parsed) {
        if (!entry.is_object()) throw Error::validation("patch edit must be an object");
        for (const auto& [key, value] : entry.items()) {
            (void)value;
            if (key != "id" && key != "field" && key != "delta")
                throw Error::validation("unknown patch edit key: " + key);
        }
        if (!entry.contains("id") || !entry["id"].is_string())
            throw Error::validation("patch edit needs a string id");
        if (!entry.contains("field") || !entry["field"].is_string())
            throw Error::validation("patch edit needs a field name");
        if (!entry.contains("delta") || !entry["delta"].is_number_integer())
            throw Error::validation("patch edit needs an integer delta");
        patch.edits.push_back({entry["id"].get<std::string>(),
                               parse_field(entry["field"].get<std::string>()),
                               entry["delta"].get<int>()});
    }
    return patch;
}

BalancePatch BalancePatch::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error::io("cannot open patch file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str());
}

std::string BalancePatch::to_json() const {
    json out = json::array();
    for (const PatchEdit& edit : edits)
        out.push_back({{"id", edit.id}, {"field", field_name(edit.field)}, {"delta", edit.delta}});
    return out.dump(2) + "\n";
}

BalancePatch BalancePatch::negated() const {
    BalancePatch inverse;
    inverse.edits.reserve(edits.size());
    for (const PatchEdit& edit : edits)
        inverse.edits.push_back({edit.id, edit.field, -edit.delta});
    return inverse;
}

CardCatalog apply_patch(const CardCatalog& catalog, const BalancePatch& patch) {
    std::vector<Card> cards(catalog.cards().begin(), catalog.cards().end());
    std::vector<std::string> offenders;

    for (const PatchEdit& edit : patch.edits) {
        if (!catalog.has_id(edit.id)) {
            offenders.push_back(edit.id + ": unknown card");
            continue;
        }
        Card& card = cards[catalog.index_of(edit.id)];
        if (card.kind == CardKind::Spell && edit.field != CardField::ManaCost) {
            offenders.push_back(edit.id + ": spells have no " + field_name(edit.field));
            continue;
        }
        switch (edit.field) {
          case CardField::ManaCost:
            card.mana_cost += edit.delta;
            if (card.mana_cost < 0 || card.mana_cost > kMaxManaCost)
                offenders.push_back(edit.id + ": mana_cost out of range");
            break;
          case CardField::Attack:
            card.attack += edit.delta;
            if (card.attack < 0) offenders.push_back(edit.id + ": attack out of range");
            break;
          case CardField::Health:
            card.health += edit.delta;
            if (card.health < 1) offenders.push_back(edit.id + ": health out of range");
            break;
        }
    }

    if (!offenders.empty()) {
        std::string message = "patch rejected:";
        for (const std::string& offender : offenders) message += "\n  " + offender;
        throw Error::validation(message);
    }
    return CardCatalog(std::move(cards));
}

namespace {

FrequencyTable frequency_over(const CardCatalog& catalog,
                              const std::vector<const Deck*>& decks) {
    FrequencyTable table;
    table.decks = static_cast<int>(decks.size());
    table.catalog_hash = catalog.content_hash();
    std::vector<int> containing(catalog.size(), 0);
    std::vector<char> seen(catalog.size(), 0);
    for (const Deck* deck : decks) {
        std::fill(seen.begin(), seen.end(), 0);
        for (CardIndex card : deck->cards) {
            if (card >= catalog.size()) throw Error::validation("deck card index out of range");
            if (!seen[card]) {
                seen[card] = 1;
                containing[card] += 1;
            }
        }
    }
    table.ids.reserve(catalog.size());
    table.fractions.reserve(catalog.size());
    for (CardIndex i = 0; i < catalog.size(); ++i) {
        table.ids.push_back(catalog.card(i).id);
        table.fractions.push_back(static_cast<double>(containing[i]) / table.decks);
    }
    return table;
}

} // namespace

FrequencyTable card_frequency(const SlidingArchive<Deck>& archive, const CardCatalog& catalog) {
    if (archive.cells().empty()) throw Error::validation("card_frequency needs a non-empty archive");
    std::vector<const Deck*> decks;
    decks.reserve(archive.cells().size());
    for (const auto& [coord, elite] : archive.cells()) decks.push_back(&elite.genome);
    return frequency_over(catalog, decks);
}

FrequencyTable card_frequency(const std::vector<Deck>& decks, const CardCatalog& catalog) {
    if (decks.empty()) throw Error::validation("card_frequency needs at least one deck");
    std::vector<const Deck*> pointers;
    pointers.reserve(decks.size());
    for (const Deck& deck : decks) pointers.push_back(&deck);
    return frequency_over(catalog, pointers);
}

ShiftReport frequency_diff(const FrequencyTable& before, const FrequencyTable& after,
                           double threshold) {
    if (before.ids != after.ids)
        throw Error::validation("frequency tables cover different card sets");
    if (!(threshold >= 0.0) || threshold > 1.0)
        throw Error::validation("shift threshold must be in [0, 1]");

    ShiftReport report;
    report.threshold = threshold;
    report.rows.reserve(before.ids.size());
    for (std::size_t i = 0; i < before.ids.size(); ++i) {
        FrequencyShift row;
        row.id = before.ids[i];
        row.before = before.fractions[i];
        row.after = after.fractions[i];
        row.delta = row.after - row.before;
        row.below_before = row.before <= threshold;
        row.below_after = row.after <= threshold;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace mesb
