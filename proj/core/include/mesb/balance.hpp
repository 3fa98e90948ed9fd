#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mesb/archive.hpp"
#include "mesb/card.hpp"
#include "mesb/deck.hpp"

namespace mesb {

enum class CardField { ManaCost, Attack, Health };

std::string field_name(CardField field);
CardField parse_field(const std::string& name);

struct PatchEdit {
    std::string id;
    CardField field = CardField::ManaCost;
    int delta = 0;

    bool operator==(const PatchEdit&) const = default;
};

struct BalancePatch {
    std::vector<PatchEdit> edits;

    static BalancePatch parse_json(const std::string& text);
    static BalancePatch load_file(const std::string& path);
    std::string to_json() const;

    /// The inverse patch; applying both in sequence is the identity whenever
    /// intermediate values stay in domain.
    BalancePatch negated() const;
};

/// Returns a new catalog with the edits applied. Unknown ids, out-of-domain
/// results (cost 0..10, minion attack >= 0, minion health >= 1) and edits to
/// fields a spell does not have are all collected into one error.
CardCatalog apply_patch(const CardCatalog& catalog, const BalancePatch& patch);

/// Per catalog card: the fraction of decks containing at least one copy.
struct FrequencyTable {
    std::vector<std::string> ids;        // catalog order
    std::vector<double> fractions;       // aligned with ids
    int decks = 0;                       // denominator
    std::uint64_t catalog_hash = 0;      // provenance of the id universe
};

FrequencyTable card_frequency(const SlidingArchive<Deck>& archive, const CardCatalog& catalog);
FrequencyTable card_frequency(const std::vector<Deck>& decks, const CardCatalog& catalog);

inline constexpr double kDefaultShiftThreshold = 0.25;

struct FrequencyShift {
    std::string id;
    double before = 0.0;
    double after = 0.0;
    double delta = 0.0;
    bool below_before = false;  // fraction at or under the threshold
    bool below_after = false;
};

struct ShiftReport {
    double threshold = kDefaultShiftThreshold;
    std::vector<FrequencyShift> rows;  // same order as the input tables
};

ShiftReport frequency_diff(const FrequencyTable& before, const FrequencyTable& after,
                           double threshold = kDefaultShiftThreshold);

} // namespace mesb
