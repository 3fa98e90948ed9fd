#pragma once

#include <cstdint>
#include <string>

#include "mesb/card.hpp"
#include "mesb/evolution.hpp"

namespace mesb {

struct SnapshotMeta {
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    std::uint64_t catalog_hash = 0;

    bool operator==(const SnapshotMeta&) const = default;
};

/// Line-oriented text form: header lines carry the seed, hashes, archive
/// configuration, boundary lists and offer counter; one record per occupied
/// cell (coordinate, behavior, fitness, winrate, games, deck ids). Decks are
/// stored as card ids, so loading needs the catalog. Round-trips losslessly;
/// the sample queue is exported separately and is not part of the snapshot.
std::string snapshot_to_string(const DeckArchive& archive, const SnapshotMeta& meta,
                               const CardCatalog& catalog);

struct LoadedSnapshot {
    DeckArchive archive;
    SnapshotMeta meta;
};

LoadedSnapshot parse_snapshot(const std::string& text, const CardCatalog& catalog);

void save_snapshot(const DeckArchive& archive, const SnapshotMeta& meta,
                   const CardCatalog& catalog, const std::string& path);
LoadedSnapshot load_snapshot(const std::string& path, const CardCatalog& catalog);

} // namespace mesb
