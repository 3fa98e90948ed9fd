#include "mesb/snapshot.hpp"

#include <map>
#include <optional>

#include "mesb/error.hpp"
#include "mesb/table_io.hpp"

namespace mesb {

namespace {

constexpr std::string_view kSnapshotColumns =
    "coord_mean\tcoord_var\tmean_mana\tvar_mana\tfitness\twinrate\tgames\tdeck";

struct SnapshotHeader {
    SnapshotMeta meta;
    std::uint64_t inserted = 0;
    int dims = 0;
    int resolution = 0;
    ArchiveConfig config;
    std::map<int, std::vector<double>> boundaries;
    std::vector<std::string> missing;
};

} // namespace

std::string snapshot_to_string(const DeckArchive& archive, const SnapshotMeta& meta,
                               const CardCatalog& catalog) {
    if (archive.dims() != 2) throw Error::internal("snapshots cover 2-dimensional archives");
    if (catalog.content_hash() != meta.catalog_hash)
        throw Error::internal("snapshot meta names a different catalog");

    const ArchiveConfig& cfg = archive.config();
    std::string out;
    out += "# mesb-snapshot v1\n";
    out += "# seed\t" + std::to_string(meta.seed) + "\n";
    out += "# config_hash\t" + hex64(meta.config_hash) + "\n";
    out += "# catalog_hash\t" + hex64(meta.catalog_hash) + "\n";
    out += "# inserted\t" + std::to_string(archive.inserted_count()) + "\n";
    out += "# dims\t2\n";
    out += "# resolution\t" + std::to_string(archive.grid().resolution()) + "\n";
    out += "# min_resolution\t" + std::to_string(cfg.min_resolution) + "\n";
    out += "# max_resolution\t" + std::to_string(cfg.max_resolution) + "\n";
    out += "# remap_frequency\t" + std::to_string(cfg.remap_frequency) + "\n";
    out += "# buffer_capacity\t" +
           (cfg.buffer_capacity ? std::to_string(*cfg.buffer_capacity) : std::string("unbounded")) + "\n";
    out += "# total_evaluations\t" + std::to_string(cfg.total_evaluations) + "\n";
    for (int dim = 0; dim < 2; ++dim) {
        out += "# boundaries\t" + std::to_string(dim) + "\t";
        const std::vector<double>& bounds = archive.grid().boundaries(dim);
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            if (i > 0) out += ',';
            out += format_double(bounds[i]);
        }
        out += '\n';
    }
    out += std::string(kSnapshotColumns) + "\n";
    for (const auto& [coord, elite] : archive.cells()) {
        out += std::to_string(coord[0]);
        out += '\t';
        out += std::to_string(coord[1]);
        out += '\t';
        out += format_double(elite.behavior[0]);
        out += '\t';
        out += format_double(elite.behavior[1]);
        out += '\t';
        out += format_double(elite.fitness);
        out += '\t';
        out += format_double(elite.stats.winrate);
        out += '\t';
        out += std::to_string(elite.stats.games);
        out += '\t';
        const std::vector<std::string> ids = deck_to_ids(elite.genome, catalog);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (i > 0) out += ',';
            out += ids[i];
        }
        out += '\n';
    }
    return out;
}

namespace {

void read_header_line(SnapshotHeader& header, std::string_view line, const std::string& context) {
    std::vector<std::string_view> fields = split(line, '\t');
    if (fields[0] == "# mesb-snapshot v1") return;
    if (fields.size() == 3 && fields[0] == "# boundaries") {
        const int dim = static_cast<int>(parse_int(fields[1], context));
        std::vector<double> bounds;
        if (!fields[2].empty()) {
            for (std::string_view item : split(fields[2], ','))
                bounds.push_back(parse_double(item, context));
        }
        header.boundaries[dim] = std::move(bounds);
        return;
    }
    if (fields.size() != 2) throw Error::validation(context + ": malformed header line");
    const std::string_view key = fields[0];
    const std::string_view value = fields[1];
    if (key == "# seed") header.meta.seed = parse_u64(value, context);
    else if (key == "# config_hash") header.meta.config_hash = parse_hex64(value, context);
    else if (key == "# catalog_hash") header.meta.catalog_hash = parse_hex64(value, context);
    else if (key == "# inserted") header.inserted = parse_u64(value, context);
    else if (key == "# dims") header.dims = static_cast<int>(parse_int(value, context));
    else if (key == "# resolution") header.resolution = static_cast<int>(parse_int(value, context));
    else if (key == "# min_resolution")
        header.config.min_resolution = static_cast<int>(parse_int(value, context));
    else if (key == "# max_resolution")
        header.config.max_resolution = static_cast<int>(parse_int(value, context));
    else if (key == "# remap_frequency") header.config.remap_frequency = parse_u64(value, context);
    else if (key == "# buffer_capacity")
        header.config.buffer_capacity = value == "unbounded"
            ? std::optional<std::size_t>()
            : std::optional<std::size_t>(parse_u64(value, context));
    else if (key == "# total_evaluations") header.config.total_evaluations = parse_u64(value, context);
    else throw Error::validation(context + ": unknown header key '" + std::string(key) + "'");
}

} // namespace

LoadedSnapshot parse_snapshot(const std::string& text, const CardCatalog& catalog) {
    SnapshotHeader header;
    std::vector<Elite<Deck>> elites;
    std::vector<CellCoord> coords;

    std::size_t offset = 0;
    int line_number = 0;
    bool saw_columns = false;
    bool saw_version = false;
    while (offset < text.size()) {
        std::size_t stop = text.find('\n', offset);
        if (stop == std::string::npos) stop = text.size();
        const std::string_view line(text.data() + offset, stop - offset);
        offset = stop + 1;
        line_number += 1;
        const std::string context = "snapshot line " + std::to_string(line_number);

        if (line.empty()) continue;
        if (line.front() == '#') {
            if (line == "# mesb-snapshot v1") saw_version = true;
            else read_header_line(header, line, context);
            continue;
        }
        if (!saw_columns) {
            if (line != kSnapshotColumns)
                throw Error::validation(context + ": unexpected column header");
            saw_columns = true;
            continue;
        }

        std::vector<std::string_view> fields = split(line, '\t');
        if (fields.size() != 8) throw Error::validation(context + ": expected 8 columns");
        CellCoord coord{static_cast<std::int32_t>(parse_int(fields[0], context)),
                        static_cast<std::int32_t>(parse_int(fields[1], context))};
        Elite<Deck> elite;
        elite.behavior = {parse_double(fields[2], context), parse_double(fields[3], context)};
        elite.fitness = parse_double(fields[4], context);
        elite.stats.winrate = parse_double(fields[5], context);
        elite.stats.games = static_cast<std::uint32_t>(parse_u64(fields[6], context));
        std::vector<std::string> ids;
        for (std::string_view id : split(fields[7], ',')) ids.emplace_back(id);
        try {
            elite.genome = deck_from_ids(ids, catalog);
        } catch (const Error& e) {
            throw Error::validation(context + ": " + e.what());
        }
        coords.push_back(std::move(coord));
        elites.push_back(std::move(elite));
    }

    if (!saw_version) throw Error::validation("not a mesb snapshot (missing version line)");
    if (!saw_columns) throw Error::validation("snapshot has no column header");
    if (header.dims != 2) throw Error::validation("snapshot must cover 2 dimensions");
    if (header.boundaries.size() != 2 || !header.boundaries.count(0) || !header.boundaries.count(1))
        throw Error::validation("snapshot is missing boundary lists");
    if (header.meta.catalog_hash != catalog.content_hash())
        throw Error::validation("snapshot was written against a different catalog");

    header.config.validate();
    BoundaryGrid grid({header.boundaries[0], header.boundaries[1]}, header.resolution);

    for (std::size_t i = 0; i < elites.size(); ++i) {
        if (grid.locate(elites[i].behavior) != coords[i])
            throw Error::validation("snapshot record " + std::to_string(i + 1) +
                                    " does not map to its stored cell");
    }

    LoadedSnapshot loaded{
        DeckArchive::restore(header.config, std::move(grid), std::move(elites), header.inserted),
        header.meta};
    return loaded;
}

void save_snapshot(const DeckArchive& archive, const SnapshotMeta& meta,
                   const CardCatalog& catalog, const std::string& path) {
    write_text_file(path, snapshot_to_string(archive, meta, catalog));
}

LoadedSnapshot load_snapshot(const std::string& path, const CardCatalog& catalog) {
    return parse_snapshot(read_text_file(path), catalog);
}

} // namespace mesb
