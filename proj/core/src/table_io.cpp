#include "mesb/table_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mesb/error.hpp"

namespace mesb {

std::string format_double(double value) {
    std::array<char, 32> buffer;
    auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    if (ec != std::errc()) throw Error::internal("double formatting failed");
    return std::string(buffer.data(), end);
}

double parse_double(std::string_view text, const std::string& context) {
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw Error::validation(context + ": bad number '" + std::string(text) + "'");
    return value;
}

long long parse_int(std::string_view text, const std::string& context) {
    long long value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw Error::validation(context + ": bad integer '" + std::string(text) + "'");
    return value;
}

std::uint64_t parse_u64(std::string_view text, const std::string& context) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw Error::validation(context + ": bad unsigned integer '" + std::string(text) + "'");
    return value;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

std::uint64_t parse_hex64(std::string_view text, const std::string& context) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
    if (ec != std::errc() || end != text.data() + text.size())
        throw Error::validation(context + ": bad hex value '" + std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t stop = line.find(delimiter, start);
        if (stop == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, stop - start));
        start = stop + 1;
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error::io("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error::io("cannot read file: " + path);
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error::io("cannot open file for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error::io("cannot write file: " + path);
}

namespace {

/// Iterates a text document line by line, keeping a 1-based line number for
/// error messages and splitting off "# key<TAB>rest" header lines.
struct LineReader {
    std::string_view text;
    std::size_t offset = 0;
    int line_number = 0;

    bool next(std::string_view& line) {
        if (offset >= text.size()) return false;
        std::size_t stop = text.find('\n', offset);
        if (stop == std::string_view::npos) stop = text.size();
        line = text.substr(offset, stop - offset);
        offset = stop + 1;
        line_number += 1;
        return true;
    }
};

InsertOutcome outcome_from_string(std::string_view name, const std::string& context) {
    if (name == "placed-new") return InsertOutcome::PlacedNew;
    if (name == "replaced-incumbent") return InsertOutcome::ReplacedIncumbent;
    if (name == "rejected") return InsertOutcome::Rejected;
    throw Error::validation(context + ": unknown insert outcome '" + std::string(name) + "'");
}

constexpr std::string_view kLogColumns =
    "eval_index\tmean_mana\tvar_mana\tfitness\twinrate\toutcome\tresolution"
    "\toccupied_cells\tbest_fitness\tbest_winrate\tavg_winrate";

} // namespace

std::string run_log_to_tsv(const RunLog& log, const SnapshotMeta& meta) {
    std::string out;
    out += "# mesb-run-log v1\n";
    out += "# seed\t" + std::to_string(meta.seed) + "\n";
    out += "# config_hash\t" + hex64(meta.config_hash) + "\n";
    out += "# catalog_hash\t" + hex64(meta.catalog_hash) + "\n";
    out += std::string(kLogColumns) + "\n";
    for (const LogEntry& entry : log.entries) {
        out += std::to_string(entry.eval_index);
        out += '\t';
        out += format_double(entry.mean_mana);
        out += '\t';
        out += format_double(entry.var_mana);
        out += '\t';
        out += format_double(entry.fitness);
        out += '\t';
        out += format_double(entry.winrate);
        out += '\t';
        out += to_string(entry.outcome);
        out += '\t';
        out += std::to_string(entry.resolution);
        out += '\t';
        out += std::to_string(entry.occupied_cells);
        out += '\t';
        out += format_double(entry.best_fitness);
        out += '\t';
        out += format_double(entry.best_winrate);
        out += '\t';
        out += format_double(entry.avg_winrate);
        out += '\n';
    }
    return out;
}

std::pair<RunLog, SnapshotMeta> parse_run_log(const std::string& text) {
    LineReader reader{text};
    RunLog log;
    SnapshotMeta meta;
    bool saw_columns = false;
    std::string_view line;
    while (reader.next(line)) {
        const std::string context = "run log line " + std::to_string(reader.line_number);
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::vector<std::string_view> fields = split(line, '\t');
            if (fields.size() == 2 && fields[0] == "# seed") meta.seed = parse_u64(fields[1], context);
            else if (fields.size() == 2 && fields[0] == "# config_hash")
                meta.config_hash = parse_hex64(fields[1], context);
            else if (fields.size() == 2 && fields[0] == "# catalog_hash")
                meta.catalog_hash = parse_hex64(fields[1], context);
            continue;
        }
        if (!saw_columns) {
            if (line != kLogColumns) throw Error::validation(context + ": unexpected column header");
            saw_columns = true;
            continue;
        }
        std::vector<std::string_view> fields = split(line, '\t');
        if (fields.size() != 11) throw Error::validation(context + ": expected 11 columns");
        LogEntry entry;
        entry.eval_index = static_cast<int>(parse_int(fields[0], context));
        entry.mean_mana = parse_double(fields[1], context);
        entry.var_mana = parse_double(fields[2], context);
        entry.fitness = parse_double(fields[3], context);
        entry.winrate = parse_double(fields[4], context);
        entry.outcome = outcome_from_string(fields[5], context);
        entry.resolution = static_cast<int>(parse_int(fields[6], context));
        entry.occupied_cells = static_cast<int>(parse_int(fields[7], context));
        entry.best_fitness = parse_double(fields[8], context);
        entry.best_winrate = parse_double(fields[9], context);
        entry.avg_winrate = parse_double(fields[10], context);
        log.entries.push_back(entry);
    }
    if (!saw_columns) throw Error::validation("run log has no column header");
    return {std::move(log), meta};
}

std::string samples_to_tsv(const std::vector<BehaviorVector>& samples) {
    std::string out;
    out += "# mesb-samples v1\n";
    out += "position\tmean_mana\tvar_mana\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].size() != 2) throw Error::internal("sample dimension mismatch");
        out += std::to_string(i);
        out += '\t';
        out += format_double(samples[i][0]);
        out += '\t';
        out += format_double(samples[i][1]);
        out += '\n';
    }
    return out;
}

std::string frequency_to_tsv(const FrequencyTable& table) {
    std::string out;
    out += "# mesb-frequency v1\n";
    out += "# catalog_hash\t" + hex64(table.catalog_hash) + "\n";
    out += "# decks\t" + std::to_string(table.decks) + "\n";
    out += "card_id\tfraction\n";
    for (std::size_t i = 0; i < table.ids.size(); ++i) {
        out += table.ids[i];
        out += '\t';
        out += format_double(table.fractions[i]);
        out += '\n';
    }
    return out;
}

FrequencyTable parse_frequency_tsv(const std::string& text) {
    LineReader reader{text};
    FrequencyTable table;
    bool saw_columns = false;
    std::string_view line;
    while (reader.next(line)) {
        const std::string context = "frequency table line " + std::to_string(reader.line_number);
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::vector<std::string_view> fields = split(line, '\t');
            if (fields.size() == 2 && fields[0] == "# catalog_hash")
                table.catalog_hash = parse_hex64(fields[1], context);
            else if (fields.size() == 2 && fields[0] == "# decks")
                table.decks = static_cast<int>(parse_int(fields[1], context));
            continue;
        }
        if (!saw_columns) {
            if (line != "card_id\tfraction")
                throw Error::validation(context + ": unexpected column header");
            saw_columns = true;
            continue;
        }
        std::vector<std::string_view> fields = split(line, '\t');
        if (fields.size() != 2) throw Error::validation(context + ": expected 2 columns");
        table.ids.emplace_back(fields[0]);
        table.fractions.push_back(parse_double(fields[1], context));
    }
    if (!saw_columns) throw Error::validation("frequency table has no column header");
    return table;
}

std::string itemsets_to_tsv(const ItemsetReport& report) {
    std::string out;
    out += "# mesb-itemsets v1\n";
    out += "# transactions\t" + std::to_string(report.transactions) + "\n";
    out += "# min_support_ratio\t" + format_double(report.min_support_ratio) + "\n";
    out += "# min_support_count\t" + std::to_string(report.min_support_count) + "\n";
    out += "size\tsupport\tratio\titems\n";
    for (const FrequentItemset& itemset : report.itemsets) {
        out += std::to_string(itemset.items.size());
        out += '\t';
        out += std::to_string(itemset.support);
        out += '\t';
        out += format_double(itemset.ratio);
        out += '\t';
        for (std::size_t i = 0; i < itemset.items.size(); ++i) {
            if (i > 0) out += ',';
            out += itemset.items[i];
        }
        out += '\n';
    }
    return out;
}

std::string shift_report_to_tsv(const ShiftReport& report) {
    std::string out;
    out += "# mesb-frequency-diff v1\n";
    out += "# threshold\t" + format_double(report.threshold) + "\n";
    out += "card_id\tbefore\tafter\tdelta\tmark_before\tmark_after\n";
    for (const FrequencyShift& row : report.rows) {
        out += row.id;
        out += '\t';
        out += format_double(row.before);
        out += '\t';
        out += format_double(row.after);
        out += '\t';
        out += format_double(row.delta);
        out += '\t';
        out += row.below_before ? "x" : "-";
        out += '\t';
        out += row.below_after ? "x" : "-";
        out += '\n';
    }
    return out;
}

std::string head_to_head_to_tsv(const HeadToHead& report) {
    std::string out;
    out += "# mesb-head-to-head v1\n";
    out += "metric\tvalue\n";
    out += "games\t" + std::to_string(report.games) + "\n";
    out += "wins_a\t" + std::to_string(report.wins_a) + "\n";
    out += "wins_b\t" + std::to_string(report.wins_b) + "\n";
    out += "draws\t" + std::to_string(report.draws) + "\n";
    out += "winrate_a\t" + format_double(report.winrate_a) + "\n";
    out += "winrate_b\t" + format_double(report.winrate_b) + "\n";
    out += "mean_margin_a\t" + format_double(report.mean_margin_a) + "\n";
    out += "mean_margin_b\t" + format_double(report.mean_margin_b) + "\n";
    return out;
}

std::string density_to_tsv(const DensityGrid& density, const std::string& kind) {
    const int resolution = density.grid.resolution();
    std::string out;
    out += "# mesb-density v1\n";
    out += "# kind\t" + kind + "\n";
    out += "# catalog_hash\t" + hex64(density.catalog_hash) + "\n";
    out += "# deck_size\t" + std::to_string(density.deck_size) + "\n";
    out += "# resolution\t" + std::to_string(resolution) + "\n";
    out += "# total\t" + density.total().str() + "\n";
    for (int dim = 0; dim < density.grid.dims(); ++dim) {
        out += "# boundaries\t" + std::to_string(dim) + "\t";
        const std::vector<double>& boundaries = density.grid.boundaries(dim);
        for (std::size_t i = 0; i < boundaries.size(); ++i) {
            if (i > 0) out += ',';
            out += format_double(boundaries[i]);
        }
        out += '\n';
    }
    for (int row = 0; row < resolution; ++row) {
        for (int column = 0; column < resolution; ++column) {
            if (column > 0) out += '\t';
            out += density.counts[static_cast<std::size_t>(row) * static_cast<std::size_t>(resolution)
                                  + static_cast<std::size_t>(column)].str();
        }
        out += '\n';
    }
    return out;
}

std::string archive_points_tsv(const DeckArchive& archive) {
    if (archive.empty()) throw Error::validation("cannot export an empty archive");
    std::string out;
    out += "# mesb-heatmap-points v1\n";
    out += "cell_mean\tcell_var\tmean_mana\tvar_mana\tfitness\twinrate\n";
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
        out += '\n';
    }
    return out;
}

} // namespace mesb
