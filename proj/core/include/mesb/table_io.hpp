#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mesb/apriori.hpp"
#include "mesb/balance.hpp"
#include "mesb/density.hpp"
#include "mesb/evolution.hpp"
#include "mesb/snapshot.hpp"

namespace mesb {

/// Shortest text form that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text, const std::string& context);
long long parse_int(std::string_view text, const std::string& context);
std::uint64_t parse_u64(std::string_view text, const std::string& context);

std::string hex64(std::uint64_t value);
std::uint64_t parse_hex64(std::string_view text, const std::string& context);

std::vector<std::string_view> split(std::string_view line, char delimiter);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

std::string run_log_to_tsv(const RunLog& log, const SnapshotMeta& meta);
std::pair<RunLog, SnapshotMeta> parse_run_log(const std::string& text);

/// The archive's raw sample queue, one behavior per row.
std::string samples_to_tsv(const std::vector<BehaviorVector>& samples);

std::string frequency_to_tsv(const FrequencyTable& table);
FrequencyTable parse_frequency_tsv(const std::string& text);

std::string itemsets_to_tsv(const ItemsetReport& report);
std::string shift_report_to_tsv(const ShiftReport& report);
std::string head_to_head_to_tsv(const HeadToHead& report);

/// Resolution x resolution matrix of exact cell counts, axis boundaries in
/// the header. Rows follow the first (mean) dimension.
std::string density_to_tsv(const DensityGrid& density, const std::string& kind);

/// Heatmap point cloud: one row per elite with coordinates, behavior,
/// fitness and winrate.
std::string archive_points_tsv(const DeckArchive& archive);

} // namespace mesb
