#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "citenorm/csv.hpp"
#include "citenorm/errors.hpp"
#include "citenorm/table.hpp"

namespace citenorm {

// Reserved dataset name accepted anywhere a data file path is expected.
inline constexpr std::string_view kNsf2004Name = "nsf2004";

namespace detail {

inline constexpr std::size_t kNsfFieldCount = 9;
inline constexpr std::size_t kNsfYearCount = 6;

inline constexpr std::array<int, kNsfYearCount> kNsfYears = {1992, 1994, 1996,
                                                             1997, 1999, 2001};

inline constexpr std::array<std::string_view, kNsfFieldCount> kNsfFieldNames = {
    "Clinical medicine",      "Biomedical research",
    "Biology",                "Chemistry",
    "Physics",                "Earth/space sciences",
    "Engineering/technology", "Mathematics",
    "Social/behavioral sciences",
};

inline constexpr std::array<std::array<std::int64_t, kNsfYearCount>, kNsfFieldCount>
    kNsfCounts = {{
        {475793, 516665, 554332, 574859, 584330, 589762},
        {460148, 518304, 562361, 572122, 594596, 568328},
        {52535, 57825, 58649, 58130, 56981, 57899},
        {88010, 96827, 105960, 105762, 110927, 109703},
        {137922, 141653, 138417, 131958, 125968, 120593},
        {55086, 58818, 71230, 73507, 83053, 82614},
        {32680, 35189, 33664, 32958, 34001, 36809},
        {6858, 6631, 6961, 6418, 7520, 7794},
        {80282, 84353, 93032, 93187, 99481, 104793},
    }};

// Integer ratio-to-mathematics columns as published alongside the source
// table, kept for cross-checking recomputed values. Two cells are known to
// disagree with recomputation from the raw counts (earth/space 1992 and the
// earth/space average); the `table` command reports those as notes.
inline constexpr std::array<std::array<std::int64_t, kNsfYearCount>, kNsfFieldCount>
    kNsfPublishedYearlyRatios = {{
        {69, 78, 80, 90, 78, 76},
        {67, 78, 81, 89, 79, 73},
        {8, 9, 8, 9, 8, 7},
        {13, 15, 15, 16, 15, 14},
        {20, 21, 20, 21, 17, 15},
        {5, 9, 10, 11, 11, 11},
        {5, 5, 5, 5, 5, 5},
        {1, 1, 1, 1, 1, 1},
        {12, 13, 13, 15, 13, 13},
    }};

inline constexpr std::array<std::int64_t, kNsfFieldCount>
    kNsfPublishedAverageRatios = {78, 78, 8, 15, 19, 9, 5, 1, 13};

}  // namespace detail

// The bundled 9-field x 6-year table of raw citation counts. The same data
// ships as data/nsf2004.csv for diffing against the source.
inline const CitationTable& nsf2004_table() {
  static const CitationTable table = [] {
    std::vector<std::string> names(detail::kNsfFieldNames.begin(),
                                   detail::kNsfFieldNames.end());
    std::vector<Year> years;
    for (int y : detail::kNsfYears) years.push_back(Year{y});
    std::vector<std::vector<std::int64_t>> counts;
    for (const auto& row : detail::kNsfCounts)
      counts.emplace_back(row.begin(), row.end());
    return CitationTable::create(
        names, std::move(years), std::move(counts),
        "Based on the data from Science and Engineering Indicators 2004. "
        "National Science Foundation, May 04, 2004.");
  }();
  return table;
}

// Published integer ratio-to-mathematics cells, aligned with
// nsf2004_table()'s field and year order.
inline std::int64_t nsf2004_published_yearly_ratio(std::size_t field,
                                                   std::size_t year) {
  return detail::kNsfPublishedYearlyRatios[field][year];
}

// Published averages of the ratio-to-mathematics columns, one per field.
inline std::int64_t nsf2004_published_average_ratio(std::size_t field) {
  return detail::kNsfPublishedAverageRatios[field];
}

// Resolves a data source: the reserved name maps to the bundled table, any
// other value is read as a CSV file path.
inline CitationTable load_table(const std::string& name_or_path) {
  if (name_or_path == kNsf2004Name) return nsf2004_table();
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in)
    fail(ErrorCode::IoError, "cannot open data file '" + name_or_path + "'");
  return parse_citation_table(in, name_or_path);
}

}  // namespace citenorm
