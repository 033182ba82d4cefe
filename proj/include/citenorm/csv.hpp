#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citenorm/errors.hpp"
#include "citenorm/table.hpp"

namespace citenorm {

inline constexpr std::string_view kCsvHeader = "field,year,citations";

namespace detail {

// RFC 4180 quoting for a single cell: wrap in quotes when the value contains
// a comma or a quote, doubling embedded quotes.
inline std::string csv_quote(std::string_view cell) {
  if (cell.find_first_of(",\"") == std::string_view::npos)
    return std::string(cell);
  std::string quoted = "\"";
  for (char c : cell) {
    if (c == '"') quoted += "\"\"";
    else quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

// Splits one line into cells, honoring RFC 4180 quoting. Cells may not span
// lines; an unterminated quote is a malformed row.
inline std::vector<std::string> split_csv_line(std::string_view line,
                                               std::size_t line_number) {
  std::vector<std::string> cells;
  std::string current;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"' && current.empty()) {
      in_quotes = true;
    } else if (c == ',') {
      cells.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (in_quotes)
    fail(ErrorCode::MalformedRow,
         "line " + std::to_string(line_number) + ": unterminated quote");
  cells.push_back(std::move(current));
  return cells;
}

inline std::int64_t parse_integer_cell(std::string_view cell,
                                       std::string_view what,
                                       std::size_t line_number) {
  std::int64_t value = 0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || cell.empty())
    fail(ErrorCode::MalformedRow,
         "line " + std::to_string(line_number) + ": " + std::string(what) +
             " '" + std::string(cell) + "' is not an integer");
  return value;
}

}  // namespace detail

// Parses long-format CSV (`field,year,citations`). Rows may arrive in any
// order; fields keep first-appearance order, years are sorted ascending, and
// the (field x year) cross product must be complete.
inline CitationTable parse_citation_table(std::string_view text,
                                          std::string source_label = {}) {
  std::vector<std::string> field_names;        // first-appearance order
  std::vector<std::string> field_slugs;
  std::map<std::string, std::size_t, std::less<>> slug_to_index;
  std::map<int, std::size_t> year_set;          // value -> eventual index
  std::map<std::pair<std::size_t, int>, std::int64_t> cells;

  std::size_t line_number = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = (eol == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (!header_seen) {
      if (line != kCsvHeader)
        fail(ErrorCode::MalformedRow,
             "line " + std::to_string(line_number) + ": expected header '" +
                 std::string(kCsvHeader) + "', got '" + std::string(line) + "'");
      header_seen = true;
      continue;
    }

    std::vector<std::string> cells_in = detail::split_csv_line(line, line_number);
    if (cells_in.size() != 3)
      fail(ErrorCode::MalformedRow,
           "line " + std::to_string(line_number) + ": expected 3 columns, got " +
               std::to_string(cells_in.size()));

    const std::string& name = cells_in[0];
    std::string slug = slugify(name);
    if (slug.empty())
      fail(ErrorCode::MalformedRow,
           "line " + std::to_string(line_number) + ": field name '" + name +
               "' contains no letters or digits");

    std::int64_t year_value =
        detail::parse_integer_cell(cells_in[1], "year", line_number);
    if (year_value < kMinYear || year_value > kMaxYear)
      fail(ErrorCode::MalformedRow,
           "line " + std::to_string(line_number) + ": year " +
               std::to_string(year_value) + " out of range [" +
               std::to_string(kMinYear) + ", " + std::to_string(kMaxYear) + "]");

    std::int64_t count =
        detail::parse_integer_cell(cells_in[2], "citation count", line_number);
    if (count < 0)
      fail(ErrorCode::NegativeCount,
           "line " + std::to_string(line_number) + ": negative citation count " +
               std::to_string(count) + " for field '" + slug + "'");

    std::size_t field_index;
    if (auto it = slug_to_index.find(slug); it != slug_to_index.end()) {
      field_index = it->second;
      if (field_names[field_index] != name)
        fail(ErrorCode::MalformedRow,
             "line " + std::to_string(line_number) + ": field '" + name +
                 "' collides with '" + field_names[field_index] +
                 "' (both slugify to '" + slug + "')");
    } else {
      field_index = field_names.size();
      slug_to_index.emplace(slug, field_index);
      field_names.push_back(name);
      field_slugs.push_back(slug);
    }

    auto [cell_it, inserted] = cells.emplace(
        std::make_pair(field_index, static_cast<int>(year_value)), count);
    if (!inserted)
      fail(ErrorCode::DuplicateCell,
           "line " + std::to_string(line_number) + ": duplicate cell for field '" +
               slug + "', year " + std::to_string(year_value));
    year_set.emplace(static_cast<int>(year_value), 0);
  }

  if (!header_seen || cells.empty())
    fail(ErrorCode::EmptyInput, "input contains no data rows");

  std::vector<Year> years;
  years.reserve(year_set.size());
  for (auto& [value, index] : year_set) {
    index = years.size();
    years.push_back(Year{value});
  }

  std::vector<std::vector<std::int64_t>> counts(
      field_names.size(), std::vector<std::int64_t>(years.size(), 0));
  std::size_t missing = 0;
  std::string first_missing;
  for (std::size_t f = 0; f < field_names.size(); ++f) {
    for (const auto& [year_value, year_index] : year_set) {
      auto it = cells.find(std::make_pair(f, year_value));
      if (it == cells.end()) {
        if (missing == 0)
          first_missing = "field '" + field_slugs[f] + "', year " +
                          std::to_string(year_value);
        ++missing;
      } else {
        counts[f][year_index] = it->second;
      }
    }
  }
  if (missing > 0)
    fail(ErrorCode::IncompleteTable,
         "missing " + std::to_string(missing) + " cell" +
             (missing == 1 ? "" : "s") + ", first: " + first_missing);

  return CitationTable::create(field_names, std::move(years), std::move(counts),
                               std::move(source_label));
}

inline CitationTable parse_citation_table(std::istream& in,
                                          std::string source_label = {}) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_citation_table(buffer.str(), std::move(source_label));
}

// Long-format CSV: fields in table order, years ascending within each field.
// parse_citation_table(serialize_citation_table(t)) reproduces t's data.
inline std::string serialize_citation_table(const CitationTable& table) {
  std::string out(kCsvHeader);
  out.push_back('\n');
  for (std::size_t f = 0; f < table.field_count(); ++f) {
    const std::string quoted = detail::csv_quote(table.fields()[f].display_name);
    for (std::size_t y = 0; y < table.year_count(); ++y) {
      out += quoted;
      out.push_back(',');
      out += std::to_string(table.years()[y].value);
      out.push_back(',');
      out += std::to_string(table.count_at(f, y));
      out.push_back('\n');
    }
  }
  return out;
}

}  // namespace citenorm
