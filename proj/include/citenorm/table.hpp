#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "citenorm/errors.hpp"
#include "citenorm/text.hpp"

namespace citenorm {

// A broad science field. The slug is derived from the display name via
// slugify() and is the identifier used everywhere in lookups and output.
struct FieldId {
  std::string slug;
  std::string display_name;

  friend bool operator==(const FieldId&, const FieldId&) = default;
};

inline FieldId make_field(std::string_view display_name) {
  return FieldId{slugify(display_name), std::string(display_name)};
}

// Calendar year, restricted to four digits.
struct Year {
  int value = 0;

  friend auto operator<=>(const Year&, const Year&) = default;
};

inline constexpr int kMinYear = 1000;
inline constexpr int kMaxYear = 9999;

// Per-field, per-year citation counts. The cross product of fields and years
// is total: every cell exists and is >= 0. Instances are immutable after
// create() and safe to share across concurrent readers.
class CitationTable {
 public:
  // Builds a table from display names, ascending years and a counts matrix
  // indexed [field][year]. Validates every invariant; throws Error on
  // violation (NegativeCount for a negative cell, InvalidArgument otherwise).
  static CitationTable create(const std::vector<std::string>& field_names,
                              std::vector<Year> years,
                              std::vector<std::vector<std::int64_t>> counts,
                              std::string source_label) {
    if (field_names.empty() || years.empty())
      fail(ErrorCode::InvalidArgument,
           "a citation table needs at least one field and one year");
    CitationTable table;
    table.years_ = std::move(years);
    for (std::size_t i = 0; i < table.years_.size(); ++i) {
      int y = table.years_[i].value;
      if (y < kMinYear || y > kMaxYear)
        fail(ErrorCode::InvalidArgument,
             "year " + std::to_string(y) + " out of range [" +
                 std::to_string(kMinYear) + ", " + std::to_string(kMaxYear) + "]");
      if (i > 0 && !(table.years_[i - 1] < table.years_[i]))
        fail(ErrorCode::InvalidArgument, "years must be strictly ascending");
    }
    table.fields_.reserve(field_names.size());
    for (const std::string& name : field_names) {
      if (name.find_first_of("\r\n") != std::string::npos)
        fail(ErrorCode::InvalidArgument,
             "field name contains a line break: '" + name + "'");
      FieldId field = make_field(name);
      if (field.slug.empty())
        fail(ErrorCode::InvalidArgument,
             "field name '" + name + "' contains no letters or digits");
      auto [it, inserted] =
          table.field_lookup_.emplace(field.slug, table.fields_.size());
      if (!inserted)
        fail(ErrorCode::InvalidArgument,
             "duplicate field '" + field.slug + "' (from '" + name + "')");
      table.fields_.push_back(std::move(field));
    }
    if (counts.size() != table.fields_.size())
      fail(ErrorCode::InvalidArgument, "counts must have one row per field");
    for (std::size_t f = 0; f < counts.size(); ++f) {
      if (counts[f].size() != table.years_.size())
        fail(ErrorCode::InvalidArgument, "counts must have one cell per year");
      for (std::size_t y = 0; y < counts[f].size(); ++y) {
        if (counts[f][y] < 0)
          fail(ErrorCode::NegativeCount,
               "negative citation count for field '" + table.fields_[f].slug +
                   "', year " + std::to_string(table.years_[y].value));
      }
    }
    table.counts_ = std::move(counts);
    table.source_label_ = std::move(source_label);
    return table;
  }

  const std::vector<FieldId>& fields() const { return fields_; }
  const std::vector<Year>& years() const { return years_; }
  const std::string& source_label() const { return source_label_; }

  std::size_t field_count() const { return fields_.size(); }
  std::size_t year_count() const { return years_.size(); }

  std::optional<std::size_t> find_field(std::string_view slug) const {
    auto it = field_lookup_.find(std::string(slug));
    if (it == field_lookup_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> find_year(Year year) const {
    for (std::size_t i = 0; i < years_.size(); ++i)
      if (years_[i] == year) return i;
    return std::nullopt;
  }

  std::size_t field_index(std::string_view slug) const {
    if (auto idx = find_field(slug)) return *idx;
    std::string msg = "unknown field '" + std::string(slug) + "'; valid fields:";
    for (std::size_t i = 0; i < fields_.size(); ++i)
      msg += (i == 0 ? " " : ", ") + fields_[i].slug;
    fail(ErrorCode::UnknownField, msg);
  }

  std::size_t year_index(Year year) const {
    if (auto idx = find_year(year)) return *idx;
    fail(ErrorCode::UnknownYear,
         "year " + std::to_string(year.value) + " not present in the table");
  }

  std::int64_t count_at(std::size_t field, std::size_t year) const {
    return counts_[field][year];
  }

  std::int64_t count(std::string_view field_slug, Year year) const {
    return counts_[field_index(field_slug)][year_index(year)];
  }

  // Structural equality: fields, years and counts. The provenance label is
  // free text and excluded, so parse(serialize(t)).same_data(t) holds.
  bool same_data(const CitationTable& other) const {
    return fields_ == other.fields_ && years_ == other.years_ &&
           counts_ == other.counts_;
  }

 private:
  CitationTable() = default;

  std::vector<FieldId> fields_;
  std::vector<Year> years_;
  std::vector<std::vector<std::int64_t>> counts_;
  std::unordered_map<std::string, std::size_t> field_lookup_;
  std::string source_label_;
};

// Slugifies the query and requires an exact slug match against the table.
inline const FieldId& resolve_field(const CitationTable& table,
                                    std::string_view name) {
  return table.fields()[table.field_index(slugify(name))];
}

// Per-year sum over all fields, in table year order.
inline std::vector<std::pair<Year, std::int64_t>> yearly_totals(
    const CitationTable& table) {
  std::vector<std::pair<Year, std::int64_t>> totals;
  totals.reserve(table.year_count());
  for (std::size_t y = 0; y < table.year_count(); ++y) {
    std::int64_t sum = 0;
    for (std::size_t f = 0; f < table.field_count(); ++f)
      sum += table.count_at(f, y);
    totals.emplace_back(table.years()[y], sum);
  }
  return totals;
}

}  // namespace citenorm
