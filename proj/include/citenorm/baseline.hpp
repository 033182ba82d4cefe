#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "citenorm/errors.hpp"
#include "citenorm/table.hpp"
#include "citenorm/text.hpp"

namespace citenorm {

// How per-field ratios to the reference field are aggregated over years.
//
// MeanOfYearlyRatios averages the yearly ratios and is the method the
// bundled comparison table uses. PooledTotals divides multi-year sums; it
// is offered because it is invariant under a change of reference field
// (mean-of-ratios is not: a mean of quotients is not a quotient of means).
enum class BaselineMethod {
  MeanOfYearlyRatios,
  PooledTotals,
};

// Whether conversions divide by the rounded integer ratio (the published
// usage) or by the unrounded one.
enum class RatioMode {
  Rounded,
  Exact,
};

inline std::string_view method_name(BaselineMethod method) {
  return method == BaselineMethod::MeanOfYearlyRatios ? "mean" : "pooled";
}

inline std::string_view mode_name(RatioMode mode) {
  return mode == RatioMode::Rounded ? "rounded" : "exact";
}

// Half away from zero, floored at 1 so a field smaller than the reference
// never produces a zero divisor.
inline std::int64_t round_ratio(double exact) {
  std::int64_t rounded = round_half_away(exact);
  return rounded < 1 ? 1 : rounded;
}

struct BaselineEntry {
  FieldId field;
  double exact = 0.0;         // average ratio to the reference field
  std::int64_t rounded = 1;   // round_ratio(exact)
};

// Per-field normalization constants relative to a reference field. The
// reference's own entry is exactly 1. Immutable value type.
class Baseline {
 public:
  Baseline(FieldId reference, BaselineMethod method,
           std::vector<BaselineEntry> entries)
      : reference_(std::move(reference)),
        method_(method),
        entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      lookup_.emplace(entries_[i].field.slug, i);
  }

  const FieldId& reference() const { return reference_; }
  BaselineMethod method() const { return method_; }
  const std::vector<BaselineEntry>& entries() const { return entries_; }

  const BaselineEntry& entry(std::string_view field_slug) const {
    auto it = lookup_.find(std::string(field_slug));
    if (it == lookup_.end()) {
      std::string msg =
          "unknown field '" + std::string(field_slug) + "'; valid fields:";
      for (std::size_t i = 0; i < entries_.size(); ++i)
        msg += (i == 0 ? " " : ", ") + entries_[i].field.slug;
      fail(ErrorCode::UnknownField, msg);
    }
    return entries_[it->second];
  }

  double ratio_for(std::string_view field_slug, RatioMode mode) const {
    const BaselineEntry& e = entry(field_slug);
    return mode == RatioMode::Rounded ? static_cast<double>(e.rounded) : e.exact;
  }

 private:
  FieldId reference_;
  BaselineMethod method_;
  std::vector<BaselineEntry> entries_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

// The default reference field: smallest pooled total, first in table order
// on ties.
inline const FieldId& default_reference_field(const CitationTable& table) {
  std::size_t best = 0;
  std::int64_t best_total = 0;
  for (std::size_t f = 0; f < table.field_count(); ++f) {
    std::int64_t total = 0;
    for (std::size_t y = 0; y < table.year_count(); ++y)
      total += table.count_at(f, y);
    if (f == 0 || total < best_total) {
      best = f;
      best_total = total;
    }
  }
  return table.fields()[best];
}

inline Baseline compute_baseline(const CitationTable& table,
                                 std::string_view reference,
                                 BaselineMethod method) {
  std::size_t ref = table.field_index(reference);
  std::vector<BaselineEntry> entries;
  entries.reserve(table.field_count());
  if (method == BaselineMethod::MeanOfYearlyRatios) {
    for (std::size_t y = 0; y < table.year_count(); ++y) {
      if (table.count_at(ref, y) == 0)
        fail(ErrorCode::ZeroDenominator,
             "reference field '" + std::string(reference) +
                 "' has zero citations in " +
                 std::to_string(table.years()[y].value));
    }
    for (std::size_t f = 0; f < table.field_count(); ++f) {
      double sum = 0.0;
      for (std::size_t y = 0; y < table.year_count(); ++y)
        sum += static_cast<double>(table.count_at(f, y)) /
               static_cast<double>(table.count_at(ref, y));
      double exact = sum / static_cast<double>(table.year_count());
      entries.push_back({table.fields()[f], exact, round_ratio(exact)});
    }
  } else {
    std::int64_t ref_total = 0;
    for (std::size_t y = 0; y < table.year_count(); ++y)
      ref_total += table.count_at(ref, y);
    if (ref_total == 0)
      fail(ErrorCode::ZeroDenominator,
           "reference field '" + std::string(reference) +
               "' has zero pooled citations");
    for (std::size_t f = 0; f < table.field_count(); ++f) {
      std::int64_t total = 0;
      for (std::size_t y = 0; y < table.year_count(); ++y)
        total += table.count_at(f, y);
      double exact =
          static_cast<double>(total) / static_cast<double>(ref_total);
      entries.push_back({table.fields()[f], exact, round_ratio(exact)});
    }
  }
  return Baseline(table.fields()[ref], method, std::move(entries));
}

// Rounded ratio to the reference for every (field, year) cell, indexed
// [field][year] in table order. Reproduces the per-year integer columns of
// the bundled comparison table.
inline std::vector<std::vector<std::int64_t>> per_year_rounded_ratios(
    const CitationTable& table, std::string_view reference) {
  std::size_t ref = table.field_index(reference);
  for (std::size_t y = 0; y < table.year_count(); ++y) {
    if (table.count_at(ref, y) == 0)
      fail(ErrorCode::ZeroDenominator,
           "reference field '" + std::string(reference) +
               "' has zero citations in " +
               std::to_string(table.years()[y].value));
  }
  std::vector<std::vector<std::int64_t>> ratios(
      table.field_count(), std::vector<std::int64_t>(table.year_count(), 1));
  for (std::size_t f = 0; f < table.field_count(); ++f) {
    for (std::size_t y = 0; y < table.year_count(); ++y) {
      double r = static_cast<double>(table.count_at(f, y)) /
                 static_cast<double>(table.count_at(ref, y));
      ratios[f][y] = round_ratio(r);
    }
  }
  return ratios;
}

// Citations divided by the field's baseline ratio: the field-independent
// impact unit.
struct NormalizedScore {
  double value = 0.0;
};

inline NormalizedScore normalize(const Baseline& baseline,
                                 std::string_view field_slug,
                                 std::int64_t citations, RatioMode mode) {
  if (citations < 0)
    fail(ErrorCode::InvalidArgument, "citation count must be non-negative");
  return {static_cast<double>(citations) / baseline.ratio_for(field_slug, mode)};
}

// count citations in `from` expressed in `to` units: count * ratio_to /
// ratio_from. No final rounding; the display layer rounds.
inline double equivalent_citations(const Baseline& baseline, double count,
                                   std::string_view from, std::string_view to,
                                   RatioMode mode) {
  if (!(count >= 0.0))
    fail(ErrorCode::InvalidArgument, "citation count must be non-negative");
  return count * baseline.ratio_for(to, mode) / baseline.ratio_for(from, mode);
}

}  // namespace citenorm
