#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "citenorm/errors.hpp"
#include "citenorm/table.hpp"

namespace citenorm {

// counts(num, year) / counts(den, year) in full floating precision.
// A zero numerator yields 0.0; a zero denominator is an error.
inline double ratio(const CitationTable& table, std::string_view numerator,
                    std::string_view denominator, Year year) {
  std::size_t num = table.field_index(numerator);
  std::size_t den = table.field_index(denominator);
  std::size_t y = table.year_index(year);
  std::int64_t den_count = table.count_at(den, y);
  if (den_count == 0)
    fail(ErrorCode::ZeroDenominator,
         "field '" + std::string(denominator) + "' has zero citations in " +
             std::to_string(year.value));
  return static_cast<double>(table.count_at(num, y)) /
         static_cast<double>(den_count);
}

struct RatioPoint {
  Year year;
  double ratio = 0.0;
};

// Pairwise ratio per year, covering exactly the table's years, ascending.
struct RatioSeries {
  FieldId numerator;
  FieldId denominator;
  std::vector<RatioPoint> points;
};

inline RatioSeries ratio_series(const CitationTable& table,
                                std::string_view numerator,
                                std::string_view denominator) {
  std::size_t num = table.field_index(numerator);
  std::size_t den = table.field_index(denominator);
  for (std::size_t y = 0; y < table.year_count(); ++y) {
    if (table.count_at(den, y) == 0)
      fail(ErrorCode::ZeroDenominator,
           "field '" + std::string(denominator) + "' has zero citations in " +
               std::to_string(table.years()[y].value));
  }
  RatioSeries series{table.fields()[num], table.fields()[den], {}};
  series.points.reserve(table.year_count());
  for (std::size_t y = 0; y < table.year_count(); ++y) {
    series.points.push_back(
        {table.years()[y], static_cast<double>(table.count_at(num, y)) /
                               static_cast<double>(table.count_at(den, y))});
  }
  return series;
}

// Dispersion diagnostics for one ratio series. std_dev is the population
// deviation (divide by n): the covered years are the whole dataset, not a
// sample. cv = std_dev / mean quantifies "how constant" the series is, and
// trend_slope (ordinary least squares of ratio on year) reports drift that
// a small cv can hide.
struct ConstancyStats {
  double mean = 0.0;
  double std_dev = 0.0;
  double cv = 0.0;
  double min = 0.0;
  double max = 0.0;
  double trend_slope = 0.0;
};

inline ConstancyStats constancy_stats(const RatioSeries& series) {
  if (series.points.empty())
    fail(ErrorCode::InvalidArgument, "ratio series is empty");
  ConstancyStats stats;
  stats.min = std::numeric_limits<double>::infinity();
  stats.max = -std::numeric_limits<double>::infinity();
  // Welford's online mean/variance.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (const RatioPoint& p : series.points) {
    ++n;
    double delta = p.ratio - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (p.ratio - mean);
    if (p.ratio < stats.min) stats.min = p.ratio;
    if (p.ratio > stats.max) stats.max = p.ratio;
  }
  stats.mean = mean;
  stats.std_dev = std::sqrt(m2 / static_cast<double>(n));
  stats.cv = mean > 0.0 ? stats.std_dev / mean : 0.0;
  if (n >= 2) {
    double year_mean = 0.0;
    for (const RatioPoint& p : series.points) year_mean += p.year.value;
    year_mean /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    for (const RatioPoint& p : series.points) {
      double dx = p.year.value - year_mean;
      sxy += dx * (p.ratio - mean);
      sxx += dx * dx;
    }
    stats.trend_slope = sxy / sxx;
  }
  return stats;
}

struct PairConstancy {
  FieldId numerator;
  FieldId denominator;
  ConstancyStats stats;
  bool pass = false;
};

// All-pairs constancy summary. Each unordered pair appears once, numerator
// earlier in table order; pass means cv <= threshold.
struct ValidationReport {
  double threshold = 0.0;
  std::vector<PairConstancy> pairs;
  bool all_pass = false;
};

inline ValidationReport validate_constancy(const CitationTable& table,
                                           double threshold) {
  if (table.field_count() < 2)
    fail(ErrorCode::InvalidArgument,
         "constancy validation needs at least 2 fields");
  for (std::size_t f = 0; f < table.field_count(); ++f) {
    for (std::size_t y = 0; y < table.year_count(); ++y) {
      if (table.count_at(f, y) == 0)
        fail(ErrorCode::ZeroDenominator,
             "field '" + table.fields()[f].slug + "' has zero citations in " +
                 std::to_string(table.years()[y].value));
    }
  }
  ValidationReport report;
  report.threshold = threshold;
  report.all_pass = true;
  for (std::size_t i = 0; i < table.field_count(); ++i) {
    for (std::size_t j = i + 1; j < table.field_count(); ++j) {
      RatioSeries series = ratio_series(table, table.fields()[i].slug,
                                        table.fields()[j].slug);
      ConstancyStats stats = constancy_stats(series);
      bool pass = stats.cv <= threshold;
      report.all_pass = report.all_pass && pass;
      report.pairs.push_back(
          {table.fields()[i], table.fields()[j], stats, pass});
    }
  }
  return report;
}

}  // namespace citenorm
