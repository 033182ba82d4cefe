#pragma once

// The randomized invariant checks, shared by the Catch2 property suite and
// the acceptance gate. Each runner returns the first failure description,
// or nullopt when every case holds. All comparisons use near() with its
// 1e-12 tolerance.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "citenorm/baseline.hpp"
#include "citenorm/compare.hpp"
#include "citenorm/csv.hpp"
#include "citenorm/ratios.hpp"
#include "citenorm/table.hpp"
#include "oracles.hpp"
#include "random_table.hpp"

namespace citenorm::testing {

namespace detail {

inline std::string describe(const std::string& property, std::size_t case_id,
                            double got, double want) {
  return property + " failed on case " + std::to_string(case_id) + ": got " +
         std::to_string(got) + ", want " + std::to_string(want);
}

inline CitationTable scaled_copy(const CitationTable& table, std::int64_t k) {
  std::vector<std::string> names;
  for (const FieldId& f : table.fields()) names.push_back(f.display_name);
  std::vector<std::vector<std::int64_t>> counts;
  for (std::size_t f = 0; f < table.field_count(); ++f) {
    std::vector<std::int64_t> row;
    for (std::size_t y = 0; y < table.year_count(); ++y)
      row.push_back(table.count_at(f, y) * k);
    counts.push_back(std::move(row));
  }
  return CitationTable::create(names, table.years(), std::move(counts),
                               table.source_label());
}

}  // namespace detail

// Ratio algebra on one random table: reciprocity, transitivity, invariance
// under a common scaling of all counts.
inline std::optional<std::string> check_ratio_properties(
    const CitationTable& table, std::mt19937_64& rng, std::size_t case_id) {
  const auto& fields = table.fields();
  const std::size_t a = pick_index(rng, fields.size());
  const std::size_t b = pick_index(rng, fields.size());
  const std::size_t c = pick_index(rng, fields.size());
  const Year year = table.years()[pick_index(rng, table.year_count())];

  const double ab = ratio(table, fields[a].slug, fields[b].slug, year);
  const double ba = ratio(table, fields[b].slug, fields[a].slug, year);
  if (!near(ab * ba, 1.0))
    return detail::describe("ratio reciprocity", case_id, ab * ba, 1.0);

  const double bc = ratio(table, fields[b].slug, fields[c].slug, year);
  const double ac = ratio(table, fields[a].slug, fields[c].slug, year);
  if (!near(ab * bc, ac))
    return detail::describe("ratio transitivity", case_id, ab * bc, ac);

  std::uniform_int_distribution<std::int64_t> k_dist(2, 9);
  const CitationTable scaled = detail::scaled_copy(table, k_dist(rng));
  const double scaled_ab =
      ratio(scaled, fields[a].slug, fields[b].slug, year);
  if (!near(scaled_ab, ab))
    return detail::describe("ratio scale invariance", case_id, scaled_ab, ab);
  return std::nullopt;
}

// Normalization and equivalence algebra, exact mode: linearity in the
// citation count, conversion round trip, conversion composition.
inline std::optional<std::string> check_normalization_properties(
    const CitationTable& table, std::mt19937_64& rng, std::size_t case_id) {
  const auto& fields = table.fields();
  const FieldId& reference = fields[pick_index(rng, fields.size())];
  std::uniform_int_distribution<int> method_coin(0, 1);
  const BaselineMethod method = method_coin(rng) == 0
                                    ? BaselineMethod::MeanOfYearlyRatios
                                    : BaselineMethod::PooledTotals;
  const Baseline baseline = compute_baseline(table, reference.slug, method);

  const std::string& f = fields[pick_index(rng, fields.size())].slug;
  const std::string& g = fields[pick_index(rng, fields.size())].slug;
  const std::string& h = fields[pick_index(rng, fields.size())].slug;
  std::uniform_int_distribution<std::int64_t> count_dist(0, 1'000'000'000);
  const std::int64_t x = count_dist(rng);
  const std::int64_t y = count_dist(rng);

  const double lhs = normalize(baseline, f, x + y, RatioMode::Exact).value;
  const double rhs = normalize(baseline, f, x, RatioMode::Exact).value +
                     normalize(baseline, f, y, RatioMode::Exact).value;
  if (!near(lhs, rhs))
    return detail::describe("normalize linearity", case_id, lhs, rhs);

  std::uniform_int_distribution<int> mode_coin(0, 1);
  const RatioMode mode =
      mode_coin(rng) == 0 ? RatioMode::Rounded : RatioMode::Exact;
  const double count = static_cast<double>(count_dist(rng));
  const double there = equivalent_citations(baseline, count, f, g, mode);
  const double back = equivalent_citations(baseline, there, g, f, mode);
  if (!near(back, count))
    return detail::describe("equivalence round trip", case_id, back, count);

  const double via =
      equivalent_citations(baseline, equivalent_citations(baseline, count, f,
                                                          g, mode),
                           g, h, mode);
  const double direct = equivalent_citations(baseline, count, f, h, mode);
  if (!near(via, direct))
    return detail::describe("equivalence composition", case_id, via, direct);
  return std::nullopt;
}

// Pooled baselines from two references describe the same field sizes:
// rebasing is division by the new reference's old entry. Comparison ranks
// are invariant under that change of reference.
inline std::optional<std::string> check_reference_change_properties(
    const CitationTable& table, std::mt19937_64& rng, std::size_t case_id) {
  const auto& fields = table.fields();
  const std::size_t r1 = pick_index(rng, fields.size());
  const std::size_t r2 = pick_index(rng, fields.size());
  const Baseline b1 = compute_baseline(table, fields[r1].slug,
                                       BaselineMethod::PooledTotals);
  const Baseline b2 = compute_baseline(table, fields[r2].slug,
                                       BaselineMethod::PooledTotals);
  const double pivot = b1.entry(fields[r2].slug).exact;
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const double rebased = b1.entries()[f].exact / pivot;
    if (!near(b2.entries()[f].exact, rebased))
      return detail::describe("pooled reference-change identity", case_id,
                              b2.entries()[f].exact, rebased);
  }

  std::uniform_int_distribution<std::size_t> entity_count_dist(2, 8);
  std::uniform_int_distribution<std::int64_t> count_dist(0, 1'000'000);
  std::vector<Entity> entities;
  const std::size_t entity_count = entity_count_dist(rng);
  for (std::size_t i = 0; i < entity_count; ++i) {
    entities.push_back(Entity{"e" + std::to_string(i + 1),
                              fields[pick_index(rng, fields.size())],
                              count_dist(rng)});
  }
  const ComparisonResult c1 = compare_entities(b1, entities, RatioMode::Exact);
  const ComparisonResult c2 = compare_entities(b2, entities, RatioMode::Exact);
  for (std::size_t i = 0; i < c1.rows.size(); ++i) {
    if (c1.rows[i].entity.label != c2.rows[i].entity.label ||
        c1.rows[i].rank != c2.rows[i].rank)
      return "comparison rank invariance failed on case " +
             std::to_string(case_id) + ": position " + std::to_string(i) +
             " is " + c1.rows[i].entity.label + " (rank " +
             std::to_string(c1.rows[i].rank) + ") vs " +
             c2.rows[i].entity.label + " (rank " +
             std::to_string(c2.rows[i].rank) + ")";
  }
  return std::nullopt;
}

// Online statistics against the two-pass oracle on one random pair.
inline std::optional<std::string> check_stats_oracle(
    const CitationTable& table, std::mt19937_64& rng, std::size_t case_id) {
  const auto& fields = table.fields();
  const std::string& num = fields[pick_index(rng, fields.size())].slug;
  const std::string& den = fields[pick_index(rng, fields.size())].slug;
  const RatioSeries series = ratio_series(table, num, den);
  const ConstancyStats stats = constancy_stats(series);
  std::vector<std::pair<int, double>> points;
  for (const RatioPoint& p : series.points)
    points.emplace_back(p.year.value, p.ratio);
  const SeriesOracle oracle = two_pass_oracle(points);
  if (!near(stats.mean, oracle.mean))
    return detail::describe("stats oracle mean", case_id, stats.mean,
                            oracle.mean);
  if (!near(stats.std_dev, oracle.std_dev))
    return detail::describe("stats oracle std_dev", case_id, stats.std_dev,
                            oracle.std_dev);
  if (!near(stats.cv, oracle.cv))
    return detail::describe("stats oracle cv", case_id, stats.cv, oracle.cv);
  if (stats.min != oracle.min || stats.max != oracle.max)
    return detail::describe("stats oracle min/max", case_id, stats.min,
                            oracle.min);
  if (!near(stats.trend_slope, oracle.slope))
    return detail::describe("stats oracle slope", case_id, stats.trend_slope,
                            oracle.slope);
  return std::nullopt;
}

// The full randomized sweep. Every case draws a fresh table and runs each
// property family once.
inline std::optional<std::string> run_property_cases(std::size_t cases,
                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const CitationTable table = random_table(rng);
    if (auto failure = check_ratio_properties(table, rng, i)) return failure;
    if (auto failure = check_normalization_properties(table, rng, i))
      return failure;
    if (auto failure = check_reference_change_properties(table, rng, i))
      return failure;
    if (auto failure = check_stats_oracle(table, rng, i)) return failure;
  }
  return std::nullopt;
}

// parse(serialize(t)) reproduces t's fields, years and counts.
inline std::optional<std::string> run_roundtrip_cases(std::size_t cases,
                                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const CitationTable table = random_table(rng);
    const CitationTable reparsed =
        parse_citation_table(serialize_citation_table(table));
    if (!reparsed.same_data(table))
      return "serialize/parse round trip changed the data on case " +
             std::to_string(i);
  }
  return std::nullopt;
}

}  // namespace citenorm::testing
