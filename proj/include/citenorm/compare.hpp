#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citenorm/baseline.hpp"
#include "citenorm/errors.hpp"
#include "citenorm/table.hpp"

namespace citenorm {

// A named thing to rank: a scientist, an institution, anything with a field
// and a citation count.
struct Entity {
  std::string label;
  FieldId field;
  std::int64_t citations = 0;
};

struct ComparisonRow {
  Entity entity;
  NormalizedScore score;
  std::int64_t rank = 0;
};

// Entities ranked by normalized score, descending. Equal scores share a
// rank (competition ranking: 1, 1, 3); tied rows keep their input order.
struct ComparisonResult {
  FieldId reference;
  BaselineMethod method = BaselineMethod::MeanOfYearlyRatios;
  RatioMode mode = RatioMode::Rounded;
  std::vector<ComparisonRow> rows;
};

// Ranking always uses the full-precision scores; the 2-decimal display
// never decides an order.
inline ComparisonResult compare_entities(const Baseline& baseline,
                                         std::span<const Entity> entities,
                                         RatioMode mode) {
  if (entities.empty())
    fail(ErrorCode::EmptyEntityList, "no entities to compare");
  ComparisonResult result{baseline.reference(), baseline.method(), mode, {}};
  result.rows.reserve(entities.size());
  for (const Entity& entity : entities) {
    if (entity.label.empty())
      fail(ErrorCode::InvalidArgument, "entity label must not be empty");
    NormalizedScore score =
        normalize(baseline, entity.field.slug, entity.citations, mode);
    result.rows.push_back({entity, score, 0});
  }
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const ComparisonRow& a, const ComparisonRow& b) {
                     return a.score.value > b.score.value;
                   });
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (i > 0 && result.rows[i].score.value == result.rows[i - 1].score.value)
      result.rows[i].rank = result.rows[i - 1].rank;
    else
      result.rows[i].rank = static_cast<std::int64_t>(i) + 1;
  }
  return result;
}

}  // namespace citenorm
