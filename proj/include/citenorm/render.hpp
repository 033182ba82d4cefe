#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "citenorm/baseline.hpp"
#include "citenorm/compare.hpp"
#include "citenorm/csv.hpp"
#include "citenorm/ratios.hpp"
#include "citenorm/table.hpp"
#include "citenorm/text.hpp"

namespace citenorm {

enum class OutputFormat {
  Plain,
  Csv,
  Json,
};

// Rendering keeps one canonical spelling per quantity, shared by all three
// formats: per-year ratios and dispersion stats carry 9 significant digits,
// normalized scores 2 decimals, equivalent citation counts are integers,
// growth percentages 1 decimal. JSON numbers are the parsed canonical
// spellings, so every format reports exactly the same values.
namespace render {

inline std::string ratio_str(double v) { return format_sig(v, 9); }
inline std::string score_str(double v) { return format_fixed(v, 2); }

// The canonical string, reparsed, for embedding in JSON.
inline double as_number(const std::string& canonical) {
  return std::strtod(canonical.c_str(), nullptr);
}

// Whole-valued counts appear as JSON integers, anything else as the double.
inline nlohmann::ordered_json count_number(double count) {
  if (std::floor(count) == count && std::fabs(count) <= 9.0e15)
    return static_cast<std::int64_t>(count);
  return count;
}

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }
inline const char* true_false(bool b) { return b ? "true" : "false"; }

// Left-aligned columns, two-space gutters, no trailing spaces.
inline std::string layout(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c].size() > widths[c]) widths[c] = row[c].size();
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size())
        line.append(widths[c] - row[c].size() + 2, ' ');
    }
    out += line;
    out.push_back('\n');
  }
  return out;
}

inline std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c > 0) line.push_back(',');
    line += detail::csv_quote(cells[c]);
  }
  line.push_back('\n');
  return line;
}

struct BaselineContext {
  std::string reference;
  BaselineMethod method = BaselineMethod::MeanOfYearlyRatios;
  std::optional<RatioMode> mode;

  std::string comments() const {
    std::string out = "# reference: " + reference + "\n# method: " +
                      std::string(method_name(method)) + "\n";
    if (mode) out += "# mode: " + std::string(mode_name(*mode)) + "\n";
    return out;
  }

  void add_to(nlohmann::ordered_json& j) const {
    j["reference"] = reference;
    j["method"] = std::string(method_name(method));
    if (mode) j["mode"] = std::string(mode_name(*mode));
  }
};

inline std::string notes_block(const std::vector<std::string>& notes) {
  std::string out;
  for (const std::string& note : notes) out += "# note: " + note + "\n";
  return out;
}

}  // namespace render

inline std::string render_validation(const ValidationReport& report,
                                     OutputFormat format) {
  using namespace render;
  const char* columns[] = {"numerator", "denominator", "mean", "std_dev",
                           "cv",        "min",         "max",  "slope"};
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["threshold"] = as_number(ratio_str(report.threshold));
    j["all_pass"] = report.all_pass;
    j["pairs"] = nlohmann::ordered_json::array();
    for (const PairConstancy& p : report.pairs) {
      nlohmann::ordered_json row;
      row["numerator"] = p.numerator.slug;
      row["denominator"] = p.denominator.slug;
      row["mean"] = as_number(ratio_str(p.stats.mean));
      row["std_dev"] = as_number(ratio_str(p.stats.std_dev));
      row["cv"] = as_number(ratio_str(p.stats.cv));
      row["min"] = as_number(ratio_str(p.stats.min));
      row["max"] = as_number(ratio_str(p.stats.max));
      row["slope"] = as_number(ratio_str(p.stats.trend_slope));
      row["pass"] = p.pass;
      j["pairs"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({columns[0], columns[1], columns[2], columns[3], columns[4],
                  columns[5], columns[6], columns[7], "pass"});
  for (const PairConstancy& p : report.pairs) {
    rows.push_back({p.numerator.slug, p.denominator.slug,
                    ratio_str(p.stats.mean), ratio_str(p.stats.std_dev),
                    ratio_str(p.stats.cv), ratio_str(p.stats.min),
                    ratio_str(p.stats.max), ratio_str(p.stats.trend_slope),
                    format == OutputFormat::Plain ? yes_no(p.pass)
                                                  : true_false(p.pass)});
  }
  if (format == OutputFormat::Plain) {
    std::string out = layout(rows);
    out += "threshold: " + ratio_str(report.threshold) + "\n";
    out += "all_pass: " + std::string(yes_no(report.all_pass)) + "\n";
    return out;
  }
  std::string out;
  for (const auto& row : rows) out += csv_row(row);
  out += "# threshold: " + ratio_str(report.threshold) + "\n";
  out += "# all_pass: " + std::string(true_false(report.all_pass)) + "\n";
  return out;
}

inline std::string render_ratio(const RatioSeries& series,
                                const ConstancyStats& stats,
                                OutputFormat format) {
  using namespace render;
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["numerator"] = series.numerator.slug;
    j["denominator"] = series.denominator.slug;
    j["points"] = nlohmann::ordered_json::array();
    for (const RatioPoint& p : series.points) {
      nlohmann::ordered_json point;
      point["year"] = p.year.value;
      point["ratio"] = as_number(ratio_str(p.ratio));
      j["points"].push_back(std::move(point));
    }
    j["mean"] = as_number(ratio_str(stats.mean));
    j["std_dev"] = as_number(ratio_str(stats.std_dev));
    j["cv"] = as_number(ratio_str(stats.cv));
    j["min"] = as_number(ratio_str(stats.min));
    j["max"] = as_number(ratio_str(stats.max));
    j["slope"] = as_number(ratio_str(stats.trend_slope));
    return j.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"year", "ratio"});
  for (const RatioPoint& p : series.points)
    rows.push_back({std::to_string(p.year.value), ratio_str(p.ratio)});
  if (format == OutputFormat::Plain) {
    std::string out = "# numerator: " + series.numerator.slug + "\n";
    out += "# denominator: " + series.denominator.slug + "\n";
    out += layout(rows);
    out += "mean: " + ratio_str(stats.mean) + "\n";
    out += "std_dev: " + ratio_str(stats.std_dev) + "\n";
    out += "cv: " + ratio_str(stats.cv) + "\n";
    out += "min: " + ratio_str(stats.min) + "\n";
    out += "max: " + ratio_str(stats.max) + "\n";
    out += "slope: " + ratio_str(stats.trend_slope) + "\n";
    return out;
  }
  std::string out;
  for (const auto& row : rows) out += csv_row(row);
  out.push_back('\n');
  out += csv_row({"mean", "std_dev", "cv", "min", "max", "slope"});
  out += csv_row({ratio_str(stats.mean), ratio_str(stats.std_dev),
                  ratio_str(stats.cv), ratio_str(stats.min),
                  ratio_str(stats.max), ratio_str(stats.trend_slope)});
  out += "# numerator: " + series.numerator.slug + "\n";
  out += "# denominator: " + series.denominator.slug + "\n";
  return out;
}

inline std::string render_totals(
    const std::vector<std::pair<Year, std::int64_t>>& totals,
    std::optional<double> growth_percent, OutputFormat format) {
  using namespace render;
  std::optional<std::string> growth_str;
  if (growth_percent) growth_str = format_fixed(*growth_percent, 1);
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["totals"] = nlohmann::ordered_json::array();
    for (const auto& [year, total] : totals) {
      nlohmann::ordered_json row;
      row["year"] = year.value;
      row["total"] = total;
      j["totals"].push_back(std::move(row));
    }
    if (growth_str) j["growth_percent"] = as_number(*growth_str);
    return j.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"year", "total"});
  for (const auto& [year, total] : totals)
    rows.push_back({std::to_string(year.value), std::to_string(total)});
  if (format == OutputFormat::Plain) {
    std::string out = layout(rows);
    if (growth_str) out += "growth_percent: " + *growth_str + "\n";
    return out;
  }
  std::string out;
  for (const auto& row : rows) out += csv_row(row);
  if (growth_str) out += "# growth_percent: " + *growth_str + "\n";
  return out;
}

// The full comparison table: raw counts with per-year rounded ratios, then
// the baseline (the average-ratio column) in its `field,exact_ratio,
// rounded_ratio` form, then any discrepancy notes.
inline std::string render_table(
    const CitationTable& table,
    const std::vector<std::vector<std::int64_t>>& yearly_ratios,
    const Baseline& baseline, const std::vector<std::string>& notes,
    OutputFormat format) {
  using namespace render;
  BaselineContext ctx{baseline.reference().slug, baseline.method(),
                      std::nullopt};
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["source"] = table.source_label();
    ctx.add_to(j);
    j["rows"] = nlohmann::ordered_json::array();
    for (std::size_t f = 0; f < table.field_count(); ++f) {
      for (std::size_t y = 0; y < table.year_count(); ++y) {
        nlohmann::ordered_json row;
        row["field"] = table.fields()[f].slug;
        row["year"] = table.years()[y].value;
        row["citations"] = table.count_at(f, y);
        row["ratio"] = yearly_ratios[f][y];
        j["rows"].push_back(std::move(row));
      }
    }
    j["baseline"] = nlohmann::ordered_json::array();
    for (const BaselineEntry& e : baseline.entries()) {
      nlohmann::ordered_json row;
      row["field"] = e.field.slug;
      row["exact_ratio"] = as_number(ratio_str(e.exact));
      row["rounded_ratio"] = e.rounded;
      j["baseline"].push_back(std::move(row));
    }
    j["notes"] = notes;
    return j.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> count_rows;
  count_rows.push_back({"field", "year", "citations", "ratio"});
  for (std::size_t f = 0; f < table.field_count(); ++f)
    for (std::size_t y = 0; y < table.year_count(); ++y)
      count_rows.push_back({table.fields()[f].slug,
                            std::to_string(table.years()[y].value),
                            std::to_string(table.count_at(f, y)),
                            std::to_string(yearly_ratios[f][y])});
  std::vector<std::vector<std::string>> baseline_rows;
  baseline_rows.push_back({"field", "exact_ratio", "rounded_ratio"});
  for (const BaselineEntry& e : baseline.entries())
    baseline_rows.push_back(
        {e.field.slug, ratio_str(e.exact), std::to_string(e.rounded)});
  if (format == OutputFormat::Plain) {
    std::string out = "# source: " + table.source_label() + "\n";
    out += ctx.comments();
    out += layout(count_rows);
    out.push_back('\n');
    out += layout(baseline_rows);
    out += notes_block(notes);
    return out;
  }
  std::string out;
  for (const auto& row : count_rows) out += csv_row(row);
  out.push_back('\n');
  for (const auto& row : baseline_rows) out += csv_row(row);
  out += "# source: " + table.source_label() + "\n";
  out += ctx.comments();
  out += notes_block(notes);
  return out;
}

inline std::string render_normalize(const Baseline& baseline,
                                    std::string_view field_slug,
                                    std::int64_t citations,
                                    NormalizedScore score, RatioMode mode,
                                    OutputFormat format) {
  using namespace render;
  BaselineContext ctx{baseline.reference().slug, baseline.method(), mode};
  const BaselineEntry& entry = baseline.entry(field_slug);
  std::string ratio_used = mode == RatioMode::Rounded
                               ? std::to_string(entry.rounded)
                               : ratio_str(entry.exact);
  std::string score_text = score_str(score.value);
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    ctx.add_to(j);
    j["field"] = std::string(field_slug);
    j["citations"] = citations;
    if (mode == RatioMode::Rounded)
      j["ratio"] = entry.rounded;
    else
      j["ratio"] = as_number(ratio_used);
    j["score"] = as_number(score_text);
    return j.dump(2) + "\n";
  }
  if (format == OutputFormat::Plain) {
    std::string out = ctx.comments();
    out += "field: " + std::string(field_slug) + "\n";
    out += "citations: " + std::to_string(citations) + "\n";
    out += "ratio: " + ratio_used + "\n";
    out += "score: " + score_text + "\n";
    return out;
  }
  std::string out = csv_row({"field", "citations", "ratio", "score"});
  out += csv_row({std::string(field_slug), std::to_string(citations),
                  ratio_used, score_text});
  out += ctx.comments();
  return out;
}

struct EquivalenceRow {
  std::string from;
  std::string to;
  double count = 0.0;
  double equivalent = 0.0;  // unrounded; rendered as an integer
};

inline std::string render_equiv(const Baseline& baseline,
                                const std::vector<EquivalenceRow>& rows,
                                RatioMode mode, OutputFormat format) {
  using namespace render;
  BaselineContext ctx{baseline.reference().slug, baseline.method(), mode};
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    ctx.add_to(j);
    j["rows"] = nlohmann::ordered_json::array();
    for (const EquivalenceRow& r : rows) {
      nlohmann::ordered_json row;
      row["from"] = r.from;
      row["to"] = r.to;
      row["count"] = count_number(r.count);
      row["equivalent"] = round_half_away(r.equivalent);
      j["rows"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"from", "to", "count", "equivalent"});
  for (const EquivalenceRow& r : rows)
    cells.push_back({r.from, r.to, format_shortest(r.count),
                     std::to_string(round_half_away(r.equivalent))});
  if (format == OutputFormat::Plain) return ctx.comments() + layout(cells);
  std::string out;
  for (const auto& row : cells) out += csv_row(row);
  out += ctx.comments();
  return out;
}

inline std::string render_compare(const ComparisonResult& result,
                                  const std::vector<std::string>& notes,
                                  OutputFormat format) {
  using namespace render;
  BaselineContext ctx{result.reference.slug, result.method, result.mode};
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    ctx.add_to(j);
    j["rows"] = nlohmann::ordered_json::array();
    for (const ComparisonRow& r : result.rows) {
      nlohmann::ordered_json row;
      row["rank"] = r.rank;
      row["label"] = r.entity.label;
      row["field"] = r.entity.field.slug;
      row["citations"] = r.entity.citations;
      row["score"] = as_number(score_str(r.score.value));
      j["rows"].push_back(std::move(row));
    }
    j["notes"] = notes;
    return j.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"rank", "label", "field", "citations", "score"});
  for (const ComparisonRow& r : result.rows)
    cells.push_back({std::to_string(r.rank), r.entity.label,
                     r.entity.field.slug, std::to_string(r.entity.citations),
                     score_str(r.score.value)});
  if (format == OutputFormat::Plain)
    return ctx.comments() + layout(cells) + notes_block(notes);
  std::string out;
  for (const auto& row : cells) out += csv_row(row);
  out += ctx.comments();
  out += notes_block(notes);
  return out;
}

}  // namespace citenorm
