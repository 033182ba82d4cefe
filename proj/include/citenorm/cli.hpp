#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "citenorm/baseline.hpp"
#include "citenorm/compare.hpp"
#include "citenorm/datasets.hpp"
#include "citenorm/errors.hpp"
#include "citenorm/ratios.hpp"
#include "citenorm/render.hpp"
#include "citenorm/table.hpp"

namespace citenorm::cli {

// Options shared by every subcommand.
struct CommonOptions {
  std::string data = std::string(kNsf2004Name);
  std::string reference;  // empty: field with the smallest pooled total
  std::string method = "mean";
  std::string mode = "rounded";
  std::string format = "plain";
};

namespace detail {

inline void add_common_options(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--data", opt.data,
                  "CSV file of field,year,citations rows, or the bundled "
                  "dataset name 'nsf2004'")
      ->capture_default_str();
  cmd->add_option("--reference", opt.reference,
                  "reference field (default: smallest pooled total)");
  cmd->add_option("--method", opt.method, "baseline aggregation")
      ->check(CLI::IsMember({"mean", "pooled"}))
      ->capture_default_str();
  cmd->add_option("--mode", opt.mode, "baseline ratios used in conversions")
      ->check(CLI::IsMember({"rounded", "exact"}))
      ->capture_default_str();
  cmd->add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"plain", "csv", "json"}))
      ->capture_default_str();
}

inline OutputFormat to_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  return OutputFormat::Plain;
}

inline BaselineMethod to_method(const std::string& name) {
  return name == "pooled" ? BaselineMethod::PooledTotals
                          : BaselineMethod::MeanOfYearlyRatios;
}

inline RatioMode to_mode(const std::string& name) {
  return name == "exact" ? RatioMode::Exact : RatioMode::Rounded;
}

inline std::string reference_slug(const CitationTable& table,
                                  const CommonOptions& opt) {
  if (opt.reference.empty()) return default_reference_field(table).slug;
  return resolve_field(table, opt.reference).slug;
}

// `label:field:count`. Labels may not contain colons; field names may, so
// the field part runs from the first colon to the last.
inline Entity parse_entity(const CitationTable& table,
                           const std::string& token) {
  std::size_t first = token.find(':');
  std::size_t last = token.rfind(':');
  if (first == std::string::npos || first == last)
    fail(ErrorCode::InvalidArgument,
         "entity '" + token + "' is not of the form label:field:count");
  std::string label = token.substr(0, first);
  std::string field_text = token.substr(first + 1, last - first - 1);
  std::string count_text = token.substr(last + 1);
  if (label.empty())
    fail(ErrorCode::InvalidArgument,
         "entity '" + token + "' has an empty label");
  std::int64_t count = 0;
  const char* begin = count_text.data();
  const char* end = begin + count_text.size();
  auto [ptr, ec] = std::from_chars(begin, end, count);
  if (ec != std::errc() || ptr != end || count_text.empty())
    fail(ErrorCode::InvalidArgument, "entity '" + token + "' has count '" +
                                         count_text +
                                         "', which is not an integer");
  return Entity{std::move(label), resolve_field(table, field_text), count};
}

inline std::vector<std::string> split_field_list(const std::string& list) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    std::string item = comma == std::string::npos
                           ? list.substr(pos)
                           : list.substr(pos, comma - pos);
    if (item.empty())
      fail(ErrorCode::InvalidArgument,
           "field list '" + list + "' contains an empty entry");
    fields.push_back(std::move(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return fields;
}

// Notes are only emitted where published reference values exist: the
// bundled dataset, normalized to mathematics. The per-year columns were
// published as plain yearly quotients, the average column as their mean, so
// the average check additionally requires the mean method.
inline std::vector<std::string> table_notes(
    const CitationTable& table, const CommonOptions& opt,
    std::string_view reference,
    const std::vector<std::vector<std::int64_t>>& yearly,
    const Baseline& baseline) {
  std::vector<std::string> notes;
  if (opt.data != kNsf2004Name || reference != "mathematics") return notes;
  for (std::size_t f = 0; f < table.field_count(); ++f) {
    for (std::size_t y = 0; y < table.year_count(); ++y) {
      std::int64_t published = nsf2004_published_yearly_ratio(f, y);
      if (yearly[f][y] != published)
        notes.push_back("recomputed ratio for " + table.fields()[f].slug +
                        " in " + std::to_string(table.years()[y].value) +
                        " is " + std::to_string(yearly[f][y]) +
                        "; published table prints " +
                        std::to_string(published));
    }
  }
  if (baseline.method() == BaselineMethod::MeanOfYearlyRatios) {
    for (std::size_t f = 0; f < table.field_count(); ++f) {
      std::int64_t published = nsf2004_published_average_ratio(f);
      if (baseline.entries()[f].rounded != published)
        notes.push_back("recomputed average ratio for " +
                        table.fields()[f].slug + " is " +
                        std::to_string(baseline.entries()[f].rounded) +
                        "; published table prints " +
                        std::to_string(published));
    }
  }
  return notes;
}

inline constexpr std::string_view kCompareCaveat =
    "scores apply field-level baselines; very small or very unusual "
    "citation counts are not well described by field averages";

}  // namespace detail

// Parses `args` (no program name) and executes one subcommand. Output goes
// to `out`, diagnostics to `err`. Returns the process exit status: 0 on
// success, 1 on a domain error, 2 on a usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  using detail::to_format;
  CLI::App app{"Cross-field citation impact: constant-ratio diagnostics and "
               "reference-field normalization"};
  app.name("citenorm");
  app.require_subcommand(1);

  CommonOptions validate_opt;
  double cv_threshold = 0.15;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "check pairwise ratio constancy across years");
  detail::add_common_options(validate_cmd, validate_opt);
  validate_cmd
      ->add_option("--cv-threshold", cv_threshold,
                   "max coefficient of variation for a pair to pass")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  CommonOptions table_opt;
  CLI::App* table_cmd = app.add_subcommand(
      "table", "raw counts with per-year and average ratios to the reference");
  detail::add_common_options(table_cmd, table_opt);

  CommonOptions ratio_opt;
  std::string ratio_num;
  std::string ratio_den;
  CLI::App* ratio_cmd = app.add_subcommand(
      "ratio", "per-year ratio series between two fields, with dispersion");
  detail::add_common_options(ratio_cmd, ratio_opt);
  ratio_cmd->add_option("--num", ratio_num, "numerator field")->required();
  ratio_cmd->add_option("--den", ratio_den, "denominator field")->required();

  CommonOptions normalize_opt;
  std::string normalize_field;
  std::int64_t normalize_citations = 0;
  CLI::App* normalize_cmd = app.add_subcommand(
      "normalize", "divide a citation count by its field's baseline ratio");
  detail::add_common_options(normalize_cmd, normalize_opt);
  normalize_cmd->add_option("--field", normalize_field, "the count's field")
      ->required();
  normalize_cmd
      ->add_option("--citations", normalize_citations, "citation count")
      ->required();

  CommonOptions equiv_opt;
  double equiv_count = 0.0;
  std::string equiv_from;
  std::string equiv_to;
  CLI::App* equiv_cmd = app.add_subcommand(
      "equiv", "express a citation count in other fields' units");
  detail::add_common_options(equiv_cmd, equiv_opt);
  equiv_cmd->add_option("--count", equiv_count, "citation count to convert")
      ->required();
  equiv_cmd->add_option("--from", equiv_from, "field the count is in")
      ->required();
  equiv_cmd
      ->add_option("--to", equiv_to, "target field, or a comma-separated list")
      ->required();

  CommonOptions compare_opt;
  std::vector<std::string> compare_tokens;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "rank entities given as label:field:count by normalized "
                 "impact");
  detail::add_common_options(compare_cmd, compare_opt);
  compare_cmd->add_option("entities", compare_tokens, "label:field:count");

  CommonOptions totals_opt;
  CLI::App* totals_cmd =
      app.add_subcommand("totals", "citations per year summed over fields");
  detail::add_common_options(totals_cmd, totals_opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (validate_cmd->parsed()) {
      CitationTable table = load_table(validate_opt.data);
      ValidationReport report = validate_constancy(table, cv_threshold);
      out << render_validation(report, to_format(validate_opt.format));
    } else if (table_cmd->parsed()) {
      CitationTable table = load_table(table_opt.data);
      std::string reference = detail::reference_slug(table, table_opt);
      auto yearly = per_year_rounded_ratios(table, reference);
      Baseline baseline = compute_baseline(table, reference,
                                           detail::to_method(table_opt.method));
      std::vector<std::string> notes =
          detail::table_notes(table, table_opt, reference, yearly, baseline);
      out << render_table(table, yearly, baseline, notes,
                          to_format(table_opt.format));
    } else if (ratio_cmd->parsed()) {
      CitationTable table = load_table(ratio_opt.data);
      RatioSeries series =
          ratio_series(table, resolve_field(table, ratio_num).slug,
                       resolve_field(table, ratio_den).slug);
      ConstancyStats stats = constancy_stats(series);
      out << render_ratio(series, stats, to_format(ratio_opt.format));
    } else if (normalize_cmd->parsed()) {
      CitationTable table = load_table(normalize_opt.data);
      Baseline baseline = compute_baseline(
          table, detail::reference_slug(table, normalize_opt),
          detail::to_method(normalize_opt.method));
      RatioMode mode = detail::to_mode(normalize_opt.mode);
      const FieldId& field = resolve_field(table, normalize_field);
      NormalizedScore score =
          normalize(baseline, field.slug, normalize_citations, mode);
      out << render_normalize(baseline, field.slug, normalize_citations, score,
                              mode, to_format(normalize_opt.format));
    } else if (equiv_cmd->parsed()) {
      CitationTable table = load_table(equiv_opt.data);
      Baseline baseline =
          compute_baseline(table, detail::reference_slug(table, equiv_opt),
                           detail::to_method(equiv_opt.method));
      RatioMode mode = detail::to_mode(equiv_opt.mode);
      std::string from = resolve_field(table, equiv_from).slug;
      std::vector<EquivalenceRow> rows;
      for (const std::string& target : detail::split_field_list(equiv_to)) {
        std::string to = resolve_field(table, target).slug;
        rows.push_back({from, to, equiv_count,
                        equivalent_citations(baseline, equiv_count, from, to,
                                             mode)});
      }
      out << render_equiv(baseline, rows, mode, to_format(equiv_opt.format));
    } else if (compare_cmd->parsed()) {
      CitationTable table = load_table(compare_opt.data);
      Baseline baseline =
          compute_baseline(table, detail::reference_slug(table, compare_opt),
                           detail::to_method(compare_opt.method));
      RatioMode mode = detail::to_mode(compare_opt.mode);
      std::vector<Entity> entities;
      entities.reserve(compare_tokens.size());
      for (const std::string& token : compare_tokens)
        entities.push_back(detail::parse_entity(table, token));
      ComparisonResult result = compare_entities(baseline, entities, mode);
      std::vector<std::string> notes{std::string(detail::kCompareCaveat)};
      out << render_compare(result, notes, to_format(compare_opt.format));
    } else if (totals_cmd->parsed()) {
      CitationTable table = load_table(totals_opt.data);
      auto totals = yearly_totals(table);
      std::optional<double> growth;
      if (totals.size() >= 2 && totals.front().second > 0) {
        growth = (static_cast<double>(totals.back().second) /
                      static_cast<double>(totals.front().second) -
                  1.0) *
                 100.0;
      }
      out << render_totals(totals, growth, to_format(totals_opt.format));
    }
    return 0;
  } catch (const Error& e) {
    err << "error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error[Internal]: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace citenorm::cli
