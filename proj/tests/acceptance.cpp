// The acceptance gate: every release-blocking behavior in one binary, one
// pass/fail line each. Exits nonzero when anything fails. Display-string
// checks are exact; floating-point checks use near() at 1e-12 except where
// a looser bound is stated inline.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "citenorm/citenorm.hpp"
#include "citenorm/cli.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"
#include "support/random_table.hpp"

using namespace citenorm;
using citenorm::testing::column_sum_oracle;
using citenorm::testing::near;
using citenorm::testing::run_property_cases;
using citenorm::testing::run_roundtrip_cases;
using citenorm::testing::two_pass_oracle;

namespace {

int g_failures = 0;

// Collects the first failing expectation of one criterion.
struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }

  void finish(int index, const std::string& name) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << index << ". " << name
              << "\n";
    if (!ok) {
      ++g_failures;
      std::cout << "      " << detail << "\n";
    }
  }
};

std::string cli_output(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  citenorm::cli::run(args, out, err);
  return out.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

void series_matches(Check& c, const CitationTable& table, const char* num,
                    const char* den, const std::vector<std::string>& printed) {
  RatioSeries series = ratio_series(table, num, den);
  for (std::size_t i = 0; i < printed.size(); ++i) {
    std::string got = format_sig(series.points[i].ratio,
                                 significant_digits(printed[i]));
    c.expect(got == printed[i], std::string(num) + "/" + den + " year " +
                                    std::to_string(series.points[i].year.value) +
                                    ": got " + got + ", want " + printed[i]);
  }
}

void criterion_1_golden_ratio_series() {
  Check c;
  const CitationTable& t = nsf2004_table();
  series_matches(c, t, "clinical-medicine", "physics",
                 {"3.44972521", "3.64739893", "4.0047971", "4.35637854",
                  "4.63871777", "4.89051603"});
  series_matches(c, t, "engineering-technology", "mathematics",
                 {"4.76523768", "5.30674106", "4.83608677", "5.13524462",
                  "4.52140957", "4.72273544"});
  c.finish(1, "both published ratio series reproduce at printed precision");
}

void criterion_2_per_year_columns() {
  Check c;
  const CitationTable& t = nsf2004_table();
  auto yearly = per_year_rounded_ratios(t, "mathematics");
  int matches = 0;
  for (std::size_t f = 0; f < t.field_count(); ++f)
    for (std::size_t y = 0; y < t.year_count(); ++y)
      if (yearly[f][y] == nsf2004_published_yearly_ratio(f, y)) ++matches;
  c.expect(matches == 53,
           "expected 53 of 54 published cells to match, got " +
               std::to_string(matches));
  std::size_t earth = t.field_index("earth-space-sciences");
  c.expect(yearly[earth][0] == 8, "earth/space 1992 should recompute to 8");
  c.expect(nsf2004_published_yearly_ratio(earth, 0) == 5,
           "published earth/space 1992 cell should be 5");
  c.expect(contains(cli_output({"table"}),
                    "# note: recomputed ratio for earth-space-sciences in "
                    "1992 is 8; published table prints 5"),
           "table command should note the earth/space 1992 discrepancy");
  c.finish(2, "per-year rounded ratios match 53 of 54 published cells; the "
              "one discrepancy is noted");
}

void criterion_3_average_column() {
  Check c;
  const CitationTable& t = nsf2004_table();
  Baseline b = compute_baseline(t, "mathematics",
                                BaselineMethod::MeanOfYearlyRatios);
  int matches = 0;
  for (std::size_t f = 0; f < t.field_count(); ++f)
    if (b.entries()[f].rounded == nsf2004_published_average_ratio(f))
      ++matches;
  c.expect(matches == 8, "expected 8 of 9 published averages to match, got " +
                             std::to_string(matches));
  const std::vector<std::int64_t> expected = {78, 78, 8, 15, 19, 10, 5, 1, 13};
  for (std::size_t f = 0; f < expected.size(); ++f)
    c.expect(b.entries()[f].rounded == expected[f],
             b.entries()[f].field.slug + ": got " +
                 std::to_string(b.entries()[f].rounded) + ", want " +
                 std::to_string(expected[f]));
  c.expect(b.entry("earth-space-sciences").rounded == 10,
           "earth/space average should recompute to 10");
  c.expect(contains(cli_output({"table"}),
                    "# note: recomputed average ratio for "
                    "earth-space-sciences is 10; published table prints 9"),
           "table command should note the earth/space average discrepancy");
  c.finish(3, "rounded average ratios match 8 of 9 published values; the "
              "one discrepancy is noted");
}

void criterion_4_comparison_example() {
  Check c;
  const CitationTable& t = nsf2004_table();
  Baseline b = compute_baseline(t, "mathematics",
                                BaselineMethod::MeanOfYearlyRatios);
  std::vector<Entity> entities = {
      Entity{"phys", t.fields()[t.field_index("physics")], 70},
      Entity{"eng", t.fields()[t.field_index("engineering-technology")], 20}};
  ComparisonResult result = compare_entities(b, entities, RatioMode::Rounded);
  c.expect(result.rows.size() == 2, "expected two rows");
  c.expect(result.rows[0].entity.label == "eng" && result.rows[0].rank == 1,
           "the engineer should rank first");
  c.expect(format_fixed(result.rows[0].score.value, 2) == "4.00",
           "engineer score should display as 4.00, got " +
               format_fixed(result.rows[0].score.value, 2));
  c.expect(result.rows[1].entity.label == "phys" && result.rows[1].rank == 2,
           "the physicist should rank second");
  c.expect(format_fixed(result.rows[1].score.value, 2) == "3.68",
           "physicist score should display as 3.68, got " +
               format_fixed(result.rows[1].score.value, 2));
  c.finish(4, "70 physics citations (3.68) rank below 20 engineering "
              "citations (4.00)");
}

void criterion_5_equivalence_example() {
  Check c;
  Baseline b = compute_baseline(nsf2004_table(), "mathematics",
                                BaselineMethod::MeanOfYearlyRatios);
  auto equiv = [&](double count, const char* to) {
    return round_half_away(equivalent_citations(b, count, "mathematics", to,
                                                RatioMode::Rounded));
  };
  c.expect(equiv(1, "chemistry") == 15, "1 maths -> 15 chemistry");
  c.expect(equiv(1, "physics") == 19, "1 maths -> 19 physics");
  c.expect(equiv(1, "clinical-medicine") == 78, "1 maths -> 78 clinical");
  c.expect(equiv(250, "chemistry") == 3750, "250 maths -> 3750 chemistry");
  c.expect(equiv(250, "physics") == 4750, "250 maths -> 4750 physics");
  c.expect(equiv(250, "clinical-medicine") == 19500,
           "250 maths -> 19500 clinical");
  std::string out =
      cli_output({"equiv", "--count", "250", "--from", "mathematics", "--to",
                  "chemistry,physics,clinical-medicine"});
  c.expect(contains(out, "3750") && contains(out, "4750") &&
               contains(out, "19500"),
           "equiv command output should list 3750, 4750, 19500");
  c.finish(5, "unit and 250-citation equivalences convert exactly");
}

void criterion_6_totals_and_growth() {
  Check c;
  const CitationTable& t = nsf2004_table();
  auto totals = yearly_totals(t);
  c.expect(totals.front().second == 1389314,
           "1992 total should be 1389314, got " +
               std::to_string(totals.front().second));
  c.expect(totals.back().second == 1678295,
           "2001 total should be 1678295, got " +
               std::to_string(totals.back().second));
  for (std::size_t y = 0; y < totals.size(); ++y)
    c.expect(totals[y].second == column_sum_oracle(t, y),
             "total disagrees with the hand summation for year index " +
                 std::to_string(y));
  double growth = (static_cast<double>(totals.back().second) /
                       static_cast<double>(totals.front().second) -
                   1.0) *
                  100.0;
  c.expect(format_fixed(growth, 1) == "20.8",
           "growth should display as 20.8, got " + format_fixed(growth, 1));
  c.expect(contains(cli_output({"totals"}), "growth_percent: 20.8"),
           "totals command should report growth_percent: 20.8");
  c.finish(6, "yearly totals match the hand summation; growth reports 20.8%");
}

void criterion_7_property_suite() {
  Check c;
  auto failure = run_property_cases(1000, 0xacce97a11ce);
  c.expect(!failure.has_value(), failure.value_or(""));
  c.finish(7, "randomized invariants hold on 1000 tables at 1e-12");
}

void criterion_8_constancy_diagnostics() {
  Check c;
  const CitationTable& t = nsf2004_table();

  ConstancyStats clinical =
      constancy_stats(ratio_series(t, "clinical-medicine", "physics"));
  c.expect(format_fixed(clinical.cv, 3) == "0.124",
           "clinical/physics cv should display as 0.124, got " +
               format_fixed(clinical.cv, 3));
  c.expect(clinical.cv <= 0.15, "clinical/physics should pass at 0.15");

  ConstancyStats earth =
      constancy_stats(ratio_series(t, "earth-space-sciences", "physics"));
  c.expect(format_fixed(earth.cv, 2) == "0.20",
           "earth/physics cv should display as 0.20, got " +
               format_fixed(earth.cv, 2));
  c.expect(earth.cv > 0.15, "earth/physics should fail at 0.15");

  ValidationReport report = validate_constancy(t, 0.15);
  bool clinical_pass = false;
  bool earth_fail = false;
  for (const PairConstancy& p : report.pairs) {
    if (p.numerator.slug == "clinical-medicine" &&
        p.denominator.slug == "physics")
      clinical_pass = p.pass;
    if (p.numerator.slug == "physics" &&
        p.denominator.slug == "earth-space-sciences")
      earth_fail = !p.pass;
  }
  c.expect(clinical_pass, "report should pass clinical-medicine/physics");
  c.expect(earth_fail, "report should fail physics/earth-space-sciences");
  c.expect(!report.all_pass, "all_pass should be false at 0.15");

  // Independent recomputation from the printed 9-digit ratio strings: the
  // cv must agree to the precision those strings carry.
  {
    RatioSeries series = ratio_series(t, "clinical-medicine", "physics");
    std::vector<std::pair<int, double>> printed;
    for (const RatioPoint& p : series.points)
      printed.emplace_back(p.year.value,
                           std::strtod(format_sig(p.ratio, 9).c_str(),
                                       nullptr));
    auto oracle = two_pass_oracle(printed);
    c.expect(std::fabs(oracle.cv - clinical.cv) < 1e-7,
             "cv from printed ratios should agree to 1e-7");
  }

  // And the online statistics agree with the two-pass oracle on random
  // series, 1e-12 relative.
  std::mt19937_64 rng(0x57a75eed);
  for (int i = 0; i < 300 && c.ok; ++i) {
    CitationTable random = citenorm::testing::random_table(rng);
    auto failure = citenorm::testing::check_stats_oracle(random, rng, i);
    c.expect(!failure.has_value(), failure.value_or(""));
  }
  c.finish(8, "constancy diagnostics: clinical/physics passes (cv 0.124), "
              "earth/physics fails (cv 0.20), stats match the oracle");
}

void criterion_9_ingestion() {
  Check c;
  auto failure = run_roundtrip_cases(500, 0x0c5eed);
  c.expect(!failure.has_value(), failure.value_or(""));

  auto expect_code = [&](const char* name, ErrorCode code) {
    std::string path = std::string(CITENORM_FIXTURE_DIR) + "/" + name;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      c.expect(false, std::string("missing fixture ") + path);
      return;
    }
    try {
      parse_citation_table(in, path);
      c.expect(false, std::string(name) + " should not parse");
    } catch (const Error& e) {
      c.expect(e.code() == code, std::string(name) + ": got error code " +
                                     error_code_name(e.code()) + ", want " +
                                     error_code_name(code));
    }
  };
  expect_code("malformed_row.csv", ErrorCode::MalformedRow);
  expect_code("negative_count.csv", ErrorCode::NegativeCount);
  expect_code("duplicate_cell.csv", ErrorCode::DuplicateCell);
  expect_code("incomplete_table.csv", ErrorCode::IncompleteTable);
  expect_code("empty_input.csv", ErrorCode::EmptyInput);
  c.finish(9, "serialize/parse identity holds on 500 tables; all five "
              "ingestion error classes trigger");
}

}  // namespace

int main() {
  criterion_1_golden_ratio_series();
  criterion_2_per_year_columns();
  criterion_3_average_column();
  criterion_4_comparison_example();
  criterion_5_equivalence_example();
  criterion_6_totals_and_growth();
  criterion_7_property_suite();
  criterion_8_constancy_diagnostics();
  criterion_9_ingestion();
  if (g_failures == 0) {
    std::cout << "all 9 criteria passed\n";
    return EXIT_SUCCESS;
  }
  std::cout << g_failures << " criteria failed\n";
  return EXIT_FAILURE;
}
