#ifndef SCHOLNET_REPORT_HPP_
#define SCHOLNET_REPORT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scholnet/corpus.hpp"
#include "scholnet/fields.hpp"
#include "scholnet/influence.hpp"

namespace scholnet {

// Empirical CDF as plot-ready points. Sorted by value; fractions
// non-decreasing and ending at 1 for non-empty input; tied values
// collapse into the last occurrence.
struct CdfSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (value, cumulative fraction)
};

CdfSeries cdf(std::vector<double> values, std::string label);

// Midpoint convention for even n. Throws Error on empty input.
double median(std::vector<double> values);

// Mean over the values not exceeding the nearest-rank percentile
// (0 < percentile <= 1). Throws Error on empty input or a percentile
// outside the range.
double trimmed_mean(std::vector<double> values, double percentile);

// Spearman rank correlation (average ranks for ties). nullopt when
// fewer than 3 points or either side has zero rank variance.
std::optional<double> spearman(std::span<const double> x,
                               std::span<const double> y);

struct FieldSummary {
  std::string field;
  std::int64_t author_count = 0;
  double median_influence_citations = 0.0;
  double median_influence_papers = 0.0;
  double mean_collaborators_trimmed = 0.0;  // trimmed at the 0.95 percentile
  double median_collaborators = 0.0;
};

// One row per top field with at least one author carrying an influence
// value, sorted ascending by the citations median (field id on ties).
std::vector<FieldSummary> field_summary_table(const Corpus& corpus,
                                              const InfluenceNetwork& citations_net,
                                              const InfluenceNetwork& papers_net,
                                              const FieldAssignment& assignment);

// Per-field CDFs of author birth years, ascending by field id.
std::vector<CdfSeries> birth_year_cdf(const Corpus& corpus,
                                      const FieldAssignment& assignment);

struct FieldCorrelation {
  std::string field;
  std::int64_t sample_size = 0;
  std::optional<double> rho;  // nullopt = undefined (row flagged)
};

// Spearman correlation between author birth year and top-collaborator
// influence, per field. Skipped nodes carry no influence value and are
// excluded.
std::vector<FieldCorrelation> influence_age_correlation(
    const Corpus& corpus, const InfluenceNetwork& net,
    const FieldAssignment& assignment);

// Histogram of authors-per-paper over retained papers.
std::map<int, std::int64_t> team_size_distribution(const Corpus& corpus);

}  // namespace scholnet

#endif  // SCHOLNET_REPORT_HPP_
