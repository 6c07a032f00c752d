#include "scholnet/report.hpp"

#include <algorithm>
#include <cmath>

#include "scholnet/errors.hpp"

namespace scholnet {

CdfSeries cdf(std::vector<double> values, std::string label) {
  CdfSeries series;
  series.label = std::move(label);
  if (values.empty()) return series;
  std::sort(values.begin(), values.end());
  auto n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool last_of_run = i + 1 == values.size() || values[i + 1] != values[i];
    if (last_of_run) {
      series.points.emplace_back(values[i], static_cast<double>(i + 1) / n);
    }
  }
  return series;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error("median of empty input");
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double trimmed_mean(std::vector<double> values, double percentile) {
  if (values.empty()) throw Error("trimmed_mean of empty input");
  if (!(percentile > 0.0) || percentile > 1.0) {
    throw Error("trimmed_mean percentile must be in (0, 1]");
  }
  std::sort(values.begin(), values.end());
  // Nearest-rank percentile: the value at rank ceil(p * n), 1-based.
  auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(percentile * n));
  if (rank < 1) rank = 1;
  if (rank > values.size()) rank = values.size();
  double threshold = values[rank - 1];
  double sum = 0.0;
  std::size_t count = 0;
  for (double v : values) {
    if (v > threshold) break;
    sum += v;
    ++count;
  }
  return sum / static_cast<double>(count);
}

namespace {

// Average ranks (1-based) with ties sharing the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values) {
  std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::optional<double> spearman(std::span<const double> x,
                               std::span<const double> y) {
  if (x.size() != y.size()) throw Error("spearman inputs differ in length");
  std::size_t n = x.size();
  if (n < 3) return std::nullopt;
  std::vector<double> rx = average_ranks(x);
  std::vector<double> ry = average_ranks(y);
  double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double cov = 0.0, var_x = 0.0, var_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = rx[i] - mean;
    double dy = ry[i] - mean;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0) return std::nullopt;
  return cov / std::sqrt(var_x * var_y);
}

namespace {

// Influence samples per field: authors whose total under the network's
// kind is zero carry no influence value and are excluded.
std::map<std::string, std::vector<double>> influence_by_field(
    const Corpus& corpus, const InfluenceNetwork& net,
    const FieldAssignment& assignment) {
  std::map<std::string, std::vector<double>> samples;
  for (std::size_t a = 0; a < corpus.author_count(); ++a) {
    auto index = static_cast<std::int32_t>(a);
    const auto& field = assignment.of(index);
    if (!field || net.is_skipped(index)) continue;
    samples[*field].push_back(net.top_influence_index(index));
  }
  return samples;
}

}  // namespace

std::vector<FieldSummary> field_summary_table(const Corpus& corpus,
                                              const InfluenceNetwork& citations_net,
                                              const InfluenceNetwork& papers_net,
                                              const FieldAssignment& assignment) {
  auto by_citations = influence_by_field(corpus, citations_net, assignment);
  auto by_papers = influence_by_field(corpus, papers_net, assignment);

  std::map<std::string, std::vector<double>> collaborators;
  std::map<std::string, std::int64_t> author_counts;
  for (std::size_t a = 0; a < corpus.author_count(); ++a) {
    auto index = static_cast<std::int32_t>(a);
    const auto& field = assignment.of(index);
    if (!field) continue;
    ++author_counts[*field];
    collaborators[*field].push_back(
        static_cast<double>(corpus.collaborator_indices(index).size()));
  }

  std::vector<FieldSummary> table;
  for (const auto& [field, cit_samples] : by_citations) {
    auto papers_it = by_papers.find(field);
    if (papers_it == by_papers.end()) continue;
    FieldSummary row;
    row.field = field;
    row.author_count = author_counts[field];
    row.median_influence_citations = median(cit_samples);
    row.median_influence_papers = median(papers_it->second);
    row.mean_collaborators_trimmed = trimmed_mean(collaborators[field], 0.95);
    row.median_collaborators = median(collaborators[field]);
    table.push_back(std::move(row));
  }
  std::sort(table.begin(), table.end(),
            [](const FieldSummary& a, const FieldSummary& b) {
              if (a.median_influence_citations != b.median_influence_citations) {
                return a.median_influence_citations < b.median_influence_citations;
              }
              return a.field < b.field;
            });
  return table;
}

std::vector<CdfSeries> birth_year_cdf(const Corpus& corpus,
                                      const FieldAssignment& assignment) {
  std::map<std::string, std::vector<double>> years;
  for (std::size_t a = 0; a < corpus.author_count(); ++a) {
    auto index = static_cast<std::int32_t>(a);
    const auto& field = assignment.of(index);
    if (!field) continue;
    years[*field].push_back(static_cast<double>(corpus.author_at(index).birth_year));
  }
  std::vector<CdfSeries> result;
  result.reserve(years.size());
  for (auto& [field, values] : years) {
    result.push_back(cdf(std::move(values), field));
  }
  return result;
}

std::vector<FieldCorrelation> influence_age_correlation(
    const Corpus& corpus, const InfluenceNetwork& net,
    const FieldAssignment& assignment) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> samples;
  for (std::size_t a = 0; a < corpus.author_count(); ++a) {
    auto index = static_cast<std::int32_t>(a);
    const auto& field = assignment.of(index);
    if (!field || net.is_skipped(index)) continue;
    auto& [years, influences] = samples[*field];
    years.push_back(static_cast<double>(corpus.author_at(index).birth_year));
    influences.push_back(net.top_influence_index(index));
  }
  std::vector<FieldCorrelation> result;
  for (const auto& [field, pair] : samples) {
    FieldCorrelation row;
    row.field = field;
    row.sample_size = static_cast<std::int64_t>(pair.first.size());
    row.rho = spearman(pair.first, pair.second);
    result.push_back(std::move(row));
  }
  return result;
}

std::map<int, std::int64_t> team_size_distribution(const Corpus& corpus) {
  std::map<int, std::int64_t> histogram;
  for (const auto& paper : corpus.papers()) {
    ++histogram[static_cast<int>(paper.author_ids.size())];
  }
  return histogram;
}

}  // namespace scholnet
