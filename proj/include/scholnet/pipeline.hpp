#ifndef SCHOLNET_PIPELINE_HPP_
#define SCHOLNET_PIPELINE_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "scholnet/corpus.hpp"
#include "scholnet/counterfactual.hpp"
#include "scholnet/influence.hpp"
#include "scholnet/metrics.hpp"
#include "scholnet/report.hpp"

namespace scholnet {

struct PipelineConfig {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  FilterConfig filter;
  WeightKind weight = WeightKind::kCitations;
  int threads = 1;
};

// Loads papers.jsonl (and citations.jsonl when present) from the input
// directory and applies the filter.
Corpus load_and_filter(const PipelineConfig& config);

// CSV writers shared by the CLI stages and the full pipeline. All emit
// '\n' line endings and 12-significant-digit reals, so equal inputs give
// byte-identical files.
void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<AuthorMetrics>& rows);
void write_counterfactual_csv(const std::filesystem::path& path,
                              const std::vector<CounterfactualRecord>& records);
void write_cdf_csv(const std::filesystem::path& path, const CdfSeries& series);
void write_field_summary_csv(const std::filesystem::path& path,
                             const std::vector<FieldSummary>& table);

// Field ids become file-name fragments; anything outside [A-Za-z0-9._-]
// is replaced.
std::string sanitize_for_filename(std::string_view id);

// Runs ingest -> fields -> networks (both kinds) -> metrics ->
// counterfactuals -> report over the input directory and writes every
// CSV plus the summary.json manifest into the output directory. The CSV
// bytes depend only on the input files and the filter configuration,
// never on the thread count. Returns the manifest as a JSON string.
std::string run_report_pipeline(const PipelineConfig& config);

}  // namespace scholnet

#endif  // SCHOLNET_PIPELINE_HPP_
