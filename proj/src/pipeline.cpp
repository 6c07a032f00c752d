#include "scholnet/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>

#include "json.hpp"
#include "scholnet/csv.hpp"
#include "scholnet/errors.hpp"
#include "scholnet/fields.hpp"
#include "scholnet/jsonl.hpp"

namespace scholnet {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::string field_or_empty(const std::optional<std::string>& field) {
  return field ? *field : std::string();
}

}  // namespace

Corpus load_and_filter(const PipelineConfig& config) {
  auto papers = resolve_input_file(config.input_dir, "papers.jsonl", true);
  auto citations_path = resolve_input_file(config.input_dir, "citations.jsonl", false);
  std::optional<std::filesystem::path> citations;
  if (!citations_path.empty()) citations = citations_path;
  LoadOptions options;
  options.threads = config.threads;
  Corpus loaded = load_corpus(papers, citations, options);
  return filter_corpus(loaded, config.filter);
}

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<AuthorMetrics>& rows) {
  auto out = open_output(path);
  out << "author_id,field,papers,citations,h_sequence\n";
  for (const auto& row : rows) {
    out << csv_escape(row.author_id) << ',' << csv_escape(field_or_empty(row.field))
        << ',' << row.papers << ',' << row.citations << ',' << row.h.to_string()
        << '\n';
  }
}

void write_counterfactual_csv(const std::filesystem::path& path,
                              const std::vector<CounterfactualRecord>& records) {
  auto out = open_output(path);
  out << "author_id,field,orig_papers,red_papers,orig_citations,red_citations,"
         "orig_h,red_h,orig_rank,red_rank,top_collaborator\n";
  for (const auto& r : records) {
    out << csv_escape(r.author_id) << ',' << csv_escape(field_or_empty(r.field))
        << ',' << r.original.papers << ',' << r.reduced.papers << ','
        << r.original.citations << ',' << r.reduced.citations << ','
        << r.original.h.to_string() << ',' << r.reduced.h.to_string() << ','
        << r.original.h_rank << ',' << r.reduced.h_rank << ','
        << csv_escape(field_or_empty(r.top_collaborator)) << '\n';
  }
}

void write_cdf_csv(const std::filesystem::path& path, const CdfSeries& series) {
  auto out = open_output(path);
  out << "value,fraction\n";
  for (const auto& [value, fraction] : series.points) {
    out << format_real(value) << ',' << format_real(fraction) << '\n';
  }
}

void write_field_summary_csv(const std::filesystem::path& path,
                             const std::vector<FieldSummary>& table) {
  auto out = open_output(path);
  out << "field,author_count,median_influence_citations,median_influence_papers,"
         "mean_collaborators_trimmed,median_collaborators\n";
  for (const auto& row : table) {
    out << csv_escape(row.field) << ',' << row.author_count << ','
        << format_real(row.median_influence_citations) << ','
        << format_real(row.median_influence_papers) << ','
        << format_real(row.mean_collaborators_trimmed) << ','
        << format_real(row.median_collaborators) << '\n';
  }
}

std::string sanitize_for_filename(std::string_view id) {
  std::string out;
  out.reserve(id.size());
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    out.push_back(ok ? c : '_');
  }
  return out;
}

namespace {

void write_correlations_csv(const std::filesystem::path& path,
                            const std::vector<FieldCorrelation>& rows) {
  auto out = open_output(path);
  out << "field,n,spearman_rho,defined\n";
  for (const auto& row : rows) {
    out << csv_escape(row.field) << ',' << row.sample_size << ','
        << (row.rho ? format_real(*row.rho) : std::string()) << ','
        << (row.rho ? 1 : 0) << '\n';
  }
}

void write_team_size_csv(const std::filesystem::path& path,
                         const std::map<int, std::int64_t>& histogram) {
  auto out = open_output(path);
  out << "team_size,count\n";
  for (const auto& [size, count] : histogram) {
    out << size << ',' << count << '\n';
  }
}

// Per-field samples of one per-author statistic, keyed ascending.
std::map<std::string, std::vector<double>> samples_by_field(
    const Corpus& corpus, const FieldAssignment& assignment,
    const std::function<std::optional<double>(std::int32_t)>& value_of) {
  std::map<std::string, std::vector<double>> samples;
  for (std::size_t a = 0; a < corpus.author_count(); ++a) {
    auto index = static_cast<std::int32_t>(a);
    const auto& field = assignment.of(index);
    if (!field) continue;
    if (auto value = value_of(index)) samples[*field].push_back(*value);
  }
  return samples;
}

}  // namespace

std::string run_report_pipeline(const PipelineConfig& config) {
  std::filesystem::create_directories(config.output_dir);

  Corpus corpus = load_and_filter(config);
  auto fields_path = resolve_input_file(config.input_dir, "fields.jsonl", true);
  FieldHierarchy hierarchy = load_field_hierarchy(fields_path);
  FieldAssignment assignment = assign_fields(hierarchy, corpus, config.threads);

  InfluenceNetwork citations_net =
      build_influence_network(corpus, WeightKind::kCitations, config.threads);
  InfluenceNetwork papers_net =
      build_influence_network(corpus, WeightKind::kPapers, config.threads);

  // Per-author metrics.
  auto metrics = compute_author_metrics(corpus, &assignment, config.threads);
  write_metrics_csv(config.output_dir / "metrics.csv", metrics);

  // Counterfactuals under both top-collaborator definitions.
  auto cf_citations = counterfactual_all(corpus, citations_net, assignment,
                                         config.threads);
  write_counterfactual_csv(config.output_dir / "counterfactual_citations.csv",
                           cf_citations);
  auto cf_papers = counterfactual_all(corpus, papers_net, assignment,
                                      config.threads);
  write_counterfactual_csv(config.output_dir / "counterfactual_papers.csv",
                           cf_papers);

  // Field summaries and distribution data.
  auto summary_table = field_summary_table(corpus, citations_net, papers_net,
                                           assignment);
  write_field_summary_csv(config.output_dir / "field_summary.csv", summary_table);

  auto influence_samples = [&](const InfluenceNetwork& net) {
    return samples_by_field(corpus, assignment,
                            [&](std::int32_t a) -> std::optional<double> {
                              if (net.is_skipped(a)) return std::nullopt;
                              return net.top_influence_index(a);
                            });
  };
  for (auto& [field, values] : influence_samples(citations_net)) {
    write_cdf_csv(config.output_dir /
                      ("cdf_influence_citations_" + sanitize_for_filename(field) + ".csv"),
                  cdf(std::move(values), field));
  }
  for (auto& [field, values] : influence_samples(papers_net)) {
    write_cdf_csv(config.output_dir /
                      ("cdf_influence_papers_" + sanitize_for_filename(field) + ".csv"),
                  cdf(std::move(values), field));
  }
  for (const auto& series : birth_year_cdf(corpus, assignment)) {
    write_cdf_csv(config.output_dir /
                      ("cdf_birth_year_" + sanitize_for_filename(series.label) + ".csv"),
                  series);
  }
  auto collaborator_samples = samples_by_field(
      corpus, assignment, [&](std::int32_t a) -> std::optional<double> {
        return static_cast<double>(corpus.collaborator_indices(a).size());
      });
  for (auto& [field, values] : collaborator_samples) {
    write_cdf_csv(config.output_dir /
                      ("cdf_collaborators_" + sanitize_for_filename(field) + ".csv"),
                  cdf(std::move(values), field));
  }

  auto correlations = influence_age_correlation(corpus, citations_net, assignment);
  write_correlations_csv(config.output_dir / "correlations.csv", correlations);

  write_team_size_csv(config.output_dir / "team_size.csv",
                      team_size_distribution(corpus));

  // Authors per field (plot-ready counts with fractions).
  {
    auto out = open_output(config.output_dir / "field_authors.csv");
    out << "field,authors,fraction\n";
    std::map<std::string, std::int64_t> counts;
    std::int64_t assigned = 0;
    for (std::size_t a = 0; a < corpus.author_count(); ++a) {
      const auto& field = assignment.of(static_cast<std::int32_t>(a));
      if (!field) continue;
      ++counts[*field];
      ++assigned;
    }
    for (const auto& [field, count] : counts) {
      double fraction = assigned > 0 ? static_cast<double>(count) /
                                           static_cast<double>(assigned)
                                     : 0.0;
      out << csv_escape(field) << ',' << count << ',' << format_real(fraction)
          << '\n';
    }
  }

  // Parallel-coordinates data: per-field summary values, raw and
  // normalized by each column's maximum.
  {
    auto out = open_output(config.output_dir / "parallel_coordinates.csv");
    out << "field,mean_collaborators_trimmed,median_influence_citations,"
           "median_influence_papers,collaborators_norm,influence_citations_norm,"
           "influence_papers_norm\n";
    double max_collab = 0.0, max_cit = 0.0, max_pap = 0.0;
    for (const auto& row : summary_table) {
      max_collab = std::max(max_collab, row.mean_collaborators_trimmed);
      max_cit = std::max(max_cit, row.median_influence_citations);
      max_pap = std::max(max_pap, row.median_influence_papers);
    }
    auto norm = [](double v, double max) { return max > 0.0 ? v / max : 0.0; };
    for (const auto& row : summary_table) {
      out << csv_escape(row.field) << ','
          << format_real(row.mean_collaborators_trimmed) << ','
          << format_real(row.median_influence_citations) << ','
          << format_real(row.median_influence_papers) << ','
          << format_real(norm(row.mean_collaborators_trimmed, max_collab)) << ','
          << format_real(norm(row.median_influence_citations, max_cit)) << ','
          << format_real(norm(row.median_influence_papers, max_pap)) << '\n';
    }
  }

  // Run manifest.
  ordered_json manifest;
  manifest["config"] = {{"input", config.input_dir.string()},
                        {"output", config.output_dir.string()},
                        {"year_from", config.filter.year_from},
                        {"year_to", config.filter.year_to},
                        {"max_authors", config.filter.max_team_size},
                        {"min_papers", config.filter.min_papers},
                        {"min_citations", config.filter.min_citations},
                        {"threads", config.threads}};
  const auto& stats = corpus.stats();
  manifest["counts"] = {
      {"papers_parsed", stats.papers_parsed},
      {"papers_retained", corpus.paper_count()},
      {"authors_retained", corpus.author_count()},
      {"papers_dropped_year", stats.papers_dropped_year},
      {"papers_dropped_team_size", stats.papers_dropped_team_size},
      {"authors_dropped", stats.authors_dropped},
      {"duplicate_authors_collapsed", stats.duplicate_authors_collapsed},
      {"citation_edges_applied", stats.citation_edges_applied},
      {"citation_edges_dropped", stats.citation_edges_dropped},
      {"fields", hierarchy.node_count()},
      {"top_fields", hierarchy.top_fields().size()}};
  manifest["skipped_nodes"] = {
      {"citations", citations_net.skipped_nodes().size()},
      {"papers", papers_net.skipped_nodes().size()}};
  manifest["decisions"] = {
      {"citation_source", stats.citation_counts_from_edges ? "edges" : "inline"},
      {"correlation", "spearman"},
      {"collaborator_average", "trimmed_mean_p95"},
      {"reduced_ranking", "simultaneous"},
      {"counterfactual_networks", {"citations", "papers"}}};
  std::string text = manifest.dump(2);
  {
    auto out = open_output(config.output_dir / "summary.json");
    out << text << '\n';
  }
  return text;
}

}  // namespace scholnet
