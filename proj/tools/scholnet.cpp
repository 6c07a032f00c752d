// Command-line front end for the coauthorship influence analytics
// pipeline. Subcommands mirror the pipeline stages; `report` runs all of
// them and `synth` generates reproducible test corpora.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scholnet/corpus.hpp"
#include "scholnet/counterfactual.hpp"
#include "scholnet/csv.hpp"
#include "scholnet/errors.hpp"
#include "scholnet/fields.hpp"
#include "scholnet/influence.hpp"
#include "scholnet/jsonl.hpp"
#include "scholnet/metrics.hpp"
#include "scholnet/pipeline.hpp"
#include "scholnet/synth.hpp"

namespace {

using scholnet::PipelineConfig;
using ordered_json = nlohmann::ordered_json;

struct SharedOptions {
  std::string input = ".";
  std::string output = ".";
  scholnet::FilterConfig filter;
  std::string weight = "citations";
  std::uint64_t seed = 42;
  int threads = 1;
};

void add_shared_flags(CLI::App* cmd, SharedOptions& opts) {
  cmd->add_option("--input", opts.input, "Input directory");
  cmd->add_option("--output", opts.output, "Output directory");
  cmd->add_option("--year-from", opts.filter.year_from, "First retained year");
  cmd->add_option("--year-to", opts.filter.year_to, "Last retained year");
  cmd->add_option("--max-authors", opts.filter.max_team_size,
                  "Drop papers with more authors than this");
  cmd->add_option("--min-papers", opts.filter.min_papers,
                  "Minimum papers per retained author");
  cmd->add_option("--min-citations", opts.filter.min_citations,
                  "Minimum citations per retained author");
  cmd->add_option("--weight", opts.weight,
                  "Influence weight kind: citations|papers")
      ->check(CLI::IsMember({"citations", "papers"}));
  cmd->add_option("--seed", opts.seed, "Random seed (synth)");
  cmd->add_option("--threads", opts.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
}

PipelineConfig pipeline_config(const SharedOptions& opts) {
  PipelineConfig config;
  config.input_dir = opts.input;
  config.output_dir = opts.output;
  config.filter = opts.filter;
  config.weight = *scholnet::weight_kind_from_name(opts.weight);
  config.threads = opts.threads;
  return config;
}

void write_summary(const std::filesystem::path& output_dir,
                   const SharedOptions& opts, ordered_json extra) {
  ordered_json manifest;
  manifest["config"] = {{"input", opts.input},
                        {"output", opts.output},
                        {"year_from", opts.filter.year_from},
                        {"year_to", opts.filter.year_to},
                        {"max_authors", opts.filter.max_team_size},
                        {"min_papers", opts.filter.min_papers},
                        {"min_citations", opts.filter.min_citations},
                        {"weight", opts.weight},
                        {"seed", opts.seed},
                        {"threads", opts.threads}};
  for (auto& [key, value] : extra.items()) manifest[key] = value;
  std::ofstream out(output_dir / "summary.json", std::ios::binary);
  if (!out) throw scholnet::Error("cannot write summary.json");
  out << manifest.dump(2) << '\n';
}

ordered_json corpus_counts(const scholnet::Corpus& corpus) {
  const auto& stats = corpus.stats();
  return {{"papers_parsed", stats.papers_parsed},
          {"papers_retained", corpus.paper_count()},
          {"authors_retained", corpus.author_count()},
          {"papers_dropped_year", stats.papers_dropped_year},
          {"papers_dropped_team_size", stats.papers_dropped_team_size},
          {"authors_dropped", stats.authors_dropped},
          {"duplicate_authors_collapsed", stats.duplicate_authors_collapsed},
          {"citation_edges_applied", stats.citation_edges_applied},
          {"citation_edges_dropped", stats.citation_edges_dropped},
          {"citation_source",
           stats.citation_counts_from_edges ? "edges" : "inline"}};
}

int run_ingest(const SharedOptions& opts) {
  auto config = pipeline_config(opts);
  std::filesystem::create_directories(config.output_dir);
  scholnet::Corpus corpus = scholnet::load_and_filter(config);

  std::ofstream out(config.output_dir / "authors.csv", std::ios::binary);
  if (!out) throw scholnet::Error("cannot write authors.csv");
  out << "author_id,papers,citations,birth_year,collaborators\n";
  for (std::size_t a = 0; a < corpus.author_count(); ++a) {
    const auto& author = corpus.author_at(static_cast<std::int32_t>(a));
    out << scholnet::csv_escape(author.id) << ',' << author.paper_indices.size()
        << ',' << author.citation_total << ',' << author.birth_year << ','
        << corpus.collaborator_indices(static_cast<std::int32_t>(a)).size()
        << '\n';
  }
  write_summary(config.output_dir, opts, {{"counts", corpus_counts(corpus)}});
  std::printf("ingest: %zu papers, %zu authors retained\n", corpus.paper_count(),
              corpus.author_count());
  return 0;
}

int run_fields(const SharedOptions& opts) {
  auto config = pipeline_config(opts);
  std::filesystem::create_directories(config.output_dir);
  scholnet::Corpus corpus = scholnet::load_and_filter(config);
  auto hierarchy = scholnet::load_field_hierarchy(
      scholnet::resolve_input_file(config.input_dir, "fields.jsonl", true));
  auto assignment = scholnet::assign_fields(hierarchy, corpus, config.threads);

  std::ofstream out(config.output_dir / "author_fields.csv", std::ios::binary);
  if (!out) throw scholnet::Error("cannot write author_fields.csv");
  out << "author_id,field\n";
  std::int64_t assigned = 0;
  for (std::size_t a = 0; a < corpus.author_count(); ++a) {
    auto index = static_cast<std::int32_t>(a);
    const auto& field = assignment.of(index);
    if (field) ++assigned;
    out << scholnet::csv_escape(corpus.author_at(index).id) << ','
        << scholnet::csv_escape(field ? *field : std::string()) << '\n';
  }
  write_summary(config.output_dir, opts,
                {{"counts", corpus_counts(corpus)},
                 {"fields",
                  {{"nodes", hierarchy.node_count()},
                   {"top_fields", hierarchy.top_fields().size()},
                   {"authors_assigned", assigned}}}});
  std::printf("fields: %lld of %zu authors assigned\n",
              static_cast<long long>(assigned), corpus.author_count());
  return 0;
}

int run_network(const SharedOptions& opts) {
  auto config = pipeline_config(opts);
  std::filesystem::create_directories(config.output_dir);
  scholnet::Corpus corpus = scholnet::load_and_filter(config);
  auto net = scholnet::build_influence_network(corpus, config.weight,
                                               config.threads);
  net.write_csv(corpus, config.output_dir / "network.csv");

  std::ofstream skipped(config.output_dir / "skipped_authors.csv",
                        std::ios::binary);
  if (!skipped) throw scholnet::Error("cannot write skipped_authors.csv");
  skipped << "author_id\n";
  for (std::int32_t a : net.skipped_nodes()) {
    skipped << scholnet::csv_escape(corpus.author_at(a).id) << '\n';
  }
  write_summary(config.output_dir, opts,
                {{"counts", corpus_counts(corpus)},
                 {"network",
                  {{"kind", std::string(scholnet::weight_kind_name(net.kind()))},
                   {"skipped_nodes", net.skipped_nodes().size()},
                   {"from_filtered_corpus", net.built_from_filtered_corpus()}}}});
  std::printf("network: %zu nodes, %zu skipped\n", net.node_count(),
              net.skipped_nodes().size());
  return 0;
}

int run_metrics(const SharedOptions& opts) {
  auto config = pipeline_config(opts);
  std::filesystem::create_directories(config.output_dir);
  scholnet::Corpus corpus = scholnet::load_and_filter(config);

  std::optional<scholnet::FieldAssignment> assignment;
  auto fields_path =
      scholnet::resolve_input_file(config.input_dir, "fields.jsonl", false);
  if (!fields_path.empty()) {
    auto hierarchy = scholnet::load_field_hierarchy(fields_path);
    assignment = scholnet::assign_fields(hierarchy, corpus, config.threads);
  }
  auto rows = scholnet::compute_author_metrics(
      corpus, assignment ? &*assignment : nullptr, config.threads);
  scholnet::write_metrics_csv(config.output_dir / "metrics.csv", rows);
  write_summary(config.output_dir, opts, {{"counts", corpus_counts(corpus)}});
  std::printf("metrics: %zu authors\n", rows.size());
  return 0;
}

int run_counterfactual(const SharedOptions& opts) {
  auto config = pipeline_config(opts);
  std::filesystem::create_directories(config.output_dir);
  scholnet::Corpus corpus = scholnet::load_and_filter(config);

  scholnet::FieldAssignment assignment;
  assignment.primary.resize(corpus.author_count());
  auto fields_path =
      scholnet::resolve_input_file(config.input_dir, "fields.jsonl", false);
  if (!fields_path.empty()) {
    auto hierarchy = scholnet::load_field_hierarchy(fields_path);
    assignment = scholnet::assign_fields(hierarchy, corpus, config.threads);
  }
  auto net = scholnet::build_influence_network(corpus, config.weight,
                                               config.threads);
  auto records = scholnet::counterfactual_all(corpus, net, assignment,
                                              config.threads);
  scholnet::write_counterfactual_csv(config.output_dir / "counterfactual.csv",
                                     records);
  write_summary(
      config.output_dir, opts,
      {{"counts", corpus_counts(corpus)},
       {"counterfactual",
        {{"top_collaborator_network",
          std::string(scholnet::weight_kind_name(net.kind()))},
         {"reduced_ranking", "simultaneous"}}}});
  std::printf("counterfactual: %zu records\n", records.size());
  return 0;
}

int run_report(const SharedOptions& opts) {
  auto config = pipeline_config(opts);
  scholnet::run_report_pipeline(config);
  std::printf("report: outputs written to %s\n", opts.output.c_str());
  return 0;
}

int run_synth(const SharedOptions& opts, const scholnet::GeneratorSpec& base,
              const std::vector<double>& team_means, int field_count) {
  scholnet::GeneratorSpec spec = base;
  spec.year_from = opts.filter.year_from;
  spec.year_to = opts.filter.year_to;
  spec.max_team_size = opts.filter.max_team_size;
  scholnet::SynthFieldSpec proto = spec.fields.empty() ? scholnet::SynthFieldSpec{}
                                                       : spec.fields[0];
  spec.fields.clear();
  for (int f = 0; f < field_count; ++f) {
    scholnet::SynthFieldSpec field_spec = proto;
    if (!team_means.empty()) {
      field_spec.team_mean =
          team_means[std::min<std::size_t>(f, team_means.size() - 1)];
    }
    spec.fields.push_back(field_spec);
  }
  auto stats = scholnet::generate_synthetic_corpus(spec, opts.seed, opts.output);
  std::printf("synth: %lld papers, %lld authors, %lld fields, %lld edges\n",
              static_cast<long long>(stats.papers),
              static_cast<long long>(stats.authors),
              static_cast<long long>(stats.fields),
              static_cast<long long>(stats.citation_edges));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coauthorship influence network analytics"};
  app.require_subcommand(1);

  SharedOptions opts;
  scholnet::GeneratorSpec gen;
  std::vector<double> team_means;
  int synth_fields = 2;

  auto* ingest = app.add_subcommand("ingest", "Load, filter and summarize a corpus");
  auto* fields = app.add_subcommand("fields", "Assign authors to top fields");
  auto* network = app.add_subcommand("network", "Build the influence network");
  auto* metrics = app.add_subcommand("metrics", "Per-author metrics incl. extended h-index");
  auto* counterfactual =
      app.add_subcommand("counterfactual", "Metrics with top-collaborator papers removed");
  auto* report = app.add_subcommand("report", "Full pipeline with all plot-ready outputs");
  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus");
  for (CLI::App* cmd : {ingest, fields, network, metrics, counterfactual, report, synth}) {
    add_shared_flags(cmd, opts);
  }
  synth->add_option("--fields", synth_fields, "Number of top fields")
      ->check(CLI::PositiveNumber);
  synth->add_option("--authors-per-field", gen.fields[0].authors,
                    "Author pool size per field");
  synth->add_option("--papers-per-field", gen.fields[0].papers,
                    "Papers per field");
  synth->add_option("--team-mean", team_means,
                    "Mean team size (repeat to vary per field)");
  synth->add_option("--subfields-per-field", gen.subfields_per_field,
                    "Subfields per top field");
  synth->add_option("--cross-parent-prob", gen.cross_parent_prob,
                    "Chance a subfield maps to a second top field");
  synth->add_option("--cite-alpha", gen.cite_alpha, "Citation power-law exponent");
  synth->add_option("--cite-scale", gen.cite_scale, "Citation scale factor");
  synth->add_option("--cite-max", gen.cite_max, "Citation cap per paper");
  synth->add_option("--teammate-window", gen.teammate_window,
                    "Ring window for teammate selection");
  synth->add_flag("--no-citations-file",
                  [&gen](std::int64_t) { gen.write_citation_edges = false; },
                  "Skip writing citations.jsonl");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) return run_ingest(opts);
    if (fields->parsed()) return run_fields(opts);
    if (network->parsed()) return run_network(opts);
    if (metrics->parsed()) return run_metrics(opts);
    if (counterfactual->parsed()) return run_counterfactual(opts);
    if (report->parsed()) return run_report(opts);
    if (synth->parsed()) return run_synth(opts, gen, team_means, synth_fields);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
