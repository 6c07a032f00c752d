#ifndef SCHOLNET_CORPUS_HPP_
#define SCHOLNET_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace scholnet {

// A bibliographic record. `author_ids` keeps the order of the input
// record with duplicates collapsed; it may name authors that were later
// dropped by filtering (they hold no metrics and form no edges).
struct Paper {
  std::string id;
  int year = 0;
  std::vector<std::string> author_ids;
  std::vector<std::string> subfield_ids;
  std::int64_t citation_count = 0;
};

// A retained author and the statistics derived from their retained
// papers. Synthesized from paper author lists; never read from a file.
struct Author {
  std::string id;
  std::vector<std::int32_t> paper_indices;  // ascending by paper id
  std::int64_t citation_total = 0;
  int birth_year = 0;  // year of the first retained publication
};

struct FilterConfig {
  int year_from = 1950;
  int year_to = 2020;
  int max_team_size = 10;
  int min_papers = 10;
  std::int64_t min_citations = 200;

  // Throws ConfigError on an ill-formed configuration.
  void validate() const;
};

struct LoadOptions {
  int threads = 1;
};

// Counters filled while loading and filtering; surfaced in run manifests.
struct CorpusStats {
  std::int64_t papers_parsed = 0;
  std::int64_t duplicate_authors_collapsed = 0;
  std::int64_t citation_edges_applied = 0;
  std::int64_t citation_edges_dropped = 0;  // referenced an unknown paper id
  bool citation_counts_from_edges = false;
  std::int64_t papers_dropped_year = 0;
  std::int64_t papers_dropped_team_size = 0;
  std::int64_t authors_dropped = 0;
};

// Immutable store of papers, authors and the author<->paper incidence.
// Safe for concurrent reads once constructed. Papers and authors are
// held in ascending id order, so corpora loaded from permuted files are
// structurally identical.
class Corpus {
 public:
  Corpus() = default;

  // Builds a corpus from parsed records. Validates ids, collapses
  // duplicate author ids within a record (counted in stats) and rejects
  // papers left with no authors. Citation counts are taken as given.
  static Corpus from_records(std::vector<Paper> papers, CorpusStats stats = {},
                             bool filtered = false);

  std::size_t paper_count() const { return papers_.size(); }
  std::size_t author_count() const { return authors_.size(); }
  bool filtered() const { return filtered_; }
  const CorpusStats& stats() const { return stats_; }

  const Paper& paper_at(std::int32_t index) const { return papers_[index]; }
  const Author& author_at(std::int32_t index) const { return authors_[index]; }
  const std::vector<Paper>& papers() const { return papers_; }
  const std::vector<Author>& authors() const { return authors_; }

  std::optional<std::int32_t> paper_index(std::string_view id) const;
  std::optional<std::int32_t> author_index(std::string_view id) const;

  // Retained authors of a paper, as indices into authors(), ascending.
  const std::vector<std::int32_t>& paper_author_indices(std::int32_t paper) const {
    return paper_authors_[paper];
  }

  // Per-author base statistics. All throw NotFoundError for an id that
  // is not retained in this corpus.
  std::int64_t author_citations(std::string_view author_id) const;
  std::int64_t author_papers(std::string_view author_id) const;
  int author_birth_year(std::string_view author_id) const;
  std::vector<std::string> author_collaborators(std::string_view author_id) const;

  // Index-based variant used by the analytics layers.
  std::vector<std::int32_t> collaborator_indices(std::int32_t author) const;

 private:
  friend Corpus filter_corpus(const Corpus& corpus, const FilterConfig& config);

  // Rebuilds lookup maps, the retained-author synthesis and per-author
  // statistics from papers_. A whitelist restricts which author ids
  // become author records; null means all.
  void rebuild_indices(const std::unordered_set<std::string>* author_whitelist);
  std::int32_t require_author(std::string_view id) const;

  std::vector<Paper> papers_;
  std::vector<Author> authors_;
  std::vector<std::vector<std::int32_t>> paper_authors_;
  std::unordered_map<std::string, std::int32_t> paper_index_;
  std::unordered_map<std::string, std::int32_t> author_index_;
  CorpusStats stats_;
  bool filtered_ = false;
};

// Loads papers (and optionally citation edges) from JSONL files. When an
// edge file is given, each paper's citation_count is its in-degree over
// the edge list and inline counts are ignored; edges naming an unknown
// paper id are dropped and counted. Throws ParseError with the offending
// line on malformed records and Error on duplicate paper ids.
Corpus load_corpus(const std::filesystem::path& papers_path,
                   const std::optional<std::filesystem::path>& citations_path,
                   const LoadOptions& options = {});

// Single-pass filter: (1) drop papers outside [year_from, year_to] or
// with more than max_team_size authors; (2) recompute author totals on
// the surviving papers; (3) drop authors below min_papers/min_citations.
// Surviving papers keep their full author lists. Not iterated to a
// fixpoint.
Corpus filter_corpus(const Corpus& corpus, const FilterConfig& config);

}  // namespace scholnet

#endif  // SCHOLNET_CORPUS_HPP_
