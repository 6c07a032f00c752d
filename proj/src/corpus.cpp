#include "scholnet/corpus.hpp"

#include <algorithm>
#include <exception>
#include <unordered_set>
#include <utility>

#include "json.hpp"
#include "scholnet/errors.hpp"
#include "scholnet/jsonl.hpp"
#include "scholnet/parallel.hpp"

namespace scholnet {

namespace {

using nlohmann::json;

// Removes later duplicates while keeping first-occurrence order.
// Returns the number of entries removed.
std::int64_t dedup_in_order(std::vector<std::string>& values) {
  std::vector<std::string> unique;
  unique.reserve(values.size());
  std::int64_t removed = 0;
  for (auto& v : values) {
    if (std::find(unique.begin(), unique.end(), v) != unique.end()) {
      ++removed;
    } else {
      unique.push_back(std::move(v));
    }
  }
  values = std::move(unique);
  return removed;
}

Paper parse_paper_record(const std::string& path, const InputLine& line) {
  json record;
  try {
    record = json::parse(line.text);
  } catch (const json::exception& e) {
    throw ParseError(path, line.number, std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) {
    throw ParseError(path, line.number, "record is not a JSON object");
  }

  Paper paper;
  auto id_it = record.find("id");
  if (id_it == record.end() || !id_it->is_string() ||
      id_it->get_ref<const std::string&>().empty()) {
    throw ParseError(path, line.number, "missing or empty string field `id`");
  }
  paper.id = id_it->get<std::string>();

  auto year_it = record.find("year");
  if (year_it == record.end() || !year_it->is_number_integer()) {
    throw ParseError(path, line.number, "missing or non-integer field `year`");
  }
  paper.year = year_it->get<int>();

  auto authors_it = record.find("authors");
  if (authors_it == record.end() || !authors_it->is_array() ||
      authors_it->empty()) {
    throw ParseError(path, line.number,
                     "missing, non-array or empty field `authors`");
  }
  paper.author_ids.reserve(authors_it->size());
  for (const auto& a : *authors_it) {
    if (!a.is_string() || a.get_ref<const std::string&>().empty()) {
      throw ParseError(path, line.number, "author ids must be non-empty strings");
    }
    paper.author_ids.push_back(a.get<std::string>());
  }

  if (auto fields_it = record.find("fields"); fields_it != record.end()) {
    if (!fields_it->is_array()) {
      throw ParseError(path, line.number, "field `fields` must be an array");
    }
    paper.subfield_ids.reserve(fields_it->size());
    for (const auto& f : *fields_it) {
      if (!f.is_string()) {
        throw ParseError(path, line.number, "field ids must be strings");
      }
      paper.subfield_ids.push_back(f.get<std::string>());
    }
  }

  if (auto cit_it = record.find("citations"); cit_it != record.end()) {
    if (!cit_it->is_number_integer()) {
      throw ParseError(path, line.number, "field `citations` must be an integer");
    }
    paper.citation_count = cit_it->get<std::int64_t>();
    if (paper.citation_count < 0) {
      throw ParseError(path, line.number, "field `citations` must be >= 0");
    }
  }
  return paper;
}

struct CitationEdge {
  std::string citing;
  std::string cited;
};

CitationEdge parse_citation_record(const std::string& path,
                                   const InputLine& line) {
  json record;
  try {
    record = json::parse(line.text);
  } catch (const json::exception& e) {
    throw ParseError(path, line.number, std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) {
    throw ParseError(path, line.number, "record is not a JSON object");
  }
  CitationEdge edge;
  for (auto [key, out] : {std::pair<const char*, std::string*>{"citing", &edge.citing},
                          std::pair<const char*, std::string*>{"cited", &edge.cited}}) {
    auto it = record.find(key);
    if (it == record.end() || !it->is_string() ||
        it->get_ref<const std::string&>().empty()) {
      throw ParseError(path, line.number,
                       std::string("missing or empty string field `") + key + "`");
    }
    *out = it->get<std::string>();
  }
  return edge;
}

// Parses all lines of a JSONL file in deterministic parallel chunks.
// The first error in line order wins regardless of the thread count.
template <typename Record, typename ParseFn>
std::vector<Record> parse_records(const std::string& path,
                                  const std::vector<InputLine>& lines,
                                  int threads, ParseFn&& parse) {
  std::size_t n = lines.size();
  std::vector<Record> records(n);
  std::size_t chunk_count = threads > 1 ? static_cast<std::size_t>(threads) : 1;
  if (chunk_count > n) chunk_count = n == 0 ? 1 : n;
  std::vector<std::exception_ptr> failures(chunk_count);
  parallel_chunks(n, threads, [&](std::size_t begin, std::size_t end, std::size_t c) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        records[i] = parse(path, lines[i]);
      }
    } catch (...) {
      failures[c] = std::current_exception();
    }
  });
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return records;
}

}  // namespace

void FilterConfig::validate() const {
  if (year_from > year_to) {
    throw ConfigError("year_from must not exceed year_to");
  }
  if (max_team_size < 1) throw ConfigError("max_team_size must be positive");
  if (min_papers < 1) throw ConfigError("min_papers must be positive");
  if (min_citations < 0) throw ConfigError("min_citations must be >= 0");
}

Corpus Corpus::from_records(std::vector<Paper> papers, CorpusStats stats,
                            bool filtered) {
  for (auto& paper : papers) {
    if (paper.id.empty()) throw Error("paper with empty id");
    if (paper.citation_count < 0) {
      throw Error("paper " + paper.id + " has a negative citation count");
    }
    stats.duplicate_authors_collapsed += dedup_in_order(paper.author_ids);
    dedup_in_order(paper.subfield_ids);
    if (paper.author_ids.empty()) {
      throw Error("paper " + paper.id + " has no authors");
    }
  }

  std::sort(papers.begin(), papers.end(),
            [](const Paper& a, const Paper& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < papers.size(); ++i) {
    if (papers[i].id == papers[i - 1].id) {
      throw Error("duplicate paper id: " + papers[i].id);
    }
  }

  Corpus corpus;
  corpus.stats_ = stats;
  corpus.filtered_ = filtered;
  corpus.papers_ = std::move(papers);
  corpus.rebuild_indices(nullptr);
  return corpus;
}

void Corpus::rebuild_indices(const std::unordered_set<std::string>* author_whitelist) {
  paper_index_.clear();
  paper_index_.reserve(papers_.size());
  for (std::size_t i = 0; i < papers_.size(); ++i) {
    paper_index_.emplace(papers_[i].id, static_cast<std::int32_t>(i));
  }

  // Authors are synthesized from paper author lists, held in ascending
  // id order so that load order never leaks into the structure.
  std::vector<std::string> author_ids;
  for (const auto& paper : papers_) {
    for (const auto& a : paper.author_ids) {
      if (author_whitelist == nullptr || author_whitelist->count(a) > 0) {
        author_ids.push_back(a);
      }
    }
  }
  std::sort(author_ids.begin(), author_ids.end());
  author_ids.erase(std::unique(author_ids.begin(), author_ids.end()),
                   author_ids.end());

  authors_.clear();
  authors_.resize(author_ids.size());
  author_index_.clear();
  author_index_.reserve(author_ids.size());
  for (std::size_t i = 0; i < author_ids.size(); ++i) {
    authors_[i].id = std::move(author_ids[i]);
    author_index_.emplace(authors_[i].id, static_cast<std::int32_t>(i));
  }

  paper_authors_.assign(papers_.size(), {});
  for (std::size_t p = 0; p < papers_.size(); ++p) {
    auto& retained = paper_authors_[p];
    for (const auto& a : papers_[p].author_ids) {
      auto it = author_index_.find(a);
      if (it != author_index_.end()) retained.push_back(it->second);
    }
    std::sort(retained.begin(), retained.end());
    for (std::int32_t author : retained) {
      authors_[author].paper_indices.push_back(static_cast<std::int32_t>(p));
      authors_[author].citation_total += papers_[p].citation_count;
    }
  }
  for (auto& author : authors_) {
    int birth = 0;
    bool first = true;
    for (std::int32_t p : author.paper_indices) {
      if (first || papers_[p].year < birth) birth = papers_[p].year;
      first = false;
    }
    author.birth_year = birth;
  }
}

std::optional<std::int32_t> Corpus::paper_index(std::string_view id) const {
  auto it = paper_index_.find(std::string(id));
  if (it == paper_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::int32_t> Corpus::author_index(std::string_view id) const {
  auto it = author_index_.find(std::string(id));
  if (it == author_index_.end()) return std::nullopt;
  return it->second;
}

std::int32_t Corpus::require_author(std::string_view id) const {
  auto index = author_index(id);
  if (!index) throw NotFoundError("unknown author id: " + std::string(id));
  return *index;
}

std::int64_t Corpus::author_citations(std::string_view author_id) const {
  return authors_[require_author(author_id)].citation_total;
}

std::int64_t Corpus::author_papers(std::string_view author_id) const {
  return static_cast<std::int64_t>(
      authors_[require_author(author_id)].paper_indices.size());
}

int Corpus::author_birth_year(std::string_view author_id) const {
  return authors_[require_author(author_id)].birth_year;
}

std::vector<std::int32_t> Corpus::collaborator_indices(std::int32_t author) const {
  std::vector<std::int32_t> result;
  for (std::int32_t p : authors_[author].paper_indices) {
    for (std::int32_t other : paper_authors_[p]) {
      if (other != author) result.push_back(other);
    }
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::vector<std::string> Corpus::author_collaborators(
    std::string_view author_id) const {
  std::vector<std::string> result;
  for (std::int32_t other : collaborator_indices(require_author(author_id))) {
    result.push_back(authors_[other].id);
  }
  return result;
}

Corpus load_corpus(const std::filesystem::path& papers_path,
                   const std::optional<std::filesystem::path>& citations_path,
                   const LoadOptions& options) {
  auto lines = read_lines(papers_path);
  std::vector<Paper> records = parse_records<Paper>(
      papers_path.string(), lines, options.threads, parse_paper_record);

  CorpusStats stats;
  stats.papers_parsed = static_cast<std::int64_t>(records.size());

  if (citations_path) {
    std::unordered_map<std::string_view, std::size_t> by_id;
    by_id.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (!by_id.emplace(records[i].id, i).second) {
        throw Error("duplicate paper id: " + records[i].id);
      }
    }

    auto edge_lines = read_lines(*citations_path);
    std::vector<CitationEdge> edges = parse_records<CitationEdge>(
        citations_path->string(), edge_lines, options.threads,
        parse_citation_record);

    struct InDegree {
      std::vector<std::int64_t> counts;
      std::int64_t applied = 0;
      std::int64_t dropped = 0;
    };
    InDegree total = parallel_map_reduce<InDegree>(
        edges.size(), options.threads,
        [&](std::size_t begin, std::size_t end) {
          InDegree partial;
          partial.counts.assign(records.size(), 0);
          for (std::size_t i = begin; i < end; ++i) {
            auto cited = by_id.find(edges[i].cited);
            auto citing = by_id.find(edges[i].citing);
            if (cited == by_id.end() || citing == by_id.end()) {
              ++partial.dropped;
              continue;
            }
            ++partial.counts[cited->second];
            ++partial.applied;
          }
          return partial;
        },
        [](InDegree& acc, InDegree&& partial) {
          if (acc.counts.empty()) acc.counts.assign(partial.counts.size(), 0);
          for (std::size_t i = 0; i < partial.counts.size(); ++i) {
            acc.counts[i] += partial.counts[i];
          }
          acc.applied += partial.applied;
          acc.dropped += partial.dropped;
        });

    for (std::size_t i = 0; i < records.size(); ++i) {
      records[i].citation_count = edges.empty() ? 0 : total.counts[i];
    }
    stats.citation_counts_from_edges = true;
    stats.citation_edges_applied = total.applied;
    stats.citation_edges_dropped = total.dropped;
  }

  return Corpus::from_records(std::move(records), stats);
}

Corpus filter_corpus(const Corpus& corpus, const FilterConfig& config) {
  config.validate();

  CorpusStats stats = corpus.stats();
  std::vector<Paper> surviving;
  surviving.reserve(corpus.paper_count());
  for (const auto& paper : corpus.papers()) {
    if (paper.year < config.year_from || paper.year > config.year_to) {
      ++stats.papers_dropped_year;
      continue;
    }
    if (static_cast<int>(paper.author_ids.size()) > config.max_team_size) {
      ++stats.papers_dropped_team_size;
      continue;
    }
    surviving.push_back(paper);
  }

  // Author thresholds are evaluated once, against the surviving papers.
  struct Totals {
    std::int64_t papers = 0;
    std::int64_t citations = 0;
  };
  std::unordered_map<std::string_view, Totals> totals;
  for (const auto& paper : surviving) {
    for (const auto& a : paper.author_ids) {
      auto& t = totals[a];
      ++t.papers;
      t.citations += paper.citation_count;
    }
  }
  std::unordered_set<std::string> retained_authors;
  for (const auto& [id, t] : totals) {
    if (t.papers >= config.min_papers && t.citations >= config.min_citations) {
      retained_authors.emplace(id);
    }
  }
  stats.authors_dropped +=
      static_cast<std::int64_t>(totals.size() - retained_authors.size());

  Corpus result;
  result.stats_ = stats;
  result.filtered_ = true;
  result.papers_ = std::move(surviving);
  result.rebuild_indices(&retained_authors);
  return result;
}

}  // namespace scholnet
