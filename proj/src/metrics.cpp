#include "scholnet/metrics.hpp"

#include <algorithm>
#include <functional>

#include "scholnet/errors.hpp"
#include "scholnet/parallel.hpp"

namespace scholnet {

std::string HSequence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out.push_back('-');
    out += std::to_string(values[i]);
  }
  return out;
}

std::strong_ordering operator<=>(const HSequence& a, const HSequence& b) {
  return std::lexicographical_compare_three_way(
      a.values.begin(), a.values.end(), b.values.begin(), b.values.end());
}

std::strong_ordering compare_h_sequences(const HSequence& a, const HSequence& b) {
  return a <=> b;
}

HSequence extended_h_index(std::span<const std::int64_t> citations) {
  std::vector<std::int64_t> sorted(citations.begin(), citations.end());
  for (std::int64_t c : sorted) {
    if (c < 0) throw Error("negative citation count in h-index input");
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  HSequence h;
  // Level k+1 fits the largest square based at height offset (the sum of
  // the previous sides) and no wider than the level-k square below it.
  std::int64_t offset = 0;
  auto width = static_cast<std::int64_t>(sorted.size());
  while (width > 0) {
    std::int64_t side = 0;
    for (std::int64_t s = 1; s <= width; ++s) {
      if (sorted[s - 1] >= offset + s) {
        side = s;
      } else {
        break;  // sorted descending, so taller squares cannot fit either
      }
    }
    if (side == 0) break;
    h.values.push_back(static_cast<std::int32_t>(side));
    offset += side;
    width = side;
  }
  return h;
}

namespace {

HSequence author_h_sequence(const Corpus& corpus, std::int32_t author) {
  std::vector<std::int64_t> citations;
  const auto& papers = corpus.author_at(author).paper_indices;
  citations.reserve(papers.size());
  for (std::int32_t p : papers) {
    citations.push_back(corpus.paper_at(p).citation_count);
  }
  return extended_h_index(citations);
}

// Tie chain shared by every ranking: primary metric descending, then
// total citations, then paper count, then ascending author id.
bool rank_less(RankMetric metric, const RankEntry& a, const RankEntry& b) {
  if (metric == RankMetric::kHExtended) {
    if (auto cmp = a.h <=> b.h; cmp != 0) return cmp > 0;
  } else if (metric == RankMetric::kPapers) {
    if (a.papers != b.papers) return a.papers > b.papers;
  } else {
    if (a.citations != b.citations) return a.citations > b.citations;
  }
  if (a.citations != b.citations) return a.citations > b.citations;
  if (a.papers != b.papers) return a.papers > b.papers;
  return a.author_id < b.author_id;
}

}  // namespace

Ranking rank_authors(const Corpus& corpus, RankMetric metric,
                     const FieldAssignment* assignment,
                     const std::optional<std::string>& restrict_field,
                     const FieldHierarchy* hierarchy) {
  if (restrict_field) {
    if (assignment == nullptr) {
      throw Error("field restriction requires a field assignment");
    }
    if (hierarchy != nullptr && !hierarchy->field_index(*restrict_field)) {
      throw NotFoundError("unknown field id: " + *restrict_field);
    }
  }

  Ranking ranking;
  ranking.metric = metric;
  for (std::size_t a = 0; a < corpus.author_count(); ++a) {
    auto index = static_cast<std::int32_t>(a);
    if (restrict_field) {
      const auto& field = assignment->of(index);
      if (!field || *field != *restrict_field) continue;
    }
    const Author& author = corpus.author_at(index);
    RankEntry entry;
    entry.author_id = author.id;
    entry.papers = static_cast<std::int64_t>(author.paper_indices.size());
    entry.citations = author.citation_total;
    if (metric == RankMetric::kHExtended) {
      entry.h = author_h_sequence(corpus, index);
    }
    ranking.entries.push_back(std::move(entry));
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [metric](const RankEntry& a, const RankEntry& b) {
              return rank_less(metric, a, b);
            });
  return ranking;
}

std::vector<AuthorMetrics> compute_author_metrics(const Corpus& corpus,
                                                  const FieldAssignment* assignment,
                                                  int threads) {
  std::vector<AuthorMetrics> rows(corpus.author_count());
  parallel_chunks(corpus.author_count(), threads,
                  [&](std::size_t begin, std::size_t end, std::size_t) {
                    for (std::size_t a = begin; a < end; ++a) {
                      auto index = static_cast<std::int32_t>(a);
                      const Author& author = corpus.author_at(index);
                      AuthorMetrics& row = rows[a];
                      row.author_id = author.id;
                      if (assignment != nullptr) {
                        row.field = assignment->of(index);
                      }
                      row.papers = static_cast<std::int64_t>(
                          author.paper_indices.size());
                      row.citations = author.citation_total;
                      row.h = author_h_sequence(corpus, index);
                    }
                  });
  return rows;
}

}  // namespace scholnet
