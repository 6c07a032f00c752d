#ifndef SCHOLNET_METRICS_HPP_
#define SCHOLNET_METRICS_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scholnet/corpus.hpp"
#include "scholnet/fields.hpp"

namespace scholnet {

// The extended h-index: a non-increasing sequence of positive integers.
// values[0] is the classic h-index; deeper entries refine ties between
// authors sharing the same h. Sequences compare lexicographically, a
// strict prefix ordering below its extension.
struct HSequence {
  std::vector<std::int32_t> values;

  bool empty() const { return values.empty(); }
  std::int32_t classic_h() const { return values.empty() ? 0 : values[0]; }

  // Hyphen-joined encoding, e.g. "3-1-1"; empty sequence -> "".
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const HSequence& a, const HSequence& b);
  friend bool operator==(const HSequence& a, const HSequence& b) = default;
};

std::strong_ordering compare_h_sequences(const HSequence& a, const HSequence& b);

// Computes the extended h-index of a citation multiset. Papers are
// sorted by descending citations; level k+1 fits the largest square
// whose base sits on top of the level-k square and whose width never
// exceeds it. Stops at the first empty level. Throws Error on a
// negative citation count.
HSequence extended_h_index(std::span<const std::int64_t> citations);

enum class RankMetric { kCitations, kPapers, kHExtended };

struct RankEntry {
  std::string author_id;
  std::int64_t papers = 0;
  std::int64_t citations = 0;
  HSequence h;
};

// A total order of authors under one metric; entries[0] is rank 1.
struct Ranking {
  RankMetric metric = RankMetric::kCitations;
  std::vector<RankEntry> entries;
};

// Ranks retained authors (optionally restricted to those whose primary
// field equals `restrict_field`) descending by the metric. Ties break by
// total citations, then paper count, then ascending author id.
// `assignment` may be null only when no restriction is requested; a
// restriction to a field unknown to `hierarchy` throws NotFoundError.
Ranking rank_authors(const Corpus& corpus, RankMetric metric,
                     const FieldAssignment* assignment = nullptr,
                     const std::optional<std::string>& restrict_field = std::nullopt,
                     const FieldHierarchy* hierarchy = nullptr);

// Per-author metric rows for the metrics CSV
// (`author_id,field,papers,citations,h_sequence`).
struct AuthorMetrics {
  std::string author_id;
  std::optional<std::string> field;
  std::int64_t papers = 0;
  std::int64_t citations = 0;
  HSequence h;
};

std::vector<AuthorMetrics> compute_author_metrics(const Corpus& corpus,
                                                  const FieldAssignment* assignment,
                                                  int threads = 1);

}  // namespace scholnet

#endif  // SCHOLNET_METRICS_HPP_
