#ifndef SCHOLNET_COUNTERFACTUAL_HPP_
#define SCHOLNET_COUNTERFACTUAL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scholnet/corpus.hpp"
#include "scholnet/fields.hpp"
#include "scholnet/influence.hpp"
#include "scholnet/metrics.hpp"

namespace scholnet {

struct MetricSnapshot {
  std::int64_t papers = 0;
  std::int64_t citations = 0;
  HSequence h;
  std::int32_t h_rank = 0;  // 1-based within the author's field cohort; 0 = unranked
};

// Original vs. reduced metrics for one author, where "reduced" discards
// every paper coauthored with the author's top collaborator. The corpus
// itself is never touched; each author is reduced independently.
struct CounterfactualRecord {
  std::string author_id;
  std::optional<std::string> field;
  MetricSnapshot original;
  MetricSnapshot reduced;
  std::optional<std::string> top_collaborator;
};

// The author's retained papers whose author list does not contain `t`
// (checked against the full author list, dropped coauthors included).
// Ascending paper ids. Throws NotFoundError for an unknown author.
std::vector<std::string> reduced_paper_set(const Corpus& corpus,
                                           std::string_view author_id,
                                           std::string_view t);

// Counterfactual for one author against the network's top collaborator.
// When the author has none, reduced == original. Ranks are left at 0;
// counterfactual_rankings fills them in.
CounterfactualRecord counterfactual_author(const Corpus& corpus,
                                           const InfluenceNetwork& net,
                                           std::string_view author_id,
                                           const FieldAssignment* assignment = nullptr);

// Counterfactuals for every author in a field cohort, with h-ranks for
// the original metrics and for the simultaneously reduced metrics. Both
// rankings cover the same author set and use the rank_authors tie chain
// evaluated on their respective (original or reduced) values. Pass
// nullopt as `field` to rank the cohort of authors with no field signal.
std::vector<CounterfactualRecord> counterfactual_rankings(
    const Corpus& corpus, const InfluenceNetwork& net,
    const std::optional<std::string>& field, const FieldAssignment& assignment,
    const FieldHierarchy* hierarchy = nullptr, int threads = 1);

// All cohorts (every assigned field plus, when present, the no-field
// cohort), concatenated in ascending field order with the no-field
// cohort last. Rows within a cohort are in original-rank order.
std::vector<CounterfactualRecord> counterfactual_all(
    const Corpus& corpus, const InfluenceNetwork& net,
    const FieldAssignment& assignment, int threads = 1);

}  // namespace scholnet

#endif  // SCHOLNET_COUNTERFACTUAL_HPP_
