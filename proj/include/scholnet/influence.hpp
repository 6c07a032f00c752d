#ifndef SCHOLNET_INFLUENCE_HPP_
#define SCHOLNET_INFLUENCE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scholnet/corpus.hpp"

namespace scholnet {

// Whether edge weights measure joint citations or joint paper counts.
enum class WeightKind { kCitations, kPapers };

std::string_view weight_kind_name(WeightKind kind);
std::optional<WeightKind> weight_kind_from_name(std::string_view name);

struct InfluenceEdge {
  std::int32_t target = 0;      // author index
  std::int64_t joint_value = 0; // c_AB: joint citations or joint papers
  double weight = 0.0;          // c_AB / c_A, in [0, 1]
};

// Directed weighted author graph. An edge A->B exists iff both authors
// are retained and coauthored at least one retained paper and A's total
// under the chosen kind is positive; the weight is the fraction of A's
// total earned jointly with B. Immutable once built.
class InfluenceNetwork {
 public:
  WeightKind kind() const { return kind_; }
  bool built_from_filtered_corpus() const { return from_filtered_; }
  std::size_t node_count() const { return out_edges_.size(); }

  // Out-edges of an author, ascending by target index.
  const std::vector<InfluenceEdge>& out_edges(std::int32_t author) const {
    return out_edges_[author];
  }

  // Authors whose total under `kind` is zero: they produce no out-edges
  // and are excluded from influence statistics. Ascending author index.
  const std::vector<std::int32_t>& skipped_nodes() const { return skipped_; }
  bool is_skipped(std::int32_t author) const { return skipped_flag_[author]; }

  // Edge weight for the ordered pair, 0 when no edge exists (including
  // a == b). Throws NotFoundError when either id is not a node.
  double influence_weight(const Corpus& corpus, std::string_view a,
                          std::string_view b) const;

  // The out-neighbor with maximal weight; ties go to the larger joint
  // value, then the lexicographically smallest author id; none when the
  // author has no out-edges. All out-weights of one node share the same
  // denominator, so the (weight, joint value) chain reduces to comparing
  // joint values as exact integers.
  std::optional<std::string> top_collaborator(const Corpus& corpus,
                                              std::string_view author_id) const;
  std::optional<std::int32_t> top_collaborator_index(std::int32_t author) const;

  // Maximal out-weight, 0 for a node with no out-edges.
  double top_influence(const Corpus& corpus, std::string_view author_id) const;
  double top_influence_index(std::int32_t author) const;

  // CSV dump `source,target,joint_value,weight`, rows ascending by
  // (source id, target id), weights at 12 significant digits.
  void write_csv(const Corpus& corpus, const std::filesystem::path& path) const;

 private:
  friend InfluenceNetwork build_influence_network(const Corpus&, WeightKind, int);

  WeightKind kind_ = WeightKind::kCitations;
  bool from_filtered_ = true;
  std::vector<std::vector<InfluenceEdge>> out_edges_;
  std::vector<std::int32_t> skipped_;
  std::vector<char> skipped_flag_;
};

// Aggregates joint values per coauthor pair over all retained papers.
// Aggregation is a sum of integers sharded by paper and merged in shard
// order, so any thread count yields the identical network.
InfluenceNetwork build_influence_network(const Corpus& corpus, WeightKind kind,
                                         int threads = 1);

}  // namespace scholnet

#endif  // SCHOLNET_INFLUENCE_HPP_
