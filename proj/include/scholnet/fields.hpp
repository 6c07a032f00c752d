#ifndef SCHOLNET_FIELDS_HPP_
#define SCHOLNET_FIELDS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "scholnet/corpus.hpp"

namespace scholnet {

struct FieldNode {
  std::string id;
  std::string name;
  std::vector<std::string> parent_ids;
  bool top = false;
};

// Weight of each top field for one paper or one author. Keys are field
// ids; absent keys mean weight zero. std::map keeps iteration in id
// order, which downstream tie-breaking and output writers rely on.
using FieldWeights = std::map<std::string, double>;

// Directed acyclic hierarchy of fields of study with a designated set of
// top fields. The set of top fields reachable from every node is
// precomputed at load, so queries are pure and lock-free.
class FieldHierarchy {
 public:
  FieldHierarchy() = default;

  // Throws StructuralError on a parent cycle or an undefined parent id.
  static FieldHierarchy from_nodes(std::vector<FieldNode> nodes);

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<FieldNode>& nodes() const { return nodes_; }
  std::optional<std::int32_t> field_index(std::string_view id) const;
  const FieldNode& node_at(std::int32_t index) const { return nodes_[index]; }

  // Top fields in ascending id order.
  const std::vector<std::string>& top_fields() const { return top_field_ids_; }

  // Top fields reachable from `field_id` by walking parent links upward,
  // stopping at (and including) the first top field on each path. A top
  // field maps to itself. Throws NotFoundError for an unknown id.
  std::vector<std::string> parents_of(std::string_view field_id) const;

  // Index-based access to the precomputed top-ancestor sets (ascending
  // field indices).
  const std::vector<std::int32_t>& top_ancestors(std::int32_t field) const {
    return top_ancestors_[field];
  }

 private:
  std::vector<FieldNode> nodes_;
  std::unordered_map<std::string, std::int32_t> index_;
  std::vector<std::vector<std::int32_t>> parent_indices_;
  std::vector<std::vector<std::int32_t>> top_ancestors_;
  std::vector<std::string> top_field_ids_;
};

// Loads `fields.jsonl` ({"id","name","parents","top"} per line).
FieldHierarchy load_field_hierarchy(const std::filesystem::path& path);

// Relevance of each top field to one paper: subfields that reach no top
// field are removed before weighting, each remaining subfield
// contributes 1/|F_P| split evenly over its top ancestors. Unknown
// subfield ids are treated as unmapped. Empty result when nothing maps.
FieldWeights paper_field_weights(const FieldHierarchy& hierarchy,
                                 const Paper& paper);

// Unnormalized sum of paper_field_weights over the author's retained
// papers, accumulated in ascending paper order.
FieldWeights author_field_weights(const FieldHierarchy& hierarchy,
                                  const Corpus& corpus,
                                  std::string_view author_id);

// Argmax of a weight map; ties go to the lexicographically smallest
// field id; none when the map is empty.
std::optional<std::string> primary_field_of_weights(const FieldWeights& weights);

std::optional<std::string> author_primary_field(const FieldHierarchy& hierarchy,
                                                const Corpus& corpus,
                                                std::string_view author_id);

// Primary field per author index (nullopt = no field signal). Computed
// once and shared by the ranking and report layers.
struct FieldAssignment {
  std::vector<std::optional<std::string>> primary;  // by author index

  const std::optional<std::string>& of(std::int32_t author) const {
    return primary[author];
  }
};

FieldAssignment assign_fields(const FieldHierarchy& hierarchy,
                              const Corpus& corpus, int threads = 1);

}  // namespace scholnet

#endif  // SCHOLNET_FIELDS_HPP_
