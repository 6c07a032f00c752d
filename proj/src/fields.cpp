#include "scholnet/fields.hpp"

#include <algorithm>
#include <queue>

#include "json.hpp"
#include "scholnet/errors.hpp"
#include "scholnet/jsonl.hpp"
#include "scholnet/parallel.hpp"

namespace scholnet {

namespace {

using nlohmann::json;

void merge_sorted_unique(std::vector<std::int32_t>& into,
                         const std::vector<std::int32_t>& from) {
  std::vector<std::int32_t> merged;
  merged.reserve(into.size() + from.size());
  std::merge(into.begin(), into.end(), from.begin(), from.end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  into = std::move(merged);
}

FieldNode parse_field_record(const std::string& path, const InputLine& line) {
  json record;
  try {
    record = json::parse(line.text);
  } catch (const json::exception& e) {
    throw ParseError(path, line.number, std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) {
    throw ParseError(path, line.number, "record is not a JSON object");
  }
  FieldNode node;
  auto id_it = record.find("id");
  if (id_it == record.end() || !id_it->is_string() ||
      id_it->get_ref<const std::string&>().empty()) {
    throw ParseError(path, line.number, "missing or empty string field `id`");
  }
  node.id = id_it->get<std::string>();
  if (auto it = record.find("name"); it != record.end() && it->is_string()) {
    node.name = it->get<std::string>();
  }
  if (auto it = record.find("parents"); it != record.end()) {
    if (!it->is_array()) {
      throw ParseError(path, line.number, "field `parents` must be an array");
    }
    for (const auto& p : *it) {
      if (!p.is_string()) {
        throw ParseError(path, line.number, "parent ids must be strings");
      }
      node.parent_ids.push_back(p.get<std::string>());
    }
  }
  if (auto it = record.find("top"); it != record.end()) {
    if (!it->is_boolean()) {
      throw ParseError(path, line.number, "field `top` must be a boolean");
    }
    node.top = it->get<bool>();
  }
  return node;
}

}  // namespace

FieldHierarchy FieldHierarchy::from_nodes(std::vector<FieldNode> nodes) {
  std::sort(nodes.begin(), nodes.end(),
            [](const FieldNode& a, const FieldNode& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].id == nodes[i - 1].id) {
      throw StructuralError("duplicate field id: " + nodes[i].id);
    }
  }

  FieldHierarchy h;
  h.nodes_ = std::move(nodes);
  h.index_.reserve(h.nodes_.size());
  for (std::size_t i = 0; i < h.nodes_.size(); ++i) {
    h.index_.emplace(h.nodes_[i].id, static_cast<std::int32_t>(i));
  }

  std::size_t n = h.nodes_.size();
  h.parent_indices_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& pid : h.nodes_[i].parent_ids) {
      auto it = h.index_.find(pid);
      if (it == h.index_.end()) {
        throw StructuralError("field " + h.nodes_[i].id +
                              " names undefined parent " + pid);
      }
      h.parent_indices_[i].push_back(it->second);
    }
    std::sort(h.parent_indices_[i].begin(), h.parent_indices_[i].end());
    h.parent_indices_[i].erase(
        std::unique(h.parent_indices_[i].begin(), h.parent_indices_[i].end()),
        h.parent_indices_[i].end());
  }

  // Kahn's algorithm over the full parent graph: any leftover node sits
  // on a cycle.
  {
    std::vector<std::int32_t> pending(n, 0);
    std::vector<std::vector<std::int32_t>> children(n);
    for (std::size_t i = 0; i < n; ++i) {
      pending[i] = static_cast<std::int32_t>(h.parent_indices_[i].size());
      for (std::int32_t p : h.parent_indices_[i]) {
        children[p].push_back(static_cast<std::int32_t>(i));
      }
    }
    std::queue<std::int32_t> ready;
    for (std::size_t i = 0; i < n; ++i) {
      if (pending[i] == 0) ready.push(static_cast<std::int32_t>(i));
    }
    std::size_t processed = 0;
    while (!ready.empty()) {
      std::int32_t f = ready.front();
      ready.pop();
      ++processed;
      for (std::int32_t child : children[f]) {
        if (--pending[child] == 0) ready.push(child);
      }
    }
    if (processed != n) {
      throw StructuralError("field hierarchy contains a parent cycle");
    }
  }

  // Top-ancestor sets, children after parents. Traversal stops at (and
  // includes) the first top field on each path.
  {
    std::vector<std::int32_t> pending(n, 0);
    std::vector<std::vector<std::int32_t>> children(n);
    std::queue<std::int32_t> ready;
    for (std::size_t i = 0; i < n; ++i) {
      if (h.nodes_[i].top) continue;  // top fields have no dependencies
      for (std::int32_t p : h.parent_indices_[i]) {
        if (h.nodes_[p].top) continue;  // resolved directly
        ++pending[i];
        children[p].push_back(static_cast<std::int32_t>(i));
      }
    }
    h.top_ancestors_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (h.nodes_[i].top) {
        h.top_ancestors_[i] = {static_cast<std::int32_t>(i)};
        h.top_field_ids_.push_back(h.nodes_[i].id);
      }
      if (pending[i] == 0 && !h.nodes_[i].top) {
        ready.push(static_cast<std::int32_t>(i));
      }
    }
    while (!ready.empty()) {
      std::int32_t f = ready.front();
      ready.pop();
      for (std::int32_t p : h.parent_indices_[f]) {
        if (h.nodes_[p].top) {
          merge_sorted_unique(h.top_ancestors_[f], {p});
        } else {
          merge_sorted_unique(h.top_ancestors_[f], h.top_ancestors_[p]);
        }
      }
      for (std::int32_t child : children[f]) {
        if (--pending[child] == 0) ready.push(child);
      }
    }
  }
  return h;
}

std::optional<std::int32_t> FieldHierarchy::field_index(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> FieldHierarchy::parents_of(std::string_view field_id) const {
  auto index = field_index(field_id);
  if (!index) throw NotFoundError("unknown field id: " + std::string(field_id));
  std::vector<std::string> result;
  result.reserve(top_ancestors_[*index].size());
  for (std::int32_t top : top_ancestors_[*index]) {
    result.push_back(nodes_[top].id);
  }
  return result;
}

FieldHierarchy load_field_hierarchy(const std::filesystem::path& path) {
  auto lines = read_lines(path);
  std::vector<FieldNode> nodes;
  nodes.reserve(lines.size());
  for (const auto& line : lines) {
    nodes.push_back(parse_field_record(path.string(), line));
  }
  return FieldHierarchy::from_nodes(std::move(nodes));
}

FieldWeights paper_field_weights(const FieldHierarchy& hierarchy,
                                 const Paper& paper) {
  // F_P keeps only subfields that reach at least one top field, so the
  // per-paper total is conserved at 1 whenever F_P is non-empty.
  std::vector<std::int32_t> mapped;
  for (const auto& sub : paper.subfield_ids) {
    auto index = hierarchy.field_index(sub);
    if (index && !hierarchy.top_ancestors(*index).empty()) {
      mapped.push_back(*index);
    }
  }
  std::sort(mapped.begin(), mapped.end());
  mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
  FieldWeights weights;
  if (mapped.empty()) return weights;
  double per_subfield = 1.0 / static_cast<double>(mapped.size());
  for (std::int32_t sub : mapped) {
    const auto& tops = hierarchy.top_ancestors(sub);
    double share = per_subfield / static_cast<double>(tops.size());
    for (std::int32_t top : tops) {
      weights[hierarchy.node_at(top).id] += share;
    }
  }
  return weights;
}

FieldWeights author_field_weights(const FieldHierarchy& hierarchy,
                                  const Corpus& corpus,
                                  std::string_view author_id) {
  auto index = corpus.author_index(author_id);
  if (!index) throw NotFoundError("unknown author id: " + std::string(author_id));
  FieldWeights total;
  for (std::int32_t p : corpus.author_at(*index).paper_indices) {
    for (const auto& [field, w] : paper_field_weights(hierarchy, corpus.paper_at(p))) {
      total[field] += w;
    }
  }
  return total;
}

std::optional<std::string> primary_field_of_weights(const FieldWeights& weights) {
  // Iteration is in ascending field id, so keeping a strict maximum
  // implements the lexicographic tie rule.
  std::optional<std::string> best;
  double best_weight = 0.0;
  for (const auto& [field, w] : weights) {
    if (!best || w > best_weight) {
      best = field;
      best_weight = w;
    }
  }
  return best;
}

std::optional<std::string> author_primary_field(const FieldHierarchy& hierarchy,
                                                const Corpus& corpus,
                                                std::string_view author_id) {
  return primary_field_of_weights(author_field_weights(hierarchy, corpus, author_id));
}

FieldAssignment assign_fields(const FieldHierarchy& hierarchy,
                              const Corpus& corpus, int threads) {
  FieldAssignment assignment;
  assignment.primary.resize(corpus.author_count());
  parallel_chunks(corpus.author_count(), threads,
                  [&](std::size_t begin, std::size_t end, std::size_t) {
                    for (std::size_t a = begin; a < end; ++a) {
                      assignment.primary[a] = author_primary_field(
                          hierarchy, corpus, corpus.author_at(
                                                 static_cast<std::int32_t>(a)).id);
                    }
                  });
  return assignment;
}

}  // namespace scholnet
