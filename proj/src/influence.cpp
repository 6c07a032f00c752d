#include "scholnet/influence.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "scholnet/csv.hpp"
#include "scholnet/errors.hpp"
#include "scholnet/parallel.hpp"

namespace scholnet {

namespace {

// Packs an ordered author pair (low, high) into one map key.
std::uint64_t pair_key(std::int32_t low, std::int32_t high) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(low)) << 32) |
         static_cast<std::uint32_t>(high);
}

std::int64_t author_total(const Corpus& corpus, std::int32_t author,
                          WeightKind kind) {
  const Author& a = corpus.author_at(author);
  return kind == WeightKind::kCitations
             ? a.citation_total
             : static_cast<std::int64_t>(a.paper_indices.size());
}

}  // namespace

std::string_view weight_kind_name(WeightKind kind) {
  return kind == WeightKind::kCitations ? "citations" : "papers";
}

std::optional<WeightKind> weight_kind_from_name(std::string_view name) {
  if (name == "citations") return WeightKind::kCitations;
  if (name == "papers") return WeightKind::kPapers;
  return std::nullopt;
}

InfluenceNetwork build_influence_network(const Corpus& corpus, WeightKind kind,
                                         int threads) {
  InfluenceNetwork net;
  net.kind_ = kind;
  net.from_filtered_ = corpus.filtered();

  // Joint values per unordered coauthor pair. Papers are sharded and the
  // per-shard integer sums merged in shard order, so the totals are
  // independent of the thread count.
  using PairMap = std::unordered_map<std::uint64_t, std::int64_t>;
  PairMap joint = parallel_map_reduce<PairMap>(
      corpus.paper_count(), threads,
      [&](std::size_t begin, std::size_t end) {
        PairMap partial;
        for (std::size_t p = begin; p < end; ++p) {
          const auto& team = corpus.paper_author_indices(static_cast<std::int32_t>(p));
          std::int64_t value =
              kind == WeightKind::kCitations
                  ? corpus.paper_at(static_cast<std::int32_t>(p)).citation_count
                  : 1;
          for (std::size_t i = 0; i < team.size(); ++i) {
            for (std::size_t j = i + 1; j < team.size(); ++j) {
              partial[pair_key(team[i], team[j])] += value;
            }
          }
        }
        return partial;
      },
      [](PairMap& acc, PairMap&& partial) {
        for (const auto& [key, value] : partial) acc[key] += value;
      });

  std::vector<std::pair<std::uint64_t, std::int64_t>> pairs(joint.begin(),
                                                            joint.end());
  std::sort(pairs.begin(), pairs.end());

  std::size_t n = corpus.author_count();
  net.out_edges_.assign(n, {});
  net.skipped_flag_.assign(n, 0);
  std::vector<std::int64_t> totals(n);
  for (std::size_t a = 0; a < n; ++a) {
    totals[a] = author_total(corpus, static_cast<std::int32_t>(a), kind);
    if (totals[a] == 0) {
      net.skipped_flag_[a] = 1;
      net.skipped_.push_back(static_cast<std::int32_t>(a));
    }
  }

  for (const auto& [key, value] : pairs) {
    auto low = static_cast<std::int32_t>(key >> 32);
    auto high = static_cast<std::int32_t>(key & 0xffffffffu);
    if (totals[low] > 0) {
      net.out_edges_[low].push_back(InfluenceEdge{
          high, value, static_cast<double>(value) / static_cast<double>(totals[low])});
    }
    if (totals[high] > 0) {
      net.out_edges_[high].push_back(InfluenceEdge{
          low, value, static_cast<double>(value) / static_cast<double>(totals[high])});
    }
  }
  for (auto& edges : net.out_edges_) {
    std::sort(edges.begin(), edges.end(),
              [](const InfluenceEdge& a, const InfluenceEdge& b) {
                return a.target < b.target;
              });
  }
  return net;
}

namespace {

std::int32_t require_node(const Corpus& corpus, std::string_view id) {
  auto index = corpus.author_index(id);
  if (!index) throw NotFoundError("unknown author id: " + std::string(id));
  return *index;
}

}  // namespace

double InfluenceNetwork::influence_weight(const Corpus& corpus,
                                          std::string_view a,
                                          std::string_view b) const {
  std::int32_t source = require_node(corpus, a);
  std::int32_t target = require_node(corpus, b);
  if (source == target) return 0.0;
  const auto& edges = out_edges_[source];
  auto it = std::lower_bound(edges.begin(), edges.end(), target,
                             [](const InfluenceEdge& e, std::int32_t t) {
                               return e.target < t;
                             });
  if (it == edges.end() || it->target != target) return 0.0;
  return it->weight;
}

std::optional<std::int32_t> InfluenceNetwork::top_collaborator_index(
    std::int32_t author) const {
  const auto& edges = out_edges_[author];
  if (edges.empty()) return std::nullopt;
  // Edges are in ascending target id, so a strict maximum on the joint
  // value lands on the lexicographically smallest id among ties.
  const InfluenceEdge* best = &edges[0];
  for (const auto& edge : edges) {
    if (edge.joint_value > best->joint_value) best = &edge;
  }
  return best->target;
}

std::optional<std::string> InfluenceNetwork::top_collaborator(
    const Corpus& corpus, std::string_view author_id) const {
  auto index = top_collaborator_index(require_node(corpus, author_id));
  if (!index) return std::nullopt;
  return corpus.author_at(*index).id;
}

double InfluenceNetwork::top_influence_index(std::int32_t author) const {
  double best = 0.0;
  for (const auto& edge : out_edges_[author]) {
    best = std::max(best, edge.weight);
  }
  return best;
}

double InfluenceNetwork::top_influence(const Corpus& corpus,
                                       std::string_view author_id) const {
  return top_influence_index(require_node(corpus, author_id));
}

void InfluenceNetwork::write_csv(const Corpus& corpus,
                                 const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "source,target,joint_value,weight\n";
  for (std::size_t a = 0; a < out_edges_.size(); ++a) {
    const std::string& source = corpus.author_at(static_cast<std::int32_t>(a)).id;
    for (const auto& edge : out_edges_[a]) {
      out << csv_escape(source) << ','
          << csv_escape(corpus.author_at(edge.target).id) << ','
          << edge.joint_value << ',' << format_real(edge.weight) << '\n';
    }
  }
}

}  // namespace scholnet
