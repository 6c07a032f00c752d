#include "scholnet/counterfactual.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "scholnet/errors.hpp"
#include "scholnet/parallel.hpp"

namespace scholnet {

namespace {

bool paper_lists_author(const Corpus& corpus, std::int32_t paper,
                        std::int32_t author) {
  const auto& team = corpus.paper_author_indices(paper);
  return std::binary_search(team.begin(), team.end(), author);
}

MetricSnapshot snapshot_of(const Corpus& corpus,
                           const std::vector<std::int32_t>& papers) {
  MetricSnapshot snap;
  snap.papers = static_cast<std::int64_t>(papers.size());
  std::vector<std::int64_t> citations;
  citations.reserve(papers.size());
  for (std::int32_t p : papers) {
    citations.push_back(corpus.paper_at(p).citation_count);
    snap.citations += citations.back();
  }
  snap.h = extended_h_index(citations);
  return snap;
}

CounterfactualRecord build_record(const Corpus& corpus,
                                  const InfluenceNetwork& net,
                                  std::int32_t author,
                                  const FieldAssignment* assignment) {
  const Author& a = corpus.author_at(author);
  CounterfactualRecord record;
  record.author_id = a.id;
  if (assignment != nullptr) record.field = assignment->of(author);

  record.original = snapshot_of(corpus, a.paper_indices);

  auto top = net.top_collaborator_index(author);
  if (!top) {
    record.reduced = record.original;
    return record;
  }
  record.top_collaborator = corpus.author_at(*top).id;
  std::vector<std::int32_t> kept;
  kept.reserve(a.paper_indices.size());
  for (std::int32_t p : a.paper_indices) {
    if (!paper_lists_author(corpus, p, *top)) kept.push_back(p);
  }
  record.reduced = snapshot_of(corpus, kept);
  return record;
}

// Assigns 1-based ranks by sorting an index permutation under the
// rank_authors tie chain evaluated on the given snapshot selector.
template <typename SnapshotSelector>
void assign_ranks(std::vector<CounterfactualRecord>& records,
                  SnapshotSelector&& select, bool reduced) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const MetricSnapshot& a = select(records[x]);
    const MetricSnapshot& b = select(records[y]);
    if (auto cmp = a.h <=> b.h; cmp != 0) return cmp > 0;
    if (a.citations != b.citations) return a.citations > b.citations;
    if (a.papers != b.papers) return a.papers > b.papers;
    return records[x].author_id < records[y].author_id;
  });
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    MetricSnapshot& snap =
        reduced ? records[order[pos]].reduced : records[order[pos]].original;
    snap.h_rank = static_cast<std::int32_t>(pos + 1);
  }
}

// Counterfactuals plus both rankings for one cohort of author indices.
// Every cohort member is reduced simultaneously; the reduced ranking is
// one coherent re-ranking of the whole cohort.
std::vector<CounterfactualRecord> rank_cohort(const Corpus& corpus,
                                              const InfluenceNetwork& net,
                                              const std::vector<std::int32_t>& cohort,
                                              const FieldAssignment* assignment,
                                              int threads) {
  std::vector<CounterfactualRecord> records(cohort.size());
  parallel_chunks(cohort.size(), threads,
                  [&](std::size_t begin, std::size_t end, std::size_t) {
                    for (std::size_t i = begin; i < end; ++i) {
                      records[i] = build_record(corpus, net, cohort[i], assignment);
                    }
                  });
  assign_ranks(records, [](const CounterfactualRecord& r) -> const MetricSnapshot& {
    return r.original;
  }, /*reduced=*/false);
  assign_ranks(records, [](const CounterfactualRecord& r) -> const MetricSnapshot& {
    return r.reduced;
  }, /*reduced=*/true);
  std::sort(records.begin(), records.end(),
            [](const CounterfactualRecord& a, const CounterfactualRecord& b) {
              return a.original.h_rank < b.original.h_rank;
            });
  return records;
}

}  // namespace

std::vector<std::string> reduced_paper_set(const Corpus& corpus,
                                           std::string_view author_id,
                                           std::string_view t) {
  auto author = corpus.author_index(author_id);
  if (!author) throw NotFoundError("unknown author id: " + std::string(author_id));

  auto t_index = corpus.author_index(t);
  std::vector<std::string> kept;
  for (std::int32_t p : corpus.author_at(*author).paper_indices) {
    bool joint;
    if (t_index) {
      joint = paper_lists_author(corpus, p, *t_index);
    } else {
      // t may name a dropped author that still appears on retained
      // papers' full author lists.
      const auto& ids = corpus.paper_at(p).author_ids;
      joint = std::find(ids.begin(), ids.end(), t) != ids.end();
    }
    if (!joint) kept.push_back(corpus.paper_at(p).id);
  }
  return kept;
}

CounterfactualRecord counterfactual_author(const Corpus& corpus,
                                           const InfluenceNetwork& net,
                                           std::string_view author_id,
                                           const FieldAssignment* assignment) {
  auto author = corpus.author_index(author_id);
  if (!author) throw NotFoundError("unknown author id: " + std::string(author_id));
  return build_record(corpus, net, *author, assignment);
}

std::vector<CounterfactualRecord> counterfactual_rankings(
    const Corpus& corpus, const InfluenceNetwork& net,
    const std::optional<std::string>& field, const FieldAssignment& assignment,
    const FieldHierarchy* hierarchy, int threads) {
  if (field && hierarchy != nullptr && !hierarchy->field_index(*field)) {
    throw NotFoundError("unknown field id: " + *field);
  }
  std::vector<std::int32_t> cohort;
  for (std::size_t a = 0; a < corpus.author_count(); ++a) {
    if (assignment.of(static_cast<std::int32_t>(a)) == field) {
      cohort.push_back(static_cast<std::int32_t>(a));
    }
  }
  return rank_cohort(corpus, net, cohort, &assignment, threads);
}

std::vector<CounterfactualRecord> counterfactual_all(
    const Corpus& corpus, const InfluenceNetwork& net,
    const FieldAssignment& assignment, int threads) {
  std::map<std::string, std::vector<std::int32_t>> cohorts;
  std::vector<std::int32_t> unassigned;
  for (std::size_t a = 0; a < corpus.author_count(); ++a) {
    auto index = static_cast<std::int32_t>(a);
    const auto& field = assignment.of(index);
    if (field) {
      cohorts[*field].push_back(index);
    } else {
      unassigned.push_back(index);
    }
  }
  std::vector<CounterfactualRecord> all;
  all.reserve(corpus.author_count());
  for (const auto& [field, cohort] : cohorts) {
    auto records = rank_cohort(corpus, net, cohort, &assignment, threads);
    std::move(records.begin(), records.end(), std::back_inserter(all));
  }
  if (!unassigned.empty()) {
    auto records = rank_cohort(corpus, net, unassigned, &assignment, threads);
    std::move(records.begin(), records.end(), std::back_inserter(all));
  }
  return all;
}

}  // namespace scholnet
