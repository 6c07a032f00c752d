#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "scholnet/counterfactual.hpp"
#include "scholnet/errors.hpp"

using namespace scholnet;
using namespace scholnet::testing;

namespace {

// Joint citation sum between a and t by scanning a's papers directly.
std::int64_t brute_joint_citations(const Corpus& corpus, const std::string& a,
                                   const std::string& t) {
  std::int64_t sum = 0;
  auto index = corpus.author_index(a);
  REQUIRE(index.has_value());
  for (std::int32_t p : corpus.author_at(*index).paper_indices) {
    const auto& ids = corpus.paper_at(p).author_ids;
    if (std::find(ids.begin(), ids.end(), t) != ids.end()) {
      sum += corpus.paper_at(p).citation_count;
    }
  }
  return sum;
}

}  // namespace

TEST_CASE("reduced paper set filters by membership of t") {
  Corpus corpus = corpus_from({
      make_paper("p1", 2000, {"a", "t"}, 1),
      make_paper("p2", 2001, {"a"}, 1),
      make_paper("p3", 2002, {"a", "t", "c"}, 1),
  });
  CHECK(reduced_paper_set(corpus, "a", "t") == std::vector<std::string>{"p2"});
  // t not a coauthor: the full paper set survives.
  CHECK(reduced_paper_set(corpus, "a", "c") ==
        std::vector<std::string>{"p1", "p2"});
  CHECK(reduced_paper_set(corpus, "a", "stranger") ==
        std::vector<std::string>{"p1", "p2", "p3"});
  CHECK_THROWS_AS(reduced_paper_set(corpus, "ghost", "t"), NotFoundError);
}

TEST_CASE("reduced paper set handles dropped coauthors by name") {
  // "drop" is filtered out but still listed on q0's author list.
  std::vector<Paper> papers;
  for (int i = 0; i < 10; ++i) {
    std::vector<std::string> team = {"keep"};
    if (i == 0) team.push_back("drop");
    papers.push_back(make_paper("q" + std::to_string(i), 2000, team, 50));
  }
  FilterConfig config;
  config.min_papers = 5;
  config.min_citations = 100;
  Corpus corpus = filter_corpus(Corpus::from_records(std::move(papers)), config);
  REQUIRE(corpus.author_count() == 1);
  auto reduced = reduced_paper_set(corpus, "keep", "drop");
  CHECK(reduced.size() == 9);
  CHECK(std::find(reduced.begin(), reduced.end(), "q0") == reduced.end());
}

TEST_CASE("everything joint with t empties the reduced set") {
  Corpus corpus = corpus_from({
      make_paper("p1", 2000, {"a", "t"}, 3),
      make_paper("p2", 2001, {"a", "t"}, 4),
  });
  CHECK(reduced_paper_set(corpus, "a", "t").empty());
}

TEST_CASE("counterfactual on the toy network") {
  Corpus corpus = corpus_from(toy_network_papers());
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);

  CounterfactualRecord a = counterfactual_author(corpus, net, "A");
  CHECK(a.top_collaborator == "B");
  CHECK(a.original.citations == 200);
  CHECK(a.reduced.citations == 150);
  CHECK(a.original.papers == 2);
  CHECK(a.reduced.papers == 1);

  CounterfactualRecord b = counterfactual_author(corpus, net, "B");
  CHECK(b.top_collaborator == "D");
  CHECK(b.original.citations == 300);
  CHECK(b.reduced.citations == 150);
}

TEST_CASE("authors without a top collaborator keep their metrics") {
  Corpus corpus = corpus_from({
      make_paper("p1", 2000, {"solo"}, 10),
      make_paper("p2", 2001, {"solo"}, 20),
  });
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);
  CounterfactualRecord r = counterfactual_author(corpus, net, "solo");
  CHECK_FALSE(r.top_collaborator.has_value());
  CHECK(r.reduced.papers == r.original.papers);
  CHECK(r.reduced.citations == r.original.citations);
  CHECK(r.reduced.h == r.original.h);
}

TEST_CASE("an author publishing only with t reduces to nothing") {
  Corpus corpus = corpus_from({
      make_paper("p1", 2000, {"a", "t"}, 30),
      make_paper("p2", 2001, {"a", "t"}, 40),
      make_paper("p3", 2002, {"t"}, 100),
  });
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);
  CounterfactualRecord r = counterfactual_author(corpus, net, "a");
  CHECK(r.top_collaborator == "t");
  CHECK(r.reduced.papers == 0);
  CHECK(r.reduced.citations == 0);
  CHECK(r.reduced.h.values.empty());
}

TEST_CASE("monotone reduction and conservation on random corpora") {
  std::mt19937_64 rng(89);
  for (int round = 0; round < 30; ++round) {
    Corpus corpus = corpus_from(random_papers(rng, 15, 40));
    for (WeightKind kind : {WeightKind::kCitations, WeightKind::kPapers}) {
      InfluenceNetwork net = build_influence_network(corpus, kind);
      for (std::size_t a = 0; a < corpus.author_count(); ++a) {
        const std::string& id = corpus.author_at(static_cast<std::int32_t>(a)).id;
        CounterfactualRecord r = counterfactual_author(corpus, net, id);
        CHECK(r.reduced.papers <= r.original.papers);
        CHECK(r.reduced.citations <= r.original.citations);
        CHECK(compare_h_sequences(r.reduced.h, r.original.h) !=
              std::strong_ordering::greater);
        if (r.top_collaborator) {
          CHECK(r.original.citations - r.reduced.citations ==
                brute_joint_citations(corpus, id, *r.top_collaborator));
        } else {
          CHECK(r.original.citations == r.reduced.citations);
        }
      }
    }
  }
}

TEST_CASE("counterfactuals are independent of evaluation order") {
  std::mt19937_64 rng(97);
  Corpus corpus = corpus_from(random_papers(rng, 10, 30));
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);

  std::vector<std::string> forward, backward;
  for (std::size_t a = 0; a < corpus.author_count(); ++a) {
    forward.push_back(corpus.author_at(static_cast<std::int32_t>(a)).id);
  }
  backward.assign(forward.rbegin(), forward.rend());

  std::map<std::string, std::int64_t> reduced_first, reduced_second;
  for (const auto& id : forward) {
    reduced_first[id] = counterfactual_author(corpus, net, id).reduced.citations;
  }
  for (const auto& id : backward) {
    reduced_second[id] = counterfactual_author(corpus, net, id).reduced.citations;
  }
  CHECK(reduced_first == reduced_second);
}

TEST_CASE("single-author cohorts rank first in both orders") {
  FieldHierarchy h = FieldHierarchy::from_nodes([] {
    std::vector<FieldNode> nodes(1);
    nodes[0].id = "f";
    nodes[0].top = true;
    return nodes;
  }());
  Corpus corpus = corpus_from({make_paper("p1", 2000, {"a"}, 10, {"f"})});
  FieldAssignment assignment = assign_fields(h, corpus);
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);
  auto records = counterfactual_rankings(corpus, net, std::string("f"),
                                         assignment, &h);
  REQUIRE(records.size() == 1);
  CHECK(records[0].original.h_rank == 1);
  CHECK(records[0].reduced.h_rank == 1);
}

TEST_CASE("rank flip when removal reverses the h order") {
  // x: strong only through t; y: self-sufficient.
  FieldHierarchy h = FieldHierarchy::from_nodes([] {
    std::vector<FieldNode> nodes(1);
    nodes[0].id = "f";
    nodes[0].top = true;
    return nodes;
  }());
  std::vector<Paper> papers;
  // x has 4 papers with t, 10 citations each.
  for (int i = 0; i < 4; ++i) {
    papers.push_back(make_paper("x" + std::to_string(i), 2000, {"x", "t"}, 10,
                                {"f"}));
  }
  // y has 3 solo papers, 3 citations each.
  for (int i = 0; i < 3; ++i) {
    papers.push_back(make_paper("y" + std::to_string(i), 2000, {"y"}, 3, {"f"}));
  }
  // t also has solo work so it outranks nobody by accident.
  papers.push_back(make_paper("t0", 2000, {"t"}, 1, {"f"}));
  Corpus corpus = corpus_from(papers);
  FieldAssignment assignment = assign_fields(h, corpus);
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);

  auto records = counterfactual_rankings(corpus, net, std::string("f"),
                                         assignment, &h);
  REQUIRE(records.size() == 3);
  auto find = [&](const std::string& id) {
    for (const auto& r : records) {
      if (r.author_id == id) return r;
    }
    FAIL("missing record");
    return CounterfactualRecord{};
  };
  CounterfactualRecord x = find("x");
  CounterfactualRecord y = find("y");
  // Originally x (h = [4,4,2]) outranks y (h = [3]); once x's joint
  // papers vanish its sequence collapses to [] and the order flips.
  CHECK(x.original.h_rank < y.original.h_rank);
  CHECK(y.reduced.h_rank < x.reduced.h_rank);
  CHECK(y.reduced.h_rank == 1);
  CHECK(x.reduced.h_rank == 3);
  CHECK(x.reduced.h.values.empty());
}

TEST_CASE("two-author cohort swaps ranks when removal flips the h order") {
  // t belongs to field g, so the f cohort is exactly {x, y}.
  FieldHierarchy h = FieldHierarchy::from_nodes([] {
    std::vector<FieldNode> nodes(2);
    nodes[0].id = "f";
    nodes[0].top = true;
    nodes[1].id = "g";
    nodes[1].top = true;
    return nodes;
  }());
  std::vector<Paper> papers;
  for (int i = 0; i < 4; ++i) {
    papers.push_back(make_paper("x" + std::to_string(i), 2000, {"x", "t"}, 10,
                                {"f"}));
  }
  for (int i = 0; i < 3; ++i) {
    papers.push_back(make_paper("y" + std::to_string(i), 2000, {"y"}, 3, {"f"}));
  }
  for (int i = 0; i < 5; ++i) {
    papers.push_back(make_paper("t" + std::to_string(i), 2000, {"t"}, 1, {"g"}));
  }
  Corpus corpus = corpus_from(papers);
  FieldAssignment assignment = assign_fields(h, corpus);
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);

  auto records = counterfactual_rankings(corpus, net, std::string("f"),
                                         assignment, &h);
  REQUIRE(records.size() == 2);
  CHECK(records[0].author_id == "x");
  CHECK(records[0].original.h_rank == 1);
  CHECK(records[0].reduced.h_rank == 2);
  CHECK(records[1].author_id == "y");
  CHECK(records[1].original.h_rank == 2);
  CHECK(records[1].reduced.h_rank == 1);
}

TEST_CASE("fields with no top collaborators keep the identity ranking") {
  FieldHierarchy h = FieldHierarchy::from_nodes([] {
    std::vector<FieldNode> nodes(1);
    nodes[0].id = "f";
    nodes[0].top = true;
    return nodes;
  }());
  Corpus corpus = corpus_from({
      make_paper("p1", 2000, {"a"}, 10, {"f"}),
      make_paper("p2", 2000, {"b"}, 20, {"f"}),
      make_paper("p3", 2000, {"c"}, 30, {"f"}),
  });
  FieldAssignment assignment = assign_fields(h, corpus);
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);
  auto records = counterfactual_rankings(corpus, net, std::string("f"),
                                         assignment, &h);
  for (const auto& r : records) {
    CHECK(r.original.h_rank == r.reduced.h_rank);
    CHECK_FALSE(r.top_collaborator.has_value());
  }
  CHECK_THROWS_AS(counterfactual_rankings(corpus, net, std::string("nope"),
                                          assignment, &h),
                  NotFoundError);
}

TEST_CASE("original and reduced rankings are permutations of the cohort") {
  std::mt19937_64 rng(101);
  FieldHierarchy h = FieldHierarchy::from_nodes([] {
    std::vector<FieldNode> nodes(1);
    nodes[0].id = "f";
    nodes[0].top = true;
    return nodes;
  }());
  for (int round = 0; round < 10; ++round) {
    auto papers = random_papers(rng, 12, 40);
    for (auto& p : papers) p.subfield_ids = {"f"};
    Corpus corpus = corpus_from(papers);
    FieldAssignment assignment = assign_fields(h, corpus);
    InfluenceNetwork net =
        build_influence_network(corpus, WeightKind::kCitations);
    auto records = counterfactual_rankings(corpus, net, std::string("f"),
                                           assignment, &h);
    std::set<std::int32_t> original_ranks, reduced_ranks;
    for (const auto& r : records) {
      original_ranks.insert(r.original.h_rank);
      reduced_ranks.insert(r.reduced.h_rank);
    }
    auto n = static_cast<std::int32_t>(records.size());
    CHECK(original_ranks.size() == records.size());
    CHECK(reduced_ranks.size() == records.size());
    CHECK(*original_ranks.begin() == 1);
    CHECK(*original_ranks.rbegin() == n);
    CHECK(*reduced_ranks.begin() == 1);
    CHECK(*reduced_ranks.rbegin() == n);
  }
}

TEST_CASE("counterfactual_all covers every author exactly once") {
  std::mt19937_64 rng(103);
  FieldHierarchy h = FieldHierarchy::from_nodes([] {
    std::vector<FieldNode> nodes(2);
    nodes[0].id = "f";
    nodes[0].top = true;
    nodes[1].id = "g";
    nodes[1].top = true;
    return nodes;
  }());
  auto papers = random_papers(rng, 12, 40);
  for (std::size_t i = 0; i < papers.size(); ++i) {
    // Some papers carry no field at all -> unassigned cohort.
    if (i % 3 == 0) continue;
    papers[i].subfield_ids = {i % 3 == 1 ? "f" : "g"};
  }
  Corpus corpus = corpus_from(papers);
  FieldAssignment assignment = assign_fields(h, corpus);
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);
  auto records = counterfactual_all(corpus, net, assignment);
  CHECK(records.size() == corpus.author_count());
  std::set<std::string> seen;
  for (const auto& r : records) seen.insert(r.author_id);
  CHECK(seen.size() == corpus.author_count());
}
