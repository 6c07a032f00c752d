#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "scholnet/errors.hpp"
#include "scholnet/influence.hpp"

using namespace scholnet;
using namespace scholnet::testing;

TEST_CASE("toy network reproduces the reference weights") {
  Corpus corpus = corpus_from(toy_network_papers());
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);

  CHECK(corpus.author_citations("A") == 200);
  CHECK(corpus.author_citations("B") == 300);
  CHECK(net.influence_weight(corpus, "A", "B") == 0.25);
  CHECK(net.influence_weight(corpus, "B", "A") ==
        doctest::Approx(50.0 / 300.0).epsilon(1e-12));
  CHECK(net.influence_weight(corpus, "B", "D") == 0.5);
  CHECK(net.top_collaborator(corpus, "B") == "D");
  CHECK(net.top_collaborator(corpus, "A") == "B");
  CHECK(net.top_influence(corpus, "A") == 0.25);
}

TEST_CASE("weight queries on non-edges and self pairs return zero") {
  Corpus corpus = corpus_from(toy_network_papers());
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);
  CHECK(net.influence_weight(corpus, "A", "A") == 0.0);
  CHECK(net.influence_weight(corpus, "A", "C") == 0.0);  // never coauthored
  CHECK_THROWS_AS(net.influence_weight(corpus, "A", "nobody"), NotFoundError);
  CHECK_THROWS_AS(net.top_collaborator(corpus, "nobody"), NotFoundError);
  CHECK_THROWS_AS(net.top_influence(corpus, "nobody"), NotFoundError);
}

TEST_CASE("authors without coauthored papers have no out-edges") {
  Corpus corpus = corpus_from({
      make_paper("p1", 2000, {"solo"}, 10),
      make_paper("p2", 2001, {"x", "y"}, 5),
  });
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);
  auto solo = corpus.author_index("solo");
  REQUIRE(solo.has_value());
  CHECK(net.out_edges(*solo).empty());
  CHECK(net.top_collaborator(corpus, "solo") == std::nullopt);
  CHECK(net.top_influence(corpus, "solo") == 0.0);
}

TEST_CASE("an author whose every citation is joint reaches weight 1") {
  Corpus corpus = corpus_from({
      make_paper("p1", 2000, {"a", "b"}, 25),
      make_paper("p2", 2001, {"b"}, 50),
  });
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);
  CHECK(net.top_influence(corpus, "a") == 1.0);
}

TEST_CASE("papers-kind weights count joint papers over paper totals") {
  Corpus corpus = corpus_from({
      make_paper("p1", 2000, {"a", "b"}, 100),
      make_paper("p2", 2001, {"a", "b"}, 0),
      make_paper("p3", 2002, {"a"}, 0),
      make_paper("p4", 2003, {"a"}, 0),
      make_paper("p5", 2004, {"b"}, 7),
  });
  InfluenceNetwork net = build_influence_network(corpus, WeightKind::kPapers);
  CHECK(net.influence_weight(corpus, "a", "b") == doctest::Approx(0.5));
  CHECK(net.influence_weight(corpus, "b", "a") ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(net.kind() == WeightKind::kPapers);
}

TEST_CASE("zero-total authors are skipped, not given weights") {
  // Under citations weights, author "z" has 0 total citations.
  Corpus corpus = corpus_from({
      make_paper("p1", 2000, {"z", "w"}, 0),
      make_paper("p2", 2001, {"w"}, 10),
  });
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);
  auto z = corpus.author_index("z");
  REQUIRE(z.has_value());
  CHECK(net.is_skipped(*z));
  CHECK(net.skipped_nodes() == std::vector<std::int32_t>{*z});
  CHECK(net.out_edges(*z).empty());
  // The coauthor keeps its (zero-weight) edge toward z.
  CHECK(net.influence_weight(corpus, "w", "z") == 0.0);
  // Under papers weights nobody is skipped.
  InfluenceNetwork papers_net =
      build_influence_network(corpus, WeightKind::kPapers);
  CHECK(papers_net.skipped_nodes().empty());
}

TEST_CASE("unfiltered corpora are accepted but flagged") {
  Corpus unfiltered = Corpus::from_records(toy_network_papers());
  InfluenceNetwork net =
      build_influence_network(unfiltered, WeightKind::kCitations);
  CHECK_FALSE(net.built_from_filtered_corpus());
  Corpus filtered = corpus_from(toy_network_papers());
  CHECK(build_influence_network(filtered, WeightKind::kCitations)
            .built_from_filtered_corpus());
}

TEST_CASE("top collaborator ties break toward the smaller author id") {
  Corpus corpus = corpus_from({
      make_paper("p1", 2000, {"a", "c"}, 30),
      make_paper("p2", 2001, {"a", "b"}, 30),
      make_paper("p3", 2002, {"a"}, 40),
  });
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);
  CHECK(net.top_collaborator(corpus, "a") == "b");
}

TEST_CASE("joint values match the exhaustive double loop on random corpora") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 40; ++round) {
    auto papers = random_papers(rng, 20, 50);
    Corpus corpus = corpus_from(papers);
    for (WeightKind kind : {WeightKind::kCitations, WeightKind::kPapers}) {
      InfluenceNetwork net = build_influence_network(corpus, kind);
      auto expected = oracle_joint_values(papers, kind);
      std::map<std::pair<std::string, std::string>, std::int64_t> actual;
      for (std::size_t a = 0; a < corpus.author_count(); ++a) {
        for (const auto& edge : net.out_edges(static_cast<std::int32_t>(a))) {
          actual[{corpus.author_at(static_cast<std::int32_t>(a)).id,
                  corpus.author_at(edge.target).id}] = edge.joint_value;
        }
      }
      CHECK(actual == expected);
    }
  }
}

TEST_CASE("denominator bound: every weight is in [0, 1]") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 20; ++round) {
    Corpus corpus = corpus_from(random_papers(rng, 15, 40));
    for (WeightKind kind : {WeightKind::kCitations, WeightKind::kPapers}) {
      InfluenceNetwork net = build_influence_network(corpus, kind);
      for (std::size_t a = 0; a < corpus.author_count(); ++a) {
        auto index = static_cast<std::int32_t>(a);
        std::int64_t total = kind == WeightKind::kCitations
                                 ? corpus.author_at(index).citation_total
                                 : static_cast<std::int64_t>(
                                       corpus.author_at(index).paper_indices.size());
        for (const auto& edge : net.out_edges(index)) {
          CHECK(edge.joint_value <= total);
          CHECK(edge.weight >= 0.0);
          CHECK(edge.weight <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("edge existence is symmetric") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 20; ++round) {
    // Citations >= 1 per paper so that no author is skipped.
    Corpus corpus = corpus_from(random_papers(rng, 15, 40));
    InfluenceNetwork net =
        build_influence_network(corpus, WeightKind::kCitations);
    for (std::size_t a = 0; a < corpus.author_count(); ++a) {
      for (const auto& edge : net.out_edges(static_cast<std::int32_t>(a))) {
        const auto& back = net.out_edges(edge.target);
        bool found = false;
        for (const auto& rev : back) {
          if (rev.target == static_cast<std::int32_t>(a)) {
            found = true;
            CHECK(rev.joint_value == edge.joint_value);
          }
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("scaling all citation counts preserves every top collaborator") {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 20; ++round) {
    auto papers = random_papers(rng, 12, 30);
    auto scaled = papers;
    std::int64_t k = 2 + static_cast<std::int64_t>(rng() % 9);
    for (auto& p : scaled) p.citation_count *= k;

    Corpus base = corpus_from(papers);
    Corpus big = corpus_from(scaled);
    InfluenceNetwork net_base =
        build_influence_network(base, WeightKind::kCitations);
    InfluenceNetwork net_big =
        build_influence_network(big, WeightKind::kCitations);
    for (std::size_t a = 0; a < base.author_count(); ++a) {
      const std::string& id = base.author_at(static_cast<std::int32_t>(a)).id;
      CHECK(net_base.top_collaborator(base, id) ==
            net_big.top_collaborator(big, id));
    }
  }
}

TEST_CASE("out-weights sum to one on exclusively two-author corpora") {
  std::mt19937_64 rng(59);
  for (int round = 0; round < 20; ++round) {
    // Every paper has exactly two authors and at least one citation.
    int author_count = 4 + static_cast<int>(rng() % 6);
    std::vector<Paper> papers;
    int paper_count = 5 + static_cast<int>(rng() % 30);
    for (int p = 0; p < paper_count; ++p) {
      int a = static_cast<int>(rng() % author_count);
      int b = static_cast<int>(rng() % author_count);
      if (b == a) b = (b + 1) % author_count;
      papers.push_back(make_paper("p" + std::to_string(p), 2000,
                                  {"A" + std::to_string(a), "A" + std::to_string(b)},
                                  1 + static_cast<std::int64_t>(rng() % 20)));
    }
    Corpus corpus = corpus_from(papers);
    InfluenceNetwork net =
        build_influence_network(corpus, WeightKind::kCitations);
    for (std::size_t a = 0; a < corpus.author_count(); ++a) {
      double sum = 0.0;
      for (const auto& edge : net.out_edges(static_cast<std::int32_t>(a))) {
        sum += edge.weight;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("network construction is identical across thread counts") {
  std::mt19937_64 rng(61);
  auto papers = random_papers(rng, 18, 50);
  Corpus corpus = corpus_from(papers);
  InfluenceNetwork serial =
      build_influence_network(corpus, WeightKind::kCitations, 1);
  for (int threads : {2, 4, 8}) {
    InfluenceNetwork parallel =
        build_influence_network(corpus, WeightKind::kCitations, threads);
    REQUIRE(parallel.node_count() == serial.node_count());
    for (std::size_t a = 0; a < serial.node_count(); ++a) {
      const auto& se = serial.out_edges(static_cast<std::int32_t>(a));
      const auto& pe = parallel.out_edges(static_cast<std::int32_t>(a));
      REQUIRE(se.size() == pe.size());
      for (std::size_t e = 0; e < se.size(); ++e) {
        CHECK(se[e].target == pe[e].target);
        CHECK(se[e].joint_value == pe[e].joint_value);
        CHECK(se[e].weight == pe[e].weight);
      }
    }
  }
}

TEST_CASE("csv dump lists both directions of every pair") {
  ScratchDir dir("netcsv");
  Corpus corpus = corpus_from(toy_network_papers());
  InfluenceNetwork net =
      build_influence_network(corpus, WeightKind::kCitations);
  net.write_csv(corpus, dir.path() / "network.csv");
  std::string text = read_file(dir.path() / "network.csv");
  CHECK(text.find("source,target,joint_value,weight\n") == 0);
  CHECK(text.find("A,B,50,0.25\n") != std::string::npos);
  CHECK(text.find("B,A,50,0.166666666667\n") != std::string::npos);
  CHECK(text.find("B,D,150,0.5\n") != std::string::npos);
}
