// Shared fixture builders for the test suites: hand-written toy corpora,
// seeded random corpora/hierarchies, and a scratch-directory guard.

#ifndef SCHOLNET_TESTS_FIXTURES_HPP_
#define SCHOLNET_TESTS_FIXTURES_HPP_

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "scholnet/corpus.hpp"
#include "scholnet/fields.hpp"

namespace scholnet::testing {

// Filter that keeps every valid paper and author.
inline FilterConfig keep_all() {
  FilterConfig config;
  config.year_from = -100000;
  config.year_to = 100000;
  config.max_team_size = 1000000;
  config.min_papers = 1;
  config.min_citations = 0;
  return config;
}

inline Paper make_paper(std::string id, int year,
                        std::vector<std::string> authors,
                        std::int64_t citations,
                        std::vector<std::string> subfields = {}) {
  Paper p;
  p.id = std::move(id);
  p.year = year;
  p.author_ids = std::move(authors);
  p.subfield_ids = std::move(subfields);
  p.citation_count = citations;
  return p;
}

inline Corpus corpus_from(std::vector<Paper> papers, bool filter_all = true) {
  Corpus corpus = Corpus::from_records(std::move(papers));
  return filter_all ? filter_corpus(corpus, keep_all()) : corpus;
}

// The four-author toy network: c_A = 200, c_B = 300, c_AB = 50,
// c_BD = 150, c_BC = 100, so w_AB = 0.25, w_BA = 50/300, w_BD = 0.5.
inline std::vector<Paper> toy_network_papers() {
  return {
      make_paper("p1", 2000, {"A", "B"}, 50),
      make_paper("p2", 2001, {"A"}, 150),
      make_paper("p3", 2002, {"B", "D"}, 150),
      make_paper("p4", 2003, {"B", "C"}, 100),
      make_paper("p5", 2004, {"C"}, 40),
      make_paper("p6", 2005, {"D"}, 10),
  };
}

// Random corpus over a small author pool. Every paper has at least one
// citation so that no author is skipped under either weight kind.
inline std::vector<Paper> random_papers(std::mt19937_64& rng, int max_authors,
                                        int max_papers, int max_team = 4,
                                        std::int64_t max_citations = 20,
                                        bool allow_zero_citations = false) {
  int author_count = 2 + static_cast<int>(rng() % (max_authors - 1));
  int paper_count = 1 + static_cast<int>(rng() % max_papers);
  std::vector<Paper> papers;
  papers.reserve(paper_count);
  for (int p = 0; p < paper_count; ++p) {
    int team = 1 + static_cast<int>(rng() % max_team);
    std::vector<std::string> authors;
    for (int t = 0; t < team; ++t) {
      std::string id = "A" + std::to_string(rng() % author_count);
      if (std::find(authors.begin(), authors.end(), id) == authors.end()) {
        authors.push_back(id);
      }
    }
    std::int64_t floor = allow_zero_citations ? 0 : 1;
    std::int64_t citations = floor + static_cast<std::int64_t>(
                                         rng() % (max_citations - floor + 1));
    int year = 1960 + static_cast<int>(rng() % 60);
    papers.push_back(make_paper("p" + std::to_string(p), year,
                                std::move(authors), citations));
  }
  return papers;
}

// Random DAG hierarchy: node i may only name earlier nodes as parents,
// which rules out cycles by construction. Roots are marked top with
// probability `top_prob`, every other node with a small one.
inline std::vector<FieldNode> random_hierarchy_nodes(std::mt19937_64& rng,
                                                     int max_nodes,
                                                     double top_prob = 0.3) {
  int n = 2 + static_cast<int>(rng() % (max_nodes - 1));
  std::vector<FieldNode> nodes(n);
  auto id_of = [](int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "N%03d", i);
    return std::string(buf);
  };
  auto real01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int i = 0; i < n; ++i) {
    nodes[i].id = id_of(i);
    nodes[i].name = "node " + std::to_string(i);
    if (i == 0) {
      nodes[i].top = true;  // at least one top field
      continue;
    }
    nodes[i].top = real01() < (i < 3 ? top_prob : 0.1);
    int parents = static_cast<int>(rng() % 3);
    for (int k = 0; k < parents; ++k) {
      nodes[i].parent_ids.push_back(id_of(static_cast<int>(rng() % i)));
    }
  }
  return nodes;
}

// Creates (and on destruction removes) a unique scratch directory under
// the process working directory.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::current_path() /
            ("scratch_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace scholnet::testing

#endif  // SCHOLNET_TESTS_FIXTURES_HPP_
