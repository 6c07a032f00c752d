#ifndef SCHOLNET_SYNTH_HPP_
#define SCHOLNET_SYNTH_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace scholnet {

// One synthetic top field with a disjoint author pool. Teams are drawn
// from a window of neighboring pool indices, so recurring collaborators
// (and therefore meaningful top-collaborator structure) emerge; mean
// team size is the mean of a shifted geometric before clamping.
struct SynthFieldSpec {
  int authors = 100;
  int papers = 1000;
  double team_mean = 3.0;
};

struct GeneratorSpec {
  std::vector<SynthFieldSpec> fields = {SynthFieldSpec{}};
  int subfields_per_field = 5;
  double cross_parent_prob = 0.0;  // chance a subfield gains a second top parent
  int max_subfields_per_paper = 3;
  double cite_alpha = 1.9;         // discrete power-law exponent (> 1)
  double cite_scale = 5.0;
  std::int64_t cite_max = 2000;
  int year_from = 1950;
  int year_to = 2020;
  int max_team_size = 10;
  int teammate_window = 8;
  bool write_citation_edges = true;

  void validate() const;  // throws ConfigError
};

struct SynthStats {
  std::int64_t papers = 0;
  std::int64_t authors = 0;
  std::int64_t fields = 0;
  std::int64_t subfields = 0;
  std::int64_t citation_edges = 0;
};

// Writes papers.jsonl, fields.jsonl and (unless disabled) citations.jsonl
// into `out_dir`. The same spec and seed always produce byte-identical
// files: all randomness flows through one mt19937_64 stream and no
// platform-dependent distribution is used. The citation edge file is
// constructed so that in-degree per paper equals the inline count.
SynthStats generate_synthetic_corpus(const GeneratorSpec& spec,
                                     std::uint64_t seed,
                                     const std::filesystem::path& out_dir);

}  // namespace scholnet

#endif  // SCHOLNET_SYNTH_HPP_
