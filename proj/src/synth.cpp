#include "scholnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "json.hpp"
#include "scholnet/errors.hpp"

namespace scholnet {

namespace {

using ordered_json = nlohmann::ordered_json;

// All sampling goes through these helpers on top of mt19937_64, whose
// output sequence is fixed by the standard; std::*_distribution is
// implementation-defined and would break byte-identical regeneration.
struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  std::uint64_t below(std::uint64_t n) { return engine() % n; }

  double real01() {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
  }

  // Shifted geometric with the given mean (>= 1), before clamping.
  int team_size(double mean, int cap) {
    if (mean <= 1.0) return 1;
    double p = 1.0 / mean;
    double extra = std::log1p(-real01()) / std::log1p(-p);
    // Clamp in double space; the tail can exceed integer range.
    if (!(extra < static_cast<double>(cap))) return cap;
    return std::clamp(1 + static_cast<int>(extra), 1, cap);
  }

  // Discrete truncated power law: scale * (Pareto(alpha) - 1), floored.
  std::int64_t citations(double alpha, double scale, std::int64_t max) {
    double x = std::pow(1.0 - real01(), -1.0 / (alpha - 1.0));
    double c = scale * (x - 1.0);
    if (!(c < static_cast<double>(max))) return max;
    return std::clamp<std::int64_t>(static_cast<std::int64_t>(c), 0, max);
  }

  // First `need` elements of a partial Fisher-Yates shuffle.
  void pick_distinct(std::vector<int>& pool, std::size_t need) {
    for (std::size_t i = 0; i < need && i < pool.size(); ++i) {
      std::size_t j = i + static_cast<std::size_t>(below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(std::min(need, pool.size()));
  }
};

std::string padded(const char* prefix, int value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, width, value);
  return std::string(buf);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

void GeneratorSpec::validate() const {
  if (fields.empty()) throw ConfigError("generator needs at least one field");
  for (const auto& f : fields) {
    if (f.authors < 1) throw ConfigError("authors per field must be positive");
    if (f.papers < 1) throw ConfigError("papers per field must be positive");
    if (f.team_mean < 1.0) throw ConfigError("team mean must be >= 1");
  }
  if (subfields_per_field < 1) throw ConfigError("subfields per field must be positive");
  if (cross_parent_prob < 0.0 || cross_parent_prob > 1.0) {
    throw ConfigError("cross parent probability must be in [0, 1]");
  }
  if (max_subfields_per_paper < 1) {
    throw ConfigError("max subfields per paper must be positive");
  }
  if (cite_alpha <= 1.0) throw ConfigError("citation exponent must exceed 1");
  if (cite_scale <= 0.0) throw ConfigError("citation scale must be positive");
  if (cite_max < 0) throw ConfigError("citation cap must be >= 0");
  if (year_from > year_to) throw ConfigError("year_from must not exceed year_to");
  if (max_team_size < 1) throw ConfigError("max team size must be positive");
  if (teammate_window < 1) throw ConfigError("teammate window must be positive");
}

SynthStats generate_synthetic_corpus(const GeneratorSpec& spec,
                                     std::uint64_t seed,
                                     const std::filesystem::path& out_dir) {
  spec.validate();
  std::filesystem::create_directories(out_dir);
  Rng rng(seed);
  SynthStats stats;

  auto field_count = static_cast<int>(spec.fields.size());
  stats.fields = field_count;

  // fields.jsonl: top fields first, then the subfield layer.
  {
    auto out = open_output(out_dir / "fields.jsonl");
    for (int f = 0; f < field_count; ++f) {
      ordered_json record{{"id", padded("F", f, 3)},
                          {"name", "Field " + std::to_string(f)},
                          {"parents", ordered_json::array()},
                          {"top", true}};
      out << record.dump() << '\n';
    }
    for (int f = 0; f < field_count; ++f) {
      for (int s = 0; s < spec.subfields_per_field; ++s) {
        std::vector<std::string> parents{padded("F", f, 3)};
        if (field_count > 1 && rng.real01() < spec.cross_parent_prob) {
          int other = static_cast<int>(rng.below(field_count - 1));
          if (other >= f) ++other;
          parents.push_back(padded("F", other, 3));
        }
        ordered_json record{{"id", padded("F", f, 3) + padded("_S", s, 4)},
                            {"name", "Subfield " + std::to_string(s)},
                            {"parents", parents},
                            {"top", false}};
        out << record.dump() << '\n';
        ++stats.subfields;
      }
    }
  }

  // papers.jsonl with inline citation counts.
  std::vector<std::int64_t> paper_citations;
  {
    auto out = open_output(out_dir / "papers.jsonl");
    int paper_index = 0;
    for (int f = 0; f < field_count; ++f) {
      const auto& field_spec = spec.fields[f];
      int pool = field_spec.authors;
      stats.authors += pool;
      int window = std::min(spec.teammate_window, pool - 1);
      int year_span = spec.year_to - spec.year_from + 1;
      for (int p = 0; p < field_spec.papers; ++p, ++paper_index) {
        int team_cap = std::min(spec.max_team_size, pool);
        int team = rng.team_size(field_spec.team_mean, team_cap);

        // The lead cycles through the pool; teammates come from a ring
        // window around it so that collaborator pairs recur.
        int lead = p % pool;
        std::vector<std::string> authors;
        authors.reserve(team);
        authors.push_back(padded("F", f, 3) + padded("_A", lead, 5));
        if (team > 1) {
          std::vector<int> candidates;
          candidates.reserve(2 * static_cast<std::size_t>(window));
          for (int d = 1; d <= window; ++d) {
            candidates.push_back((lead + d) % pool);
            candidates.push_back((lead - d + pool) % pool);
          }
          std::sort(candidates.begin(), candidates.end());
          candidates.erase(std::unique(candidates.begin(), candidates.end()),
                           candidates.end());
          rng.pick_distinct(candidates, static_cast<std::size_t>(team - 1));
          std::sort(candidates.begin(), candidates.end());
          for (int teammate : candidates) {
            authors.push_back(padded("F", f, 3) + padded("_A", teammate, 5));
          }
        }

        int subfield_count =
            1 + static_cast<int>(rng.below(std::min(spec.max_subfields_per_paper,
                                                    spec.subfields_per_field)));
        std::vector<int> subfield_pool(spec.subfields_per_field);
        for (int s = 0; s < spec.subfields_per_field; ++s) subfield_pool[s] = s;
        rng.pick_distinct(subfield_pool, static_cast<std::size_t>(subfield_count));
        std::sort(subfield_pool.begin(), subfield_pool.end());
        std::vector<std::string> subfields;
        subfields.reserve(subfield_pool.size());
        for (int s : subfield_pool) {
          subfields.push_back(padded("F", f, 3) + padded("_S", s, 4));
        }

        int year = spec.year_from + static_cast<int>(rng.below(year_span));
        std::int64_t citations =
            rng.citations(spec.cite_alpha, spec.cite_scale, spec.cite_max);
        paper_citations.push_back(citations);

        ordered_json record{{"id", padded("P", paper_index, 6)},
                            {"year", year},
                            {"authors", authors},
                            {"fields", subfields},
                            {"citations", citations}};
        out << record.dump() << '\n';
        ++stats.papers;
      }
    }
  }

  // citations.jsonl: paper g is cited by the papers following it in a
  // fixed ring, so in-degree reproduces the inline count exactly and a
  // corpus loaded through the edge file matches the inline one.
  auto total = static_cast<std::int64_t>(paper_citations.size());
  if (spec.write_citation_edges && total >= 2) {
    auto out = open_output(out_dir / "citations.jsonl");
    for (std::int64_t g = 0; g < total; ++g) {
      std::string cited = padded("P", static_cast<int>(g), 6);
      for (std::int64_t k = 0; k < paper_citations[g]; ++k) {
        std::int64_t citing = (g + 1 + k % (total - 1)) % total;
        ordered_json record{{"citing", padded("P", static_cast<int>(citing), 6)},
                            {"cited", cited}};
        out << record.dump() << '\n';
        ++stats.citation_edges;
      }
    }
  }
  return stats;
}

}  // namespace scholnet
