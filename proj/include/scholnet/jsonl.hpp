#ifndef SCHOLNET_JSONL_HPP_
#define SCHOLNET_JSONL_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace scholnet {

// One physical line of an input file together with its 1-based line
// number. Blank lines are dropped by the reader but numbering is kept,
// so parse errors always name the original line.
struct InputLine {
  std::string text;
  std::size_t number = 0;
};

// Reads a whole text file into lines. Files ending in ".gz" are
// transparently inflated (detected by extension only). Trailing '\r'
// is stripped so CRLF inputs parse the same as LF inputs.
std::vector<InputLine> read_lines(const std::filesystem::path& path);

// True if `path` names an existing regular file; used to probe for the
// optional .gz variant of an input.
std::filesystem::path resolve_input_file(const std::filesystem::path& dir,
                                         const std::string& stem,
                                         bool required);

}  // namespace scholnet

#endif  // SCHOLNET_JSONL_HPP_
