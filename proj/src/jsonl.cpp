#include "scholnet/jsonl.hpp"

#include <zlib.h>

#include <fstream>
#include <sstream>

#include "scholnet/errors.hpp"

namespace scholnet {

namespace {

bool has_gz_extension(const std::filesystem::path& path) {
  return path.extension() == ".gz";
}

std::string read_plain(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

std::string read_gzipped(const std::filesystem::path& path) {
  gzFile file = gzopen(path.string().c_str(), "rb");
  if (file == nullptr) throw Error("cannot open " + path.string());
  std::string content;
  char chunk[1 << 16];
  int got;
  while ((got = gzread(file, chunk, sizeof(chunk))) > 0) {
    content.append(chunk, static_cast<std::size_t>(got));
  }
  bool failed = got < 0;
  gzclose(file);
  if (failed) throw Error("gzip read failed for " + path.string());
  return content;
}

}  // namespace

std::vector<InputLine> read_lines(const std::filesystem::path& path) {
  std::string content =
      has_gz_extension(path) ? read_gzipped(path) : read_plain(path);
  std::vector<InputLine> lines;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t next = content.find('\n', pos);
    std::size_t end = next == std::string::npos ? content.size() : next;
    ++line_number;
    std::size_t len = end - pos;
    if (len > 0 && content[pos + len - 1] == '\r') --len;
    if (len > 0) {
      lines.push_back(InputLine{content.substr(pos, len), line_number});
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return lines;
}

std::filesystem::path resolve_input_file(const std::filesystem::path& dir,
                                         const std::string& stem,
                                         bool required) {
  std::filesystem::path plain = dir / stem;
  if (std::filesystem::is_regular_file(plain)) return plain;
  std::filesystem::path gz = dir / (stem + ".gz");
  if (std::filesystem::is_regular_file(gz)) return gz;
  if (required) {
    throw Error("missing input file " + plain.string() + " (or .gz)");
  }
  return {};
}

}  // namespace scholnet
