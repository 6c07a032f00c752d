#ifndef SCHOLNET_ERRORS_HPP_
#define SCHOLNET_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace scholnet {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input record. Carries the file and 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& detail)
      : Error(path + ":" + std::to_string(line) + ": " + detail),
        path_(path),
        line_(line) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

// Lookup of an unknown author, paper or field id.
class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& what) : Error(what) {}
};

// Invalid configuration or generator parameters.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

// Structural defect in an input graph, e.g. a cycle in the field hierarchy.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error(what) {}
};

}  // namespace scholnet

#endif  // SCHOLNET_ERRORS_HPP_
