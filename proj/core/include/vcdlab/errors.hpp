#pragma once

#include <stdexcept>
#include <string>

namespace vcdlab {

/// A search or enumeration exceeded its configured budget. The operation
/// aborts instead of returning a possibly-incomplete answer.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Formula DSL parse failure, carrying the byte offset of the error.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  int offset() const { return offset_; }

 private:
  int offset_;
};

}  // namespace vcdlab
