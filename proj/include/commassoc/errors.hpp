#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace commassoc {

/// Malformed text input (trees, pairs, expressions, group files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A configured size cap (height, order, leaves) would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A table or generator set does not describe a group, or a subgroup
/// argument is unsuitable (e.g. quotient by a non-normal subgroup).
class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace commassoc
