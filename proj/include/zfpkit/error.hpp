#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace zfpkit {

// Bad user-supplied configuration (parameters, dims, flags).
class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value that cannot be represented in the requested format.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed or truncated compressed data.
class DecodeError : public std::runtime_error {
 public:
  explicit DecodeError(const std::string& what,
                       std::optional<std::size_t> block = std::nullopt,
                       std::optional<int> plane = std::nullopt);

  std::optional<std::size_t> block() const { return block_; }
  std::optional<int> plane() const { return plane_; }

  // Copy with the block index attached (plane index is kept).
  DecodeError at_block(std::size_t block) const;

 private:
  std::string message_;
  std::optional<std::size_t> block_;
  std::optional<int> plane_;
};

// Broken internal invariant, e.g. a transform value escaping its guard bit.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace zfpkit
