#include "zfpkit/error.hpp"

namespace zfpkit {
namespace {

std::string describe(const std::string& what, std::optional<std::size_t> block,
                     std::optional<int> plane) {
  std::string out = what;
  if (block) out += " (block " + std::to_string(*block);
  if (plane) out += std::string(block ? ", " : " (") + "plane " + std::to_string(*plane);
  if (block || plane) out += ")";
  return out;
}

}  // namespace

DecodeError::DecodeError(const std::string& what, std::optional<std::size_t> block,
                         std::optional<int> plane)
    : std::runtime_error(describe(what, block, plane)),
      message_(what),
      block_(block),
      plane_(plane) {}

DecodeError DecodeError::at_block(std::size_t block) const {
  return DecodeError(message_, block, plane_);
}

}  // namespace zfpkit
