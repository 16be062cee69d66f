#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace orbital {

// Binary configuration over a point set: one byte (0 or 1) per point. For
// independent-set models the 1-points form the set.
using Config = std::vector<std::uint8_t>;

struct ConfigHash {
  std::size_t operator()(const Config& c) const noexcept {
    return std::hash<std::string_view>{}(std::string_view(
        reinterpret_cast<const char*>(c.data()), c.size()));
  }
};

// Bit i of the mask is point i. Requires c.size() <= 64.
std::uint64_t to_mask(const Config& c);
Config from_mask(std::uint64_t mask, std::size_t n);

// Characters in point order, e.g. {1,0} -> "10".
std::string to_bitstring(const Config& c);
Config parse_bitstring(std::string_view text);

std::size_t count_ones(const Config& c);
std::size_t hamming_distance(const Config& a, const Config& b);

}  // namespace orbital
