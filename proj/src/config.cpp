#include "orbital/config.hpp"

#include <algorithm>

#include "orbital/error.hpp"

namespace orbital {

std::uint64_t to_mask(const Config& c) {
  if (c.size() > 64) throw InvalidInput("configuration longer than 64 points");
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

Config from_mask(std::uint64_t mask, std::size_t n) {
  Config c(n, 0);
  for (std::size_t i = 0; i < n; ++i) c[i] = (mask >> i) & 1u;
  return c;
}

std::string to_bitstring(const Config& c) {
  std::string s(c.size(), '0');
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i]) s[i] = '1';
  }
  return s;
}

Config parse_bitstring(std::string_view text) {
  Config c;
  c.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw InvalidInput("bitstring may contain only '0' and '1': " +
                         std::string(text));
    }
    c.push_back(ch == '1');
  }
  return c;
}

std::size_t count_ones(const Config& c) {
  return static_cast<std::size_t>(std::count(c.begin(), c.end(), 1));
}

std::size_t hamming_distance(const Config& a, const Config& b) {
  if (a.size() != b.size()) throw InvalidInput("configuration length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

}  // namespace orbital
