#pragma once

#include <cassert>
#include <cstddef>
#include <utility>

namespace vsparse {

// Unordered pairs {i, j}, i != j, of an m-point set are packed densely in
// row-major upper-triangle order: (0,1), (0,2), ..., (0,m-1), (1,2), ...
constexpr std::size_t pair_count(std::size_t m) { return m < 2 ? 0 : m * (m - 1) / 2; }

constexpr std::size_t pair_index(std::size_t i, std::size_t j, std::size_t m) {
  assert(i != j && i < m && j < m);
  if (i > j) std::swap(i, j);
  return i * (2 * m - i - 1) / 2 + (j - i - 1);
}

// Inverse of pair_index; returns (i, j) with i < j.
constexpr std::pair<std::size_t, std::size_t> pair_at(std::size_t index, std::size_t m) {
  std::size_t i = 0;
  std::size_t row = m - 1;
  while (index >= row) {
    index -= row;
    ++i;
    --row;
  }
  return {i, i + 1 + index};
}

}  // namespace vsparse
