#ifndef WBGRID_BALANCE_HPP
#define WBGRID_BALANCE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "wbgrid/bits.hpp"

namespace wbgrid {

// Per-column weight budget alpha = num/den. The grid codec passes
// m*p / (n*q); tests may pass any rational.
struct ColumnBudget {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

// W(k) = floor(k * alpha), the weight budget of a k-column subarray.
std::uint64_t threshold(std::uint64_t k, const ColumnBudget& budget);

// (ceil(k/2), floor(k/2)) for k >= 2.
std::pair<std::uint64_t, std::uint64_t> split_sizes(std::uint64_t k);

// Column counts of the internal recursion nodes in pre-order; n - 1 entries.
std::vector<std::uint64_t> split_preorder_sizes(std::uint64_t n);

// What one balancing node did. tau: 0 nothing, 1 flip at position t of the
// left part, 2 flip at position t of the right part. gamma: 1-based index of
// the column excluded from the left half, 0 unless k is odd and tau != 0.
struct SplitRecord {
  std::uint64_t k = 0;
  unsigned tau = 0;
  std::uint64_t t = 0;
  std::uint64_t gamma = 0;

  bool operator==(const SplitRecord&) const = default;
};

// Rebalances one node: afterwards the first ceil(k/2) columns weigh at most
// W(ceil(k/2)) and the rest at most W(floor(k/2)). Mutates g; never raises a
// row weight.
SplitRecord balance_node(BitGrid& g, const std::vector<std::uint64_t>& cols,
                         const ColumnBudget& budget);

// Full divide-and-conquer pass: afterwards every column of g weighs at most
// W(1). Records returned in pre-order.
std::vector<SplitRecord> dnc_encode(BitGrid& g, const ColumnBudget& budget);

// Exact inverse of dnc_encode given its records (children undone first).
void dnc_undo(BitGrid& g, const std::vector<SplitRecord>& records);

}  // namespace wbgrid

#endif
