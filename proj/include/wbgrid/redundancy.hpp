#ifndef WBGRID_REDUNDANCY_HPP
#define WBGRID_REDUNDANCY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "wbgrid/balance.hpp"
#include "wbgrid/bits.hpp"

namespace wbgrid {

// Field widths of one serialized node record: t is stored as t-1 in w_t
// bits, gamma as gamma-1 in w_gamma bits (odd k only), both MSB-first.
struct NodeWidths {
  unsigned t_bits = 0;
  unsigned gamma_bits = 0;
};

NodeWidths node_widths(std::uint64_t k, std::uint64_t m);

// n * (ceil(log2 n) + 6): the stream-length bound the scheme is sized for.
std::uint64_t stream_bound(std::uint64_t n);

// Length of the serialized stream when every node spends its full record.
std::uint64_t max_stream_bits(std::uint64_t n, std::uint64_t m);

// Pre-order node records -> bitstring. Two bits of tau per node (00/01/10),
// then t-1 and (odd k) gamma-1 when tau != 0.
BitSeq serialize_records(const std::vector<SplitRecord>& records, std::uint64_t n,
                         std::uint64_t m);

// Exact inverse; rejects tau=11, out-of-range fields, and nonzero padding.
std::vector<SplitRecord> deserialize_records(const BitSeq& bits, std::uint64_t n,
                                             std::uint64_t m);

// Slot layout of the bottom c x n block: data runs column-major through the
// usable columns; the b-th data bit of usable column i (b = 0..r_blocks-1)
// sits at row b*beta + ((i-1) mod beta) + 1, so consecutive data bits in any
// row or column are at least beta apart.
struct SlotLayout {
  std::uint64_t n = 0;
  std::uint64_t beta = 1;
  std::uint64_t r_blocks = 0;

  std::uint64_t rows() const { return beta * r_blocks; }
  std::uint64_t usable_cols() const { return beta * (n / beta); }
  std::uint64_t capacity() const { return usable_cols() * r_blocks; }
  std::uint64_t slot_row(std::uint64_t col, std::uint64_t b) const {
    return b * beta + (col - 1) % beta + 1;
  }
  bool is_slot(std::uint64_t row, std::uint64_t col) const {
    return col <= usable_cols() && (row - 1) % beta == (col - 1) % beta;
  }
};

// Stream -> c x n grid with zeros everywhere but the slots; unused slots
// (beyond |stream|) stay 0.
BitGrid pack_stream(const BitSeq& stream, const SlotLayout& layout);

// Slots back to a capacity-length stream; any 1 outside a slot is corruption.
BitSeq unpack_stream(const BitGrid& c, const SlotLayout& layout);

}  // namespace wbgrid

#endif
