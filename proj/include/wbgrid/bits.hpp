#ifndef WBGRID_BITS_HPP
#define WBGRID_BITS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wbgrid/errors.hpp"

namespace wbgrid {

// All positions are 1-based: sequences run 1..length, grids 1..rows x 1..cols.

// ceil(log2(n)) for n >= 1; ceil_log2(1) == 0.
unsigned ceil_log2(std::uint64_t n);

// floor(k * num / den), computed exactly (128-bit intermediate, no rounding).
std::uint64_t floor_scaled(std::uint64_t k, std::uint64_t num, std::uint64_t den);

// A bit sequence with an incrementally maintained weight.
class BitSeq {
public:
  BitSeq() = default;
  explicit BitSeq(std::uint64_t length) : bits_(length, 0) {}

  static BitSeq from_string(std::string_view s);

  std::uint64_t length() const { return bits_.size(); }

  bool get(std::uint64_t t) const {
    check(t);
    return bits_[t - 1] != 0;
  }

  void set(std::uint64_t t, bool v) {
    check(t);
    std::uint8_t& cell = bits_[t - 1];
    weight_ += static_cast<std::uint64_t>(v) - cell;
    cell = v ? 1 : 0;
  }

  void append(bool v) {
    bits_.push_back(v ? 1 : 0);
    weight_ += v ? 1 : 0;
  }

  std::uint64_t weight() const { return weight_; }

  // Full rescan, for auditing the cached weight.
  std::uint64_t recount() const;

  std::string to_string() const;

  bool operator==(const BitSeq&) const = default;

private:
  void check(std::uint64_t t) const {
    if (t == 0 || t > bits_.size())
      throw index_error("sequence position " + std::to_string(t) +
                        " outside 1.." + std::to_string(bits_.size()));
  }

  std::vector<std::uint8_t> bits_;
  std::uint64_t weight_ = 0;
};

BitSeq complement(const BitSeq& s);
BitSeq concat(const BitSeq& a, const BitSeq& b);

// Dense binary matrix with cached total weight.
class BitGrid {
public:
  BitGrid() = default;
  BitGrid(std::uint64_t n_rows, std::uint64_t n_cols)
      : rows_(n_rows), cols_(n_cols), cells_(n_rows * n_cols, 0) {}

  std::uint64_t n_rows() const { return rows_; }
  std::uint64_t n_cols() const { return cols_; }

  bool get(std::uint64_t i, std::uint64_t j) const {
    check(i, j);
    return cells_[(i - 1) * cols_ + (j - 1)] != 0;
  }

  void set(std::uint64_t i, std::uint64_t j, bool v) {
    check(i, j);
    std::uint8_t& cell = cells_[(i - 1) * cols_ + (j - 1)];
    weight_ += static_cast<std::uint64_t>(v) - cell;
    cell = v ? 1 : 0;
  }

  std::uint64_t weight() const { return weight_; }
  std::uint64_t row_weight(std::uint64_t i) const;
  std::uint64_t col_weight(std::uint64_t j) const;

  BitSeq row(std::uint64_t i) const;
  BitSeq col(std::uint64_t j) const;
  void set_row(std::uint64_t i, const BitSeq& bits);

  bool operator==(const BitGrid&) const = default;

private:
  void check(std::uint64_t i, std::uint64_t j) const {
    if (i == 0 || i > rows_ || j == 0 || j > cols_)
      throw index_error("grid cell (" + std::to_string(i) + "," + std::to_string(j) +
                        ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  std::uint64_t rows_ = 0;
  std::uint64_t cols_ = 0;
  std::vector<std::uint8_t> cells_;
  std::uint64_t weight_ = 0;
};

// Row-major flattening and its inverse.
BitSeq row_major(const BitGrid& g);
BitGrid grid_from_row_major(const BitSeq& s, std::uint64_t n_rows, std::uint64_t n_cols);

// A selection of grid columns read as one sequence, column by column:
// position t lives in the ceil(t / n_rows)-th selected column, at row
// ((t - 1) mod n_rows) + 1. Writing through the view mutates the grid.
class ColView {
public:
  ColView(BitGrid& g, std::vector<std::uint64_t> cols);

  std::uint64_t length() const { return grid_->n_rows() * cols_.size(); }

  // (row, grid column) holding view position t.
  std::pair<std::uint64_t, std::uint64_t> cell_of(std::uint64_t t) const;

  bool get(std::uint64_t t) const {
    auto [i, j] = cell_of(t);
    return grid_->get(i, j);
  }

  void set(std::uint64_t t, bool v) {
    auto [i, j] = cell_of(t);
    grid_->set(i, j, v);
  }

  std::uint64_t weight() const;

  const std::vector<std::uint64_t>& cols() const { return cols_; }

private:
  BitGrid* grid_;
  std::vector<std::uint64_t> cols_;
};

}  // namespace wbgrid

#endif
