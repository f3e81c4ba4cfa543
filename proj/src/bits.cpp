#include "wbgrid/bits.hpp"

#include <bit>

namespace wbgrid {

unsigned ceil_log2(std::uint64_t n) {
  if (n == 0) throw parameter_error("ceil_log2 needs n >= 1");
  if (n == 1) return 0;
  return static_cast<unsigned>(std::bit_width(n - 1));
}

std::uint64_t floor_scaled(std::uint64_t k, std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw parameter_error("floor_scaled: zero denominator");
  unsigned __int128 prod = static_cast<unsigned __int128>(k) * num;
  unsigned __int128 out = prod / den;
  if (out > ~static_cast<std::uint64_t>(0))
    throw parameter_error("floor_scaled: result does not fit 64 bits");
  return static_cast<std::uint64_t>(out);
}

BitSeq BitSeq::from_string(std::string_view s) {
  BitSeq out;
  out.bits_.reserve(s.size());
  for (char ch : s) {
    if (ch != '0' && ch != '1')
      throw parameter_error(std::string("bit string has invalid character '") + ch + "'");
    out.append(ch == '1');
  }
  return out;
}

std::uint64_t BitSeq::recount() const {
  std::uint64_t w = 0;
  for (std::uint8_t b : bits_) w += b;
  return w;
}

std::string BitSeq::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out[i] = '1';
  return out;
}

BitSeq complement(const BitSeq& s) {
  BitSeq out(s.length());
  for (std::uint64_t t = 1; t <= s.length(); ++t) out.set(t, !s.get(t));
  return out;
}

BitSeq concat(const BitSeq& a, const BitSeq& b) {
  BitSeq out(a.length() + b.length());
  for (std::uint64_t t = 1; t <= a.length(); ++t) out.set(t, a.get(t));
  for (std::uint64_t t = 1; t <= b.length(); ++t) out.set(a.length() + t, b.get(t));
  return out;
}

std::uint64_t BitGrid::row_weight(std::uint64_t i) const {
  check(i, cols_ ? cols_ : 1);
  std::uint64_t w = 0;
  const std::uint8_t* base = cells_.data() + (i - 1) * cols_;
  for (std::uint64_t j = 0; j < cols_; ++j) w += base[j];
  return w;
}

std::uint64_t BitGrid::col_weight(std::uint64_t j) const {
  check(rows_ ? rows_ : 1, j);
  std::uint64_t w = 0;
  for (std::uint64_t i = 0; i < rows_; ++i) w += cells_[i * cols_ + (j - 1)];
  return w;
}

BitSeq BitGrid::row(std::uint64_t i) const {
  BitSeq out(cols_);
  for (std::uint64_t j = 1; j <= cols_; ++j) out.set(j, get(i, j));
  return out;
}

BitSeq BitGrid::col(std::uint64_t j) const {
  BitSeq out(rows_);
  for (std::uint64_t i = 1; i <= rows_; ++i) out.set(i, get(i, j));
  return out;
}

void BitGrid::set_row(std::uint64_t i, const BitSeq& bits) {
  if (bits.length() != cols_)
    throw parameter_error("set_row: sequence length " + std::to_string(bits.length()) +
                          " does not match " + std::to_string(cols_) + " columns");
  for (std::uint64_t j = 1; j <= cols_; ++j) set(i, j, bits.get(j));
}

BitSeq row_major(const BitGrid& g) {
  BitSeq out(g.n_rows() * g.n_cols());
  std::uint64_t t = 1;
  for (std::uint64_t i = 1; i <= g.n_rows(); ++i)
    for (std::uint64_t j = 1; j <= g.n_cols(); ++j, ++t) out.set(t, g.get(i, j));
  return out;
}

BitGrid grid_from_row_major(const BitSeq& s, std::uint64_t n_rows, std::uint64_t n_cols) {
  if (s.length() != n_rows * n_cols)
    throw parameter_error("row-major sequence of " + std::to_string(s.length()) +
                          " bits does not fill " + std::to_string(n_rows) + "x" +
                          std::to_string(n_cols));
  BitGrid g(n_rows, n_cols);
  std::uint64_t t = 1;
  for (std::uint64_t i = 1; i <= n_rows; ++i)
    for (std::uint64_t j = 1; j <= n_cols; ++j, ++t)
      if (s.get(t)) g.set(i, j, true);
  return g;
}

ColView::ColView(BitGrid& g, std::vector<std::uint64_t> cols)
    : grid_(&g), cols_(std::move(cols)) {
  if (cols_.empty()) throw parameter_error("column view needs at least one column");
  std::uint64_t prev = 0;
  for (std::uint64_t j : cols_) {
    if (j <= prev || j > g.n_cols())
      throw parameter_error("column view indices must be strictly increasing and within 1.." +
                            std::to_string(g.n_cols()));
    prev = j;
  }
}

std::pair<std::uint64_t, std::uint64_t> ColView::cell_of(std::uint64_t t) const {
  if (t == 0 || t > length())
    throw index_error("view position " + std::to_string(t) + " outside 1.." +
                      std::to_string(length()));
  const std::uint64_t rows = grid_->n_rows();
  return {(t - 1) % rows + 1, cols_[(t - 1) / rows]};
}

std::uint64_t ColView::weight() const {
  std::uint64_t w = 0;
  for (std::uint64_t j : cols_) w += grid_->col_weight(j);
  return w;
}

}  // namespace wbgrid
