#include "wbgrid/balance.hpp"

#include <numeric>
#include <string>

#include "wbgrid/errors.hpp"
#include "wbgrid/swap.hpp"

namespace wbgrid {

namespace {

std::uint64_t cols_weight(const BitGrid& g, const std::vector<std::uint64_t>& cols,
                          std::size_t from, std::size_t count) {
  std::uint64_t w = 0;
  for (std::size_t i = from; i < from + count; ++i) w += g.col_weight(cols[i]);
  return w;
}

// Index within 1..count of the lightest (want_min) or heaviest column,
// ties to the smallest index.
std::uint64_t pick_excluded(const BitGrid& g, const std::vector<std::uint64_t>& cols,
                            std::size_t count, bool want_min) {
  std::uint64_t best = 1;
  std::uint64_t best_w = g.col_weight(cols[0]);
  for (std::size_t i = 1; i < count; ++i) {
    const std::uint64_t w = g.col_weight(cols[i]);
    if (want_min ? w < best_w : w > best_w) {
      best = i + 1;
      best_w = w;
    }
  }
  return best;
}

std::vector<std::uint64_t> drop_index(const std::vector<std::uint64_t>& cols,
                                      std::size_t count, std::uint64_t skip) {
  std::vector<std::uint64_t> out;
  out.reserve(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    if (i + 1 != skip) out.push_back(cols[i]);
  return out;
}

void require_children_within(const BitGrid& g, const std::vector<std::uint64_t>& cols,
                             std::uint64_t kl, const ColumnBudget& budget) {
  const std::uint64_t wl = cols_weight(g, cols, 0, kl);
  const std::uint64_t wr = cols_weight(g, cols, kl, cols.size() - kl);
  if (wl > threshold(kl, budget) || wr > threshold(cols.size() - kl, budget))
    throw internal_error("balance_node left a child over its budget");
}

void balance_walk(BitGrid& g, const std::vector<std::uint64_t>& cols,
                  const ColumnBudget& budget, std::vector<SplitRecord>& records) {
  if (cols.size() < 2) return;
  records.push_back(balance_node(g, cols, budget));
  const auto [kl, kr] = split_sizes(cols.size());
  balance_walk(g, {cols.begin(), cols.begin() + kl}, budget, records);
  balance_walk(g, {cols.begin() + kl, cols.end()}, budget, records);
}

void preorder_sizes_walk(std::uint64_t k, std::vector<std::uint64_t>& out) {
  if (k < 2) return;
  out.push_back(k);
  const auto [kl, kr] = split_sizes(k);
  preorder_sizes_walk(kl, out);
  preorder_sizes_walk(kr, out);
}

}  // namespace

std::uint64_t threshold(std::uint64_t k, const ColumnBudget& budget) {
  return floor_scaled(k, budget.num, budget.den);
}

std::pair<std::uint64_t, std::uint64_t> split_sizes(std::uint64_t k) {
  if (k < 2) throw parameter_error("split_sizes needs k >= 2");
  return {(k + 1) / 2, k / 2};
}

std::vector<std::uint64_t> split_preorder_sizes(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n >= 2) out.reserve(n - 1);
  preorder_sizes_walk(n, out);
  return out;
}

SplitRecord balance_node(BitGrid& g, const std::vector<std::uint64_t>& cols,
                         const ColumnBudget& budget) {
  const std::uint64_t k = cols.size();
  if (k < 2) throw parameter_error("balance_node needs at least two columns");
  const auto [kl, kr] = split_sizes(k);
  const std::uint64_t wl = cols_weight(g, cols, 0, kl);
  const std::uint64_t wr = cols_weight(g, cols, kl, kr);
  const std::uint64_t cap_l = threshold(kl, budget);
  const std::uint64_t cap_r = threshold(kr, budget);
  if (wl + wr > threshold(k, budget))
    throw internal_error("balance_node: node weight " + std::to_string(wl + wr) +
                         " over budget " + std::to_string(threshold(k, budget)));
  if (wl > cap_l && wr > cap_r)
    throw internal_error("balance_node: both halves over budget");

  SplitRecord rec{k, 0, 0, 0};
  if (wl <= cap_l && wr <= cap_r) return rec;

  std::vector<std::uint64_t> lcols(cols.begin(), cols.begin() + kl);
  std::vector<std::uint64_t> rcols(cols.begin() + kl, cols.end());

  if (k % 2 == 0) {
    ColView left(g, lcols);
    ColView right(g, rcols);
    if (wl > cap_l) {
      const SwapOutcome out = find_target_up(left, right, cap_r);
      exchange_prefix(left, right, out.t);
      flip_one_at(right, out.t);
      rec.tau = 2;
      rec.t = out.t;
    } else {
      const SwapOutcome out = find_target_up(right, left, cap_l);
      exchange_prefix(right, left, out.t);
      flip_one_at(left, out.t);
      rec.tau = 1;
      rec.t = out.t;
    }
  } else if (wl > cap_l) {
    // Odd, heavy left: set aside a minimum-weight column so both views have
    // floor(k/2) columns; excluding a minimum keeps the rest above cap_r.
    rec.gamma = pick_excluded(g, lcols, kl, true);
    ColView lprime(g, drop_index(lcols, kl, rec.gamma));
    ColView right(g, rcols);
    if (lprime.weight() < cap_r + 1)
      throw internal_error("balance_node: reduced left half not above cap");
    const SwapOutcome out = find_target_up(lprime, right, cap_r);
    exchange_prefix(lprime, right, out.t);
    flip_one_at(right, out.t);
    rec.tau = 2;
    rec.t = out.t;
  } else {
    // Odd, heavy right: set aside a maximum-weight column, which brings the
    // rest of the left half to at most cap_r; steer the right half to
    // exactly cap_r and clear the guaranteed 1 on the left.
    rec.gamma = pick_excluded(g, lcols, kl, false);
    ColView lprime(g, drop_index(lcols, kl, rec.gamma));
    ColView right(g, rcols);
    if (lprime.weight() > cap_r)
      throw internal_error("balance_node: reduced left half above cap");
    const SwapOutcome out = find_target_exact(right, lprime, cap_r);
    exchange_prefix(right, lprime, out.t);
    flip_one_at(lprime, out.t);
    rec.tau = 1;
    rec.t = out.t;
  }

  require_children_within(g, cols, kl, budget);
  return rec;
}

std::vector<SplitRecord> dnc_encode(BitGrid& g, const ColumnBudget& budget) {
  const std::uint64_t n = g.n_cols();
  if (g.weight() > threshold(n, budget))
    throw internal_error("dnc_encode: grid weight " + std::to_string(g.weight()) +
                         " over budget " + std::to_string(threshold(n, budget)));
  std::vector<SplitRecord> records;
  if (n >= 2) records.reserve(n - 1);
  std::vector<std::uint64_t> cols(n);
  std::iota(cols.begin(), cols.end(), 1);
  balance_walk(g, cols, budget, records);
  return records;
}

namespace {

void undo_walk(BitGrid& g, const std::vector<SplitRecord>& records, std::size_t& pos,
               const std::vector<std::uint64_t>& cols) {
  const std::uint64_t k = cols.size();
  if (k < 2) return;
  if (pos >= records.size())
    throw corrupt_codeword_error("undo", "record list shorter than the split tree");
  const SplitRecord rec = records[pos++];
  if (rec.k != k)
    throw corrupt_codeword_error("undo", "record for " + std::to_string(rec.k) +
                                             " columns at a " + std::to_string(k) +
                                             "-column node");
  const auto [kl, kr] = split_sizes(k);
  std::vector<std::uint64_t> lcols(cols.begin(), cols.begin() + kl);
  std::vector<std::uint64_t> rcols(cols.begin() + kl, cols.end());
  undo_walk(g, records, pos, lcols);
  undo_walk(g, records, pos, rcols);

  if (rec.tau == 0) {
    if (rec.t != 0 || rec.gamma != 0)
      throw corrupt_codeword_error("undo", "indices recorded without a flip");
    return;
  }
  if (rec.tau > 2) throw corrupt_codeword_error("undo", "flip marker out of range");

  if (k % 2 == 0) {
    if (rec.gamma != 0)
      throw corrupt_codeword_error("undo", "excluding index at an even node");
  } else if (rec.gamma == 0 || rec.gamma > kl) {
    throw corrupt_codeword_error("undo", "excluding index out of range");
  }

  ColView left(g, k % 2 == 0 ? lcols : drop_index(lcols, kl, rec.gamma));
  ColView right(g, rcols);
  if (rec.t == 0 || rec.t > right.length())
    throw corrupt_codeword_error("undo", "swapping index out of range");

  ColView& flipped = rec.tau == 1 ? left : right;
  if (flipped.get(rec.t))
    throw corrupt_codeword_error("undo", "flip position already carries a 1");
  flipped.set(rec.t, true);
  exchange_prefix(left, right, rec.t);
}

}  // namespace

void dnc_undo(BitGrid& g, const std::vector<SplitRecord>& records) {
  std::size_t pos = 0;
  std::vector<std::uint64_t> cols(g.n_cols());
  std::iota(cols.begin(), cols.end(), 1);
  undo_walk(g, records, pos, cols);
  if (pos != records.size())
    throw corrupt_codeword_error("undo", "record list longer than the split tree");
}

}  // namespace wbgrid
