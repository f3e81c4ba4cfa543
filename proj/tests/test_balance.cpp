#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "wbgrid/analysis.hpp"
#include "wbgrid/balance.hpp"
#include "wbgrid/bits.hpp"
#include "wbgrid/errors.hpp"

using namespace wbgrid;

namespace {

BitGrid random_grid(std::mt19937_64& rng, std::uint64_t m, std::uint64_t k,
                    std::uint64_t weight) {
  BitGrid g(m, k);
  std::uint64_t placed = 0;
  while (placed < weight) {
    const std::uint64_t i = rng() % m + 1, j = rng() % k + 1;
    if (!g.get(i, j)) {
      g.set(i, j, true);
      ++placed;
    }
  }
  return g;
}

std::vector<std::uint64_t> iota_cols(std::uint64_t k) {
  std::vector<std::uint64_t> cols(k);
  for (std::uint64_t j = 0; j < k; ++j) cols[j] = j + 1;
  return cols;
}

std::uint64_t cols_weight(const BitGrid& g, std::uint64_t from, std::uint64_t count) {
  std::uint64_t w = 0;
  for (std::uint64_t j = from; j < from + count; ++j) w += g.col_weight(j);
  return w;
}

}  // namespace

TEST_CASE("threshold on known budgets") {
  CHECK(threshold(1, {20, 1}) == 20);
  CHECK(threshold(64, {20, 1}) == 1280);
  CHECK(threshold(64, {1280, 64}) == 1280);
  CHECK(threshold(1, {2, 3}) == 0);
  CHECK(threshold(2, {2, 3}) == 1);
  CHECK(threshold(3, {2, 3}) == 2);
}

TEST_CASE("threshold superadditivity") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const ColumnBudget budget{rng() % 50, rng() % 7 + 1};
    const std::uint64_t a = rng() % 100 + 1, b = rng() % 100 + 1;
    const std::uint64_t wa = threshold(a, budget), wb = threshold(b, budget);
    const std::uint64_t wab = threshold(a + b, budget);
    CHECK(wa + wb <= wab);
    CHECK(wab <= wa + wb + 1);
  }
}

TEST_CASE("split_sizes and the pre-order size list") {
  CHECK(split_sizes(2) == std::pair<std::uint64_t, std::uint64_t>{1, 1});
  CHECK(split_sizes(4) == std::pair<std::uint64_t, std::uint64_t>{2, 2});
  CHECK(split_sizes(5) == std::pair<std::uint64_t, std::uint64_t>{3, 2});
  CHECK_THROWS_AS(split_sizes(1), parameter_error);

  CHECK(split_preorder_sizes(2) == std::vector<std::uint64_t>{2});
  CHECK(split_preorder_sizes(4) == std::vector<std::uint64_t>{4, 2, 2});
  CHECK(split_preorder_sizes(5) == std::vector<std::uint64_t>{5, 3, 2, 2});
  CHECK(split_preorder_sizes(1).empty());
  for (std::uint64_t n = 2; n <= 64; ++n)
    CHECK(split_preorder_sizes(n).size() == n - 1);
}

TEST_CASE("balance_node: even node, left heavy") {
  BitGrid g(2, 2);
  g.set(1, 1, true);
  g.set(2, 1, true);
  const SplitRecord rec = balance_node(g, {1, 2}, {1, 1});
  CHECK(rec == SplitRecord{2, 2, 2, 0});
  CHECK(g.col(1).to_string() == "00");
  CHECK(g.col(2).to_string() == "10");
}

TEST_CASE("balance_node: even node, right heavy") {
  BitGrid g(2, 2);
  g.set(1, 2, true);
  g.set(2, 2, true);
  const SplitRecord rec = balance_node(g, {1, 2}, {1, 1});
  CHECK(rec == SplitRecord{2, 1, 2, 0});
  CHECK(g.col(1).to_string() == "10");
  CHECK(g.col(2).to_string() == "00");
}

TEST_CASE("balance_node: odd node, heavy left excludes a lightest column") {
  BitGrid g(1, 3);
  g.set(1, 1, true);
  g.set(1, 2, true);
  const SplitRecord rec = balance_node(g, {1, 2, 3}, {2, 3});
  CHECK(rec == SplitRecord{3, 2, 1, 1});
  CHECK(g.row(1).to_string() == "100");
}

TEST_CASE("balance_node: odd node, heavy left, two-row variant") {
  BitGrid g(2, 3);
  g.set(1, 1, true);
  g.set(1, 2, true);
  const SplitRecord rec = balance_node(g, {1, 2, 3}, {5, 6});
  CHECK(rec == SplitRecord{3, 2, 1, 1});
  CHECK(g.col(1).to_string() == "10");
  CHECK(g.col(2).to_string() == "00");
  CHECK(g.col(3).to_string() == "00");
}

TEST_CASE("balance_node: odd node, heavy right excludes a heaviest column") {
  BitGrid g(2, 3);
  g.set(1, 1, true);
  g.set(2, 3, true);
  const SplitRecord rec = balance_node(g, {1, 2, 3}, {3, 4});
  CHECK(rec == SplitRecord{3, 1, 2, 1});
  CHECK(g.col(1).to_string() == "10");
  CHECK(g.col(2).to_string() == "00");
  CHECK(g.col(3).to_string() == "00");
}

TEST_CASE("balance_node: already balanced is a no-op") {
  BitGrid g(2, 4);
  g.set(1, 1, true);
  g.set(1, 3, true);
  const BitGrid before = g;
  const SplitRecord rec = balance_node(g, {1, 2, 3, 4}, {1, 2});
  CHECK(rec == SplitRecord{4, 0, 0, 0});
  CHECK(g == before);
}

TEST_CASE("balance_node rejects an over-budget node") {
  BitGrid g(2, 2);
  g.set(1, 1, true);
  g.set(2, 1, true);
  g.set(1, 2, true);
  CHECK_THROWS_AS(balance_node(g, {1, 2}, {1, 2}), internal_error);
}

TEST_CASE("balance_node agrees with reference_balance") {
  std::mt19937_64 rng(41);
  int flips = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const std::uint64_t k = rng() % 7 + 2;
    const std::uint64_t m = rng() % (24 / k) + 1;
    const ColumnBudget budget{rng() % (m * 3) + 1, rng() % 3 + 1};
    const std::uint64_t cap = std::min(threshold(k, budget), m * k);
    BitGrid g = random_grid(rng, m, k, rng() % (cap + 1));
    const BitGrid before = g;

    const SplitRecord expect = reference_balance(g, iota_cols(k), budget);
    CHECK(g == before);  // oracle must not mutate
    const SplitRecord got = balance_node(g, iota_cols(k), budget);
    REQUIRE(got == expect);
    if (got.tau != 0) ++flips;

    const auto [kl, kr] = split_sizes(k);
    CHECK(cols_weight(g, 1, kl) <= threshold(kl, budget));
    CHECK(cols_weight(g, kl + 1, kr) <= threshold(kr, budget));
    for (std::uint64_t i = 1; i <= m; ++i)
      CHECK(g.row_weight(i) <= before.row_weight(i));
    CHECK(before.weight() - g.weight() == (got.tau == 0 ? 0 : 1));
  }
  CHECK(flips > 100);  // the sampler must actually hit the interesting cases
}

TEST_CASE("dnc_encode balances every column and preserves rows") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t n = rng() % 15 + 2;
    const std::uint64_t m = rng() % 6 + 1;
    const ColumnBudget budget{rng() % (m * 2) + 1, rng() % 4 + 1};
    const std::uint64_t cap = std::min(threshold(n, budget), m * n);
    BitGrid g = random_grid(rng, m, n, rng() % (cap + 1));
    const BitGrid before = g;

    const auto records = dnc_encode(g, budget);
    CHECK(records.size() == n - 1);
    const std::uint64_t w1 = threshold(1, budget);
    for (std::uint64_t j = 1; j <= n; ++j) CHECK(g.col_weight(j) <= w1);
    for (std::uint64_t i = 1; i <= m; ++i)
      CHECK(g.row_weight(i) <= before.row_weight(i));

    std::uint64_t flips = 0;
    const auto sizes = split_preorder_sizes(n);
    for (std::size_t idx = 0; idx < records.size(); ++idx) {
      CHECK(records[idx].k == sizes[idx]);
      flips += records[idx].tau != 0 ? 1 : 0;
    }
    CHECK(before.weight() - g.weight() == flips);
    CHECK(flips <= n - 1);

    dnc_undo(g, records);
    CHECK(g == before);
  }
}

TEST_CASE("dnc_encode on an all-zero grid records no flips") {
  BitGrid g(3, 8);
  const auto records = dnc_encode(g, {1, 1});
  CHECK(records.size() == 7);
  for (const auto& rec : records) CHECK(rec == SplitRecord{rec.k, 0, 0, 0});
  CHECK(g.weight() == 0);
}

TEST_CASE("dnc_encode rejects an over-budget grid") {
  BitGrid g(2, 4);
  for (std::uint64_t j = 1; j <= 4; ++j) g.set(1, j, true);
  CHECK_THROWS_AS(dnc_encode(g, {1, 2}), internal_error);
}

TEST_CASE("dnc_undo rejects malformed record lists") {
  std::mt19937_64 rng(47);
  const std::uint64_t n = 9, m = 4;
  const ColumnBudget budget{3, 2};
  BitGrid base = random_grid(rng, m, n, threshold(n, budget));
  const BitGrid before = base;
  const auto records = dnc_encode(base, budget);
  std::size_t flip_idx = records.size();
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].tau != 0) {
      flip_idx = i;
      break;
    }
  REQUIRE(flip_idx < records.size());

  auto fresh = [&] { return base; };

  {
    BitGrid g = fresh();
    auto bad = records;
    bad.pop_back();
    CHECK_THROWS_AS(dnc_undo(g, bad), corrupt_codeword_error);
  }
  {
    BitGrid g = fresh();
    auto bad = records;
    bad.push_back(SplitRecord{2, 0, 0, 0});
    CHECK_THROWS_AS(dnc_undo(g, bad), corrupt_codeword_error);
  }
  {
    BitGrid g = fresh();
    auto bad = records;
    bad[0].k += 1;
    CHECK_THROWS_AS(dnc_undo(g, bad), corrupt_codeword_error);
  }
  {
    BitGrid g = fresh();
    auto bad = records;
    bad[flip_idx].tau = 3;
    CHECK_THROWS_AS(dnc_undo(g, bad), corrupt_codeword_error);
  }
  {
    BitGrid g = fresh();
    auto bad = records;
    bad[flip_idx].t = 0;
    CHECK_THROWS_AS(dnc_undo(g, bad), corrupt_codeword_error);
  }
  {
    BitGrid g = fresh();
    auto bad = records;
    bad[flip_idx].t = m * (bad[flip_idx].k / 2) + 1;
    CHECK_THROWS_AS(dnc_undo(g, bad), corrupt_codeword_error);
  }
  {
    // tau=0 with leftover indices
    BitGrid g = fresh();
    auto bad = records;
    bad[flip_idx].tau = 0;
    CHECK_THROWS_AS(dnc_undo(g, bad), corrupt_codeword_error);
  }
  {
    // off-by-one t either raises corrupt or yields a different grid
    BitGrid g = fresh();
    auto bad = records;
    bad[flip_idx].t = bad[flip_idx].t > 1 ? bad[flip_idx].t - 1 : bad[flip_idx].t + 1;
    bool ok = true;
    try {
      dnc_undo(g, bad);
    } catch (const corrupt_codeword_error&) {
      ok = false;
    }
    if (ok) CHECK(g != before);
  }
  {
    // honest records still round-trip
    BitGrid g = fresh();
    dnc_undo(g, records);
    CHECK(g == before);
  }
}

TEST_CASE("dnc_undo gamma validation") {
  std::mt19937_64 rng(53);
  // find an encode whose records contain an odd-node flip
  for (int attempt = 0; attempt < 200; ++attempt) {
    const std::uint64_t n = 5, m = 3;
    const ColumnBudget budget{2, 3};
    BitGrid base = random_grid(rng, m, n, threshold(n, budget));
    auto records = dnc_encode(base, budget);
    std::size_t odd_idx = records.size();
    for (std::size_t i = 0; i < records.size(); ++i)
      if (records[i].tau != 0 && records[i].k % 2 == 1) {
        odd_idx = i;
        break;
      }
    if (odd_idx == records.size()) continue;

    auto bad = records;
    bad[odd_idx].gamma = 0;
    BitGrid g1 = base;
    CHECK_THROWS_AS(dnc_undo(g1, bad), corrupt_codeword_error);

    bad = records;
    bad[odd_idx].gamma = (bad[odd_idx].k + 1) / 2 + 1;
    BitGrid g2 = base;
    CHECK_THROWS_AS(dnc_undo(g2, bad), corrupt_codeword_error);
    return;
  }
  FAIL("no odd-node flip found across 200 attempts");
}
