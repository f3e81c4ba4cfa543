#include "wbgrid/analysis.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <random>

#include <json.hpp>

#include "wbgrid/codec.hpp"
#include "wbgrid/errors.hpp"
#include "wbgrid/swap.hpp"

namespace wbgrid {

namespace {

std::uint64_t low_mask(std::uint64_t t) {
  return t >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << t) - 1;
}

// Hybrid mask: first t positions (low bits) from a, the rest from b.
std::uint64_t hybrid(std::uint64_t a, std::uint64_t b, std::uint64_t t) {
  const std::uint64_t lo = low_mask(t);
  return (a & lo) | (b & ~lo);
}

unsigned wt(std::uint64_t x) { return static_cast<unsigned>(std::popcount(x)); }

BitSeq mask_to_seq(std::uint64_t mask, std::uint64_t n) {
  BitSeq out(n);
  for (std::uint64_t i = 1; i <= n; ++i)
    if (mask >> (i - 1) & 1) out.set(i, true);
  return out;
}

void count_walk(std::uint64_t rows_left, const std::vector<std::uint32_t>& row_masks,
                std::vector<std::uint32_t>& col_sums, std::uint64_t w,
                std::uint64_t n, mpz_class& total) {
  if (rows_left == 0) {
    total += 1;
    return;
  }
  for (std::uint32_t mask : row_masks) {
    bool ok = true;
    for (std::uint64_t j = 0; j < n; ++j) {
      if (mask >> j & 1) {
        if (++col_sums[j] > w) ok = false;
      }
    }
    if (ok) count_walk(rows_left - 1, row_masks, col_sums, w, n, total);
    for (std::uint64_t j = 0; j < n; ++j)
      if (mask >> j & 1) --col_sums[j];
  }
}

// Smallest t >= 1 whose hybrid (prefix from `first`) weighs target; 0 if none.
std::uint64_t naive_first_hit(std::uint64_t first, std::uint64_t second,
                              std::uint64_t n, unsigned target) {
  for (std::uint64_t t = 1; t <= n; ++t)
    if (wt(hybrid(first, second, t)) == target) return t;
  return 0;
}

struct Lemma2Case {
  std::uint64_t y = 0;  // heavy
  std::uint64_t z = 0;  // light
  unsigned W = 0;
};

// Both searches on one (y, z, W), naive scan vs swapkit. Returns failures.
std::uint64_t lemma2_audit(const Lemma2Case& c, std::uint64_t n, const BitSeq& yseq,
                           const BitSeq& zseq) {
  std::uint64_t bad = 0;

  const std::uint64_t t_up = naive_first_hit(c.y, c.z, n, c.W + 1);
  if (t_up == 0 || !(c.y >> (t_up - 1) & 1)) {
    ++bad;
  } else {
    const SwapOutcome got = find_target_up(yseq, zseq, c.W);
    if (got.t != t_up || !got.flip_needed) ++bad;
  }

  const std::uint64_t t_exact = naive_first_hit(c.z, c.y, n, c.W);
  if (t_exact == 0 || !(c.y >> (t_exact - 1) & 1)) {
    ++bad;
  } else {
    const SwapOutcome got = find_target_exact(yseq, zseq, c.W);
    if (got.t != t_exact || !got.flip_needed) ++bad;
  }
  return bad;
}

std::vector<char> linearize(const BitGrid& g, const std::vector<std::uint64_t>& cols) {
  std::vector<char> out;
  out.reserve(g.n_rows() * cols.size());
  for (std::uint64_t j : cols)
    for (std::uint64_t i = 1; i <= g.n_rows(); ++i) out.push_back(g.get(i, j) ? 1 : 0);
  return out;
}

std::uint64_t naive_target_scan(const std::vector<char>& prefix_src,
                                const std::vector<char>& suffix_src,
                                std::uint64_t target) {
  for (std::uint64_t t = 1; t <= prefix_src.size(); ++t) {
    std::uint64_t w = 0;
    for (std::uint64_t i = 0; i < prefix_src.size(); ++i)
      w += i < t ? prefix_src[i] : suffix_src[i];
    if (w == target) return t;
  }
  return 0;
}

}  // namespace

mpz_class count_arrays(std::uint64_t n, std::uint64_t w, bool allow_large) {
  if (n < 1) throw parameter_error("count_arrays needs n >= 1");
  if (w > n) throw parameter_error("weight cap above n is vacuous; pass w <= n");
  if (n > 5 && !allow_large)
    throw parameter_error("count_arrays enumerates 2^(n*n) arrays; n > 5 needs the"
                          " override flag");
  if (n > 16) throw parameter_error("count_arrays is not tractable beyond n = 16");
  std::vector<std::uint32_t> row_masks;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask)
    if (static_cast<std::uint64_t>(std::popcount(mask)) <= w) row_masks.push_back(mask);
  std::vector<std::uint32_t> col_sums(n, 0);
  mpz_class total = 0;
  count_walk(n, row_masks, col_sums, w, n, total);
  return total;
}

mpz_class subperm_count(std::uint64_t n) {
  if (n < 1) throw parameter_error("subperm_count needs n >= 1");
  mpz_class total = 0;
  mpz_class fact, binom;
  for (std::uint64_t k = 0; k <= n; ++k) {
    mpz_fac_ui(fact.get_mpz_t(), k);
    mpz_bin_uiui(binom.get_mpz_t(), n, k);
    total += fact * binom * binom;
  }
  return total;
}

LemmaReport check_lemma1(std::uint64_t n_max) {
  if (n_max > 8) throw parameter_error("exhaustive mode is capped at n_max = 8");
  LemmaReport rep;
  std::vector<unsigned> h;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    h.assign(n + 1, 0);
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
      for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
        for (std::uint64_t t = 0; t <= n; ++t) h[t] = wt(hybrid(z, y, t));
        for (std::uint64_t t1 = 0; t1 < n; ++t1) {
          for (std::uint64_t t2 = t1 + 1; t2 <= n; ++t2) {
            const auto [lo, hi] = std::minmax(h[t1], h[t2]);
            for (unsigned gamma = lo; gamma <= hi; ++gamma) {
              ++rep.cases;
              bool found = false;
              for (std::uint64_t t = t1; t <= t2 && !found; ++t) found = h[t] == gamma;
              if (!found) ++rep.counterexamples;
            }
          }
        }
      }
    }
  }
  return rep;
}

LemmaReport check_lemma1_sampled(std::uint64_t n, std::uint64_t samples,
                                 std::uint64_t seed) {
  if (n < 1 || n > 63) throw parameter_error("sampled mode needs 1 <= n <= 63");
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = low_mask(n);
  std::uniform_int_distribution<std::uint64_t> pick_t(0, n);
  LemmaReport rep;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::uint64_t y = rng() & mask;
    const std::uint64_t z = rng() & mask;
    std::uint64_t t1 = pick_t(rng);
    std::uint64_t t2 = pick_t(rng);
    if (t1 == t2) continue;
    if (t1 > t2) std::swap(t1, t2);
    const unsigned w1 = wt(hybrid(z, y, t1));
    const unsigned w2 = wt(hybrid(z, y, t2));
    for (unsigned gamma = std::min(w1, w2); gamma <= std::max(w1, w2); ++gamma) {
      ++rep.cases;
      bool found = false;
      for (std::uint64_t t = t1; t <= t2 && !found; ++t)
        found = wt(hybrid(z, y, t)) == gamma;
      if (!found) ++rep.counterexamples;
    }
  }
  return rep;
}

LemmaReport check_lemma2(std::uint64_t n_max) {
  if (n_max > 8) throw parameter_error("exhaustive mode is capped at n_max = 8");
  LemmaReport rep;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
      const BitSeq yseq = mask_to_seq(y, n);
      for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
        if (wt(y) <= wt(z)) continue;
        const BitSeq zseq = mask_to_seq(z, n);
        for (unsigned W = wt(z); W < wt(y); ++W) {
          rep.cases += 2;
          rep.counterexamples += lemma2_audit({y, z, W}, n, yseq, zseq);
        }
      }
    }
  }
  return rep;
}

LemmaReport check_lemma2_sampled(std::uint64_t n, std::uint64_t samples,
                                 std::uint64_t seed) {
  if (n < 1 || n > 63) throw parameter_error("sampled mode needs 1 <= n <= 63");
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = low_mask(n);
  LemmaReport rep;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::uint64_t y = rng() & mask;
    std::uint64_t z = rng() & mask;
    if (wt(y) == wt(z)) continue;
    if (wt(y) < wt(z)) std::swap(y, z);
    std::uniform_int_distribution<unsigned> pick_w(wt(z), wt(y) - 1);
    const unsigned W = pick_w(rng);
    rep.cases += 2;
    rep.counterexamples +=
        lemma2_audit({y, z, W}, n, mask_to_seq(y, n), mask_to_seq(z, n));
  }
  return rep;
}

SplitRecord reference_balance(const BitGrid& g, const std::vector<std::uint64_t>& cols,
                              const ColumnBudget& budget) {
  const std::uint64_t k = cols.size();
  if (k < 2) throw parameter_error("reference_balance needs at least two columns");
  const std::uint64_t kl = (k + 1) / 2;
  std::vector<std::uint64_t> lcols(cols.begin(), cols.begin() + kl);
  const std::vector<std::uint64_t> rcols(cols.begin() + kl, cols.end());

  std::uint64_t wl = 0, wr = 0;
  for (std::uint64_t j : lcols) wl += g.col_weight(j);
  for (std::uint64_t j : rcols) wr += g.col_weight(j);
  const std::uint64_t cap_l = floor_scaled(kl, budget.num, budget.den);
  const std::uint64_t cap_r = floor_scaled(k - kl, budget.num, budget.den);

  if (wl <= cap_l && wr <= cap_r) return {k, 0, 0, 0};

  SplitRecord rec{k, 0, 0, 0};
  if (k % 2 == 0) {
    const std::vector<char> left = linearize(g, lcols);
    const std::vector<char> right = linearize(g, rcols);
    if (wl > cap_l) {
      rec.tau = 2;
      rec.t = naive_target_scan(left, right, cap_r + 1);
    } else {
      rec.tau = 1;
      rec.t = naive_target_scan(right, left, cap_l + 1);
    }
  } else {
    const bool left_heavy = wl > cap_l;
    std::uint64_t best_w = g.col_weight(lcols[0]);
    rec.gamma = 1;
    for (std::uint64_t i = 1; i < kl; ++i) {
      const std::uint64_t w = g.col_weight(lcols[i]);
      if (left_heavy ? w < best_w : w > best_w) {
        best_w = w;
        rec.gamma = i + 1;
      }
    }
    lcols.erase(lcols.begin() + (rec.gamma - 1));
    const std::vector<char> lprime = linearize(g, lcols);
    const std::vector<char> right = linearize(g, rcols);
    if (left_heavy) {
      rec.tau = 2;
      rec.t = naive_target_scan(lprime, right, cap_r + 1);
    } else {
      rec.tau = 1;
      rec.t = naive_target_scan(lprime, right, cap_r);
    }
  }
  if (rec.t == 0) throw internal_error("reference_balance found no valid swap index");
  return rec;
}

std::optional<std::uint64_t> legacy_c_bound(std::uint64_t n, std::uint64_t p,
                                            std::uint64_t q) {
  if (n < 2 || p == 0 || q == 0 || p < q) throw parameter_error("need n >= 2, 1 <= p/q");
  const unsigned __int128 nq = static_cast<unsigned __int128>(n) * q;
  const std::uint64_t beta =
      static_cast<std::uint64_t>((nq + p - 1) / p);
  const std::uint64_t lower = beta * (ceil_log2(n) + 1);
  for (std::uint64_t c = lower; c <= n; ++c)
    if (static_cast<unsigned __int128>(c) * p % nq == 0) return c;
  return std::nullopt;
}

std::uint64_t explicit_c(std::uint64_t n, std::uint64_t p, std::uint64_t q) {
  if (n < 2 || p == 0 || q == 0 || p < q) throw parameter_error("need n >= 2, 1 <= p/q");
  const unsigned __int128 nq = static_cast<unsigned __int128>(n) * q;
  const std::uint64_t beta = static_cast<std::uint64_t>((nq + p - 1) / p);
  return beta * (ceil_log2(n) + 6);
}

RateReport rate_report(const std::vector<std::array<std::uint64_t, 3>>& entries) {
  RateReport report;
  for (const auto& [n, p, q] : entries) {
    RateRow row;
    row.n = n;
    row.p = p;
    row.q = q;
    try {
      const CodeParams P = derive_params(n, p, q);
      row.feasible = true;
      row.c = P.c;
      row.m = P.m;
      row.k_row = P.k_row;
      row.payload = P.payload_bits_total;
      row.redundancy = P.redundancy();
    } catch (const infeasible_error& e) {
      row.note = e.what();
    }
    report.rows.push_back(row);
  }
  return report;
}

bool rate_strictly_increasing(const RateReport& report) {
  const RateRow* prev = nullptr;
  for (const RateRow& row : report.rows) {
    if (!row.feasible) continue;
    if (prev) {
      // payload/n^2 must grow: cross-multiply exactly
      const unsigned __int128 lhs =
          static_cast<unsigned __int128>(prev->payload) * row.n * row.n;
      const unsigned __int128 rhs =
          static_cast<unsigned __int128>(row.payload) * prev->n * prev->n;
      if (lhs >= rhs) return false;
    }
    prev = &row;
  }
  return true;
}

void print_rate_report(const RateReport& report, std::ostream& out) {
  for (const RateRow& row : report.rows) {
    nlohmann::json j{{"n", row.n}, {"p", row.p}, {"q", row.q}, {"feasible", row.feasible}};
    if (row.feasible) {
      const double rate =
          static_cast<double>(row.payload) / (static_cast<double>(row.n) * row.n);
      out << "n=" << row.n << " p=" << row.p << " q=" << row.q << " c=" << row.c
          << " m=" << row.m << " k_row=" << row.k_row << " payload=" << row.payload
          << " redundancy=" << row.redundancy << " rate=" << rate << '\n';
      j["c"] = row.c;
      j["m"] = row.m;
      j["k_row"] = row.k_row;
      j["payload"] = row.payload;
      j["redundancy"] = row.redundancy;
      j["rate"] = rate;
    } else {
      out << "n=" << row.n << " p=" << row.p << " q=" << row.q << " infeasible ("
          << row.note << ")\n";
      j["note"] = row.note;
    }
    out << j.dump() << '\n';
  }
}

}  // namespace wbgrid
