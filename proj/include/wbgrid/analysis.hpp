#ifndef WBGRID_ANALYSIS_HPP
#define WBGRID_ANALYSIS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "wbgrid/balance.hpp"
#include "wbgrid/bits.hpp"

namespace wbgrid {

// Exact number of n x n arrays whose every row and column weighs <= w, by
// pruned enumeration. Guarded to n <= 5 unless allow_large.
mpz_class count_arrays(std::uint64_t n, std::uint64_t w, bool allow_large = false);

// Independent oracle for w = 1: sum over k of k! * C(n,k)^2.
mpz_class subperm_count(std::uint64_t n);

struct LemmaReport {
  std::uint64_t cases = 0;
  std::uint64_t counterexamples = 0;
};

// Intermediate-value property of prefix-swap hybrid weights: every value
// between the weights at two prefix lengths is attained in between.
// Exhaustive over all pairs up to length n_max (n_max <= 8).
LemmaReport check_lemma1(std::uint64_t n_max);
LemmaReport check_lemma1_sampled(std::uint64_t n, std::uint64_t samples,
                                 std::uint64_t seed);

// Target searches: existence, minimality, and the heavy-bit-1 guarantee of
// find_target_up/find_target_exact, audited against naive rescanning.
LemmaReport check_lemma2(std::uint64_t n_max);
LemmaReport check_lemma2_sampled(std::uint64_t n, std::uint64_t samples,
                                 std::uint64_t seed);

// Oracle for balance_node: same case rules re-derived with materialized
// sequences and per-candidate recounts; does not mutate g.
SplitRecord reference_balance(const BitGrid& g, const std::vector<std::uint64_t>& cols,
                              const ColumnBudget& budget);

// Smallest c <= n with c >= ceil(n*q/p) * (ceil(log2 n) + 1) and c*p/(n*q)
// an integer; the divisibility-constrained sizing this scheme replaces.
std::optional<std::uint64_t> legacy_c_bound(std::uint64_t n, std::uint64_t p,
                                            std::uint64_t q);

// ceil(n*q/p) * (ceil(log2 n) + 6) without building row-code tables.
std::uint64_t explicit_c(std::uint64_t n, std::uint64_t p, std::uint64_t q);

struct RateRow {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  std::uint64_t q = 1;
  bool feasible = false;
  std::uint64_t c = 0;
  std::uint64_t m = 0;
  std::uint64_t k_row = 0;
  std::uint64_t payload = 0;
  std::uint64_t redundancy = 0;
  std::string note;  // reason when infeasible
};

struct RateReport {
  std::vector<RateRow> rows;
};

RateReport rate_report(const std::vector<std::array<std::uint64_t, 3>>& entries);

// Exact rational comparison payload/n^2 across consecutive feasible rows.
bool rate_strictly_increasing(const RateReport& report);

// One text line plus one JSON line per row.
void print_rate_report(const RateReport& report, std::ostream& out);

}  // namespace wbgrid

#endif
