#ifndef WBGRID_CODEC_HPP
#define WBGRID_CODEC_HPP

#include <cstdint>
#include <vector>

#include "wbgrid/balance.hpp"
#include "wbgrid/bits.hpp"
#include "wbgrid/enumcode.hpp"
#include "wbgrid/redundancy.hpp"

namespace wbgrid {

// Everything derived from (n, f(n) = p/q). All arithmetic is exact.
struct CodeParams {
  std::uint64_t n = 0;
  std::uint64_t p = 0;
  std::uint64_t q = 1;
  std::uint64_t beta = 0;      // ceil(n*q / p)
  std::uint64_t r_blocks = 0;  // ceil(log2 n) + 6
  std::uint64_t c = 0;         // beta * r_blocks rows of packed redundancy
  std::uint64_t m = 0;         // n - c payload rows
  std::uint64_t w_max = 0;     // floor(p/q), per-row weight cap
  std::uint64_t alpha_num = 0;  // alpha = m*p / (n*q), per-column budget
  std::uint64_t alpha_den = 1;
  std::uint64_t k_row = 0;  // payload bits per row
  std::uint64_t payload_bits_total = 0;

  ColumnBudget budget() const { return {alpha_num, alpha_den}; }
  SlotLayout layout() const { return {n, beta, r_blocks}; }
  std::uint64_t redundancy() const { return n * n - payload_bits_total; }
};

// Throws infeasible_error when c >= n or the worst-case record stream
// cannot fit the slot capacity.
CodeParams derive_params(std::uint64_t n, std::uint64_t p, std::uint64_t q);

struct MembershipViolation {
  enum class Axis { row, col };
  Axis axis = Axis::row;
  std::uint64_t index = 0;
  std::uint64_t weight = 0;
  std::uint64_t bound = 0;  // floor(p/q), for reporting
};

struct MembershipReport {
  bool ok = true;
  std::vector<MembershipViolation> violations;
};

// Exact check that every row and column satisfies weight * q <= p.
MembershipReport verify_membership(const BitGrid& g, std::uint64_t p, std::uint64_t q);

class Codec {
public:
  explicit Codec(CodeParams params);

  const CodeParams& params() const { return params_; }
  const RowCode& row_code() const { return row_code_; }

  // message of exactly payload_bits_total bits -> n x n member of the
  // bounded-weight code.
  BitGrid encode(const BitSeq& message) const;

  // Exact inverse on encoder output; anything that is not an encoder output
  // raises corrupt_codeword_error (never returns a wrong message silently).
  BitSeq decode(const BitGrid& array) const;

private:
  CodeParams params_;
  OneDCode row_code_;
};

}  // namespace wbgrid

#endif
