#ifndef WBGRID_ENUMCODE_HPP
#define WBGRID_ENUMCODE_HPP

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "wbgrid/bits.hpp"
#include "wbgrid/errors.hpp"

namespace wbgrid {

// Number of length-n sequences of weight <= w: sum of C(n, i) for i <= w.
mpz_class count_at_most(std::uint64_t n, std::uint64_t w);

// floor(log2(count_at_most(n, w))): payload bits carried by one such sequence.
std::uint64_t payload_bits(std::uint64_t n, std::uint64_t w);

// 1D bounded-weight row codec. The grid encoder only needs this contract,
// so other 1D schemes can slot in.
class RowCode {
public:
  virtual ~RowCode() = default;
  virtual std::uint64_t row_length() const = 0;
  virtual std::uint64_t payload_length() const = 0;
  virtual std::uint64_t weight_cap() const = 0;
  virtual BitSeq encode_row(const BitSeq& payload) const = 0;
  virtual BitSeq decode_row(const BitSeq& row) const = 0;
};

// Enumerative code: payload index <-> lexicographic rank among all length-n
// sequences of weight <= w_max.
class OneDCode final : public RowCode {
public:
  OneDCode(std::uint64_t n, std::uint64_t w_max);

  std::uint64_t n() const { return n_; }
  std::uint64_t w_max() const { return w_max_; }
  std::uint64_t k_row() const { return k_row_; }

  std::uint64_t row_length() const override { return n_; }
  std::uint64_t payload_length() const override { return k_row_; }
  std::uint64_t weight_cap() const override { return w_max_; }

  // N(l, v): length-l sequences of weight <= v, for l <= n, v <= w_max.
  const mpz_class& count(std::uint64_t l, std::uint64_t v) const;

  // index-th valid sequence in lexicographic order, 0 <= index < N(n, w_max).
  BitSeq unrank(const mpz_class& index) const;
  mpz_class rank(const BitSeq& x) const;

  BitSeq encode_row(const BitSeq& payload) const override;
  BitSeq decode_row(const BitSeq& row) const override;

private:
  std::uint64_t n_;
  std::uint64_t w_max_;
  std::uint64_t k_row_;
  std::vector<mpz_class> counts_;  // (n_+1) x (w_max_+1), row-major
};

}  // namespace wbgrid

#endif
