#include "wbgrid/enumcode.hpp"

#include <string>

namespace wbgrid {

namespace {

void require_weight_cap(std::uint64_t n, std::uint64_t w) {
  if (w > n)
    throw parameter_error("weight cap " + std::to_string(w) + " exceeds length " +
                          std::to_string(n));
}

std::uint64_t bit_length_minus_one(const mpz_class& v) {
  // mpz_sizeinbase(v, 2) is the exact bit length for v >= 1.
  return mpz_sizeinbase(v.get_mpz_t(), 2) - 1;
}

}  // namespace

mpz_class count_at_most(std::uint64_t n, std::uint64_t w) {
  require_weight_cap(n, w);
  mpz_class total = 0;
  mpz_class term;
  for (std::uint64_t i = 0; i <= w; ++i) {
    mpz_bin_uiui(term.get_mpz_t(), n, i);
    total += term;
  }
  return total;
}

std::uint64_t payload_bits(std::uint64_t n, std::uint64_t w) {
  return bit_length_minus_one(count_at_most(n, w));
}

OneDCode::OneDCode(std::uint64_t n, std::uint64_t w_max) : n_(n), w_max_(w_max) {
  require_weight_cap(n, w_max);
  counts_.assign((n_ + 1) * (w_max_ + 1), mpz_class(0));
  auto at = [this](std::uint64_t l, std::uint64_t v) -> mpz_class& {
    return counts_[l * (w_max_ + 1) + v];
  };
  for (std::uint64_t v = 0; v <= w_max_; ++v) at(0, v) = 1;
  for (std::uint64_t l = 1; l <= n_; ++l) {
    at(l, 0) = 1;
    for (std::uint64_t v = 1; v <= w_max_; ++v)
      at(l, v) = at(l - 1, v) + at(l - 1, v - 1);
  }
  k_row_ = bit_length_minus_one(at(n_, w_max_));
}

const mpz_class& OneDCode::count(std::uint64_t l, std::uint64_t v) const {
  if (l > n_ || v > w_max_)
    throw parameter_error("count table index (" + std::to_string(l) + "," +
                          std::to_string(v) + ") outside " + std::to_string(n_) + "x" +
                          std::to_string(w_max_));
  return counts_[l * (w_max_ + 1) + v];
}

BitSeq OneDCode::unrank(const mpz_class& index) const {
  if (index < 0 || index >= count(n_, w_max_))
    throw parameter_error("unrank index outside [0, " + count(n_, w_max_).get_str() + ")");
  BitSeq out(n_);
  mpz_class rest = index;
  std::uint64_t v = w_max_;
  for (std::uint64_t pos = 1; pos <= n_; ++pos) {
    const std::uint64_t l = n_ - pos;  // positions after this one
    const mpz_class& zeros_first = count(l, v);
    if (rest < zeros_first) continue;  // bit stays 0
    rest -= zeros_first;
    out.set(pos, true);
    --v;  // v > 0 here: rest < N(l+1, 0) = 1 would have taken the 0 branch
  }
  return out;
}

mpz_class OneDCode::rank(const BitSeq& x) const {
  if (x.length() != n_)
    throw parameter_error("rank: sequence length " + std::to_string(x.length()) +
                          " differs from " + std::to_string(n_));
  if (x.weight() > w_max_)
    throw corrupt_codeword_error("row-decode", "row weight " + std::to_string(x.weight()) +
                                                   " exceeds cap " + std::to_string(w_max_));
  mpz_class r = 0;
  std::uint64_t v = w_max_;
  for (std::uint64_t pos = 1; pos <= n_; ++pos) {
    if (!x.get(pos)) continue;
    r += count(n_ - pos, v);
    --v;
  }
  return r;
}

BitSeq OneDCode::encode_row(const BitSeq& payload) const {
  if (payload.length() != k_row_)
    throw parameter_error("row payload must be exactly " + std::to_string(k_row_) +
                          " bits, got " + std::to_string(payload.length()));
  mpz_class index = 0;
  for (std::uint64_t t = 1; t <= k_row_; ++t) {
    index <<= 1;
    if (payload.get(t)) index |= 1;
  }
  return unrank(index);
}

BitSeq OneDCode::decode_row(const BitSeq& row) const {
  const mpz_class r = rank(row);
  if (mpz_sizeinbase(r.get_mpz_t(), 2) > k_row_ && r != 0)
    throw corrupt_codeword_error("row-decode",
                                 "row rank needs more than " + std::to_string(k_row_) +
                                     " payload bits");
  BitSeq out(k_row_);
  for (std::uint64_t t = 1; t <= k_row_; ++t)
    if (mpz_tstbit(r.get_mpz_t(), static_cast<mp_bitcnt_t>(k_row_ - t)))
      out.set(t, true);
  return out;
}

}  // namespace wbgrid
