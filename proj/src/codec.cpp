#include "wbgrid/codec.hpp"

#include <string>

#include "wbgrid/errors.hpp"

namespace wbgrid {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  if (prod > ~static_cast<std::uint64_t>(0))
    throw parameter_error(std::string(what) + " does not fit 64 bits");
  return static_cast<std::uint64_t>(prod);
}

}  // namespace

CodeParams derive_params(std::uint64_t n, std::uint64_t p, std::uint64_t q) {
  if (n < 2) throw parameter_error("n must be at least 2");
  if (p == 0 || q == 0) throw parameter_error("f(n) must be a positive rational p/q");
  if (p < q) throw parameter_error("f(n) must be at least 1");
  const std::uint64_t nq = checked_mul(n, q, "n*q");
  if (p > nq) throw parameter_error("f(n) must not exceed n");

  CodeParams P;
  P.n = n;
  P.p = p;
  P.q = q;
  P.beta = (nq + p - 1) / p;
  P.r_blocks = ceil_log2(n) + 6;
  P.c = checked_mul(P.beta, P.r_blocks, "beta*r_blocks");
  if (P.c >= n)
    throw infeasible_error("infeasible: c=" + std::to_string(P.c) +
                           " >= n=" + std::to_string(n));
  P.m = n - P.c;
  P.w_max = p / q;
  P.alpha_num = checked_mul(P.m, p, "m*p");
  P.alpha_den = nq;
  P.k_row = payload_bits(n, P.w_max);
  P.payload_bits_total = P.m * P.k_row;

  if (max_stream_bits(n, P.m) > P.layout().capacity())
    throw infeasible_error("infeasible: worst-case record stream of " +
                           std::to_string(max_stream_bits(n, P.m)) +
                           " bits exceeds slot capacity " +
                           std::to_string(P.layout().capacity()));

  // Column budgets of the two blocks must fit under the row cap, and the
  // rate identity must close; both are algebraic, so failure means a bug.
  if (floor_scaled(P.m, p, nq) + floor_scaled(P.c, p, nq) > P.w_max)
    throw internal_error("column budget identity violated");
  if (P.redundancy() != (n - P.c) * (n - P.k_row) + P.c * n)
    throw internal_error("redundancy identity violated");
  return P;
}

MembershipReport verify_membership(const BitGrid& g, std::uint64_t p, std::uint64_t q) {
  if (g.n_rows() != g.n_cols()) throw parameter_error("membership needs a square grid");
  if (p == 0 || q == 0) throw parameter_error("f(n) must be a positive rational p/q");
  MembershipReport rep;
  const std::uint64_t n = g.n_rows();
  const std::uint64_t bound = p / q;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const std::uint64_t w = g.row_weight(i);
    if (checked_mul(w, q, "weight*q") > p) {
      rep.ok = false;
      rep.violations.push_back({MembershipViolation::Axis::row, i, w, bound});
    }
  }
  for (std::uint64_t j = 1; j <= n; ++j) {
    const std::uint64_t w = g.col_weight(j);
    if (checked_mul(w, q, "weight*q") > p) {
      rep.ok = false;
      rep.violations.push_back({MembershipViolation::Axis::col, j, w, bound});
    }
  }
  return rep;
}

Codec::Codec(CodeParams params)
    : params_(params), row_code_(params.n, params.w_max) {
  if (row_code_.k_row() != params_.k_row)
    throw internal_error("derived k_row disagrees with the row code");
}

BitGrid Codec::encode(const BitSeq& message) const {
  const CodeParams& P = params_;
  if (message.length() != P.payload_bits_total)
    throw parameter_error("message must be exactly " +
                          std::to_string(P.payload_bits_total) + " bits, got " +
                          std::to_string(message.length()));

  BitGrid top(P.m, P.n);
  BitSeq chunk(P.k_row);
  for (std::uint64_t i = 1; i <= P.m; ++i) {
    for (std::uint64_t b = 1; b <= P.k_row; ++b)
      chunk.set(b, message.get((i - 1) * P.k_row + b));
    top.set_row(i, row_code_.encode_row(chunk));
  }

  const std::vector<SplitRecord> records = dnc_encode(top, P.budget());
  const BitSeq stream = serialize_records(records, P.n, P.m);
  const BitGrid packed = pack_stream(stream, P.layout());

  BitGrid out(P.n, P.n);
  for (std::uint64_t i = 1; i <= P.m; ++i)
    for (std::uint64_t j = 1; j <= P.n; ++j)
      if (top.get(i, j)) out.set(i, j, true);
  for (std::uint64_t i = 1; i <= P.c; ++i)
    for (std::uint64_t j = 1; j <= P.n; ++j)
      if (packed.get(i, j)) out.set(P.m + i, j, true);
  return out;
}

BitSeq Codec::decode(const BitGrid& array) const {
  const CodeParams& P = params_;
  if (array.n_rows() != P.n || array.n_cols() != P.n)
    throw parameter_error("array must be " + std::to_string(P.n) + "x" +
                          std::to_string(P.n));

  BitGrid packed(P.c, P.n);
  for (std::uint64_t i = 1; i <= P.c; ++i)
    for (std::uint64_t j = 1; j <= P.n; ++j)
      if (array.get(P.m + i, j)) packed.set(i, j, true);
  const BitSeq stream = unpack_stream(packed, P.layout());
  const std::vector<SplitRecord> records = deserialize_records(stream, P.n, P.m);

  BitGrid top(P.m, P.n);
  for (std::uint64_t i = 1; i <= P.m; ++i)
    for (std::uint64_t j = 1; j <= P.n; ++j)
      if (array.get(i, j)) top.set(i, j, true);
  dnc_undo(top, records);

  BitSeq message(P.payload_bits_total);
  for (std::uint64_t i = 1; i <= P.m; ++i) {
    const BitSeq chunk = row_code_.decode_row(top.row(i));
    for (std::uint64_t b = 1; b <= P.k_row; ++b)
      message.set((i - 1) * P.k_row + b, chunk.get(b));
  }

  // A codeword re-encodes to itself bit for bit; anything else means the
  // array was damaged in a way the stage checks above happened to parse.
  if (encode(message) != array)
    throw corrupt_codeword_error("verify", "array is not the codeword of its own payload");
  return message;
}

}  // namespace wbgrid
