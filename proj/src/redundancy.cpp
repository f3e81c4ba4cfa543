#include "wbgrid/redundancy.hpp"

#include <string>

#include "wbgrid/errors.hpp"

namespace wbgrid {

namespace {

void append_uint(BitSeq& out, std::uint64_t value, unsigned bits) {
  if (bits < 64 && value >> bits)
    throw internal_error("field value " + std::to_string(value) + " needs more than " +
                         std::to_string(bits) + " bits");
  for (unsigned b = bits; b-- > 0;) out.append((value >> b) & 1);
}

class BitReader {
public:
  explicit BitReader(const BitSeq& bits) : bits_(&bits) {}

  bool read_bit() {
    if (pos_ >= bits_->length())
      throw corrupt_codeword_error("deserialize", "stream ends inside a record");
    return bits_->get(++pos_);
  }

  std::uint64_t read_uint(unsigned bits) {
    std::uint64_t v = 0;
    for (unsigned b = 0; b < bits; ++b) v = (v << 1) | (read_bit() ? 1 : 0);
    return v;
  }

  std::uint64_t consumed() const { return pos_; }

private:
  const BitSeq* bits_;
  std::uint64_t pos_ = 0;
};

}  // namespace

NodeWidths node_widths(std::uint64_t k, std::uint64_t m) {
  if (k < 2) throw parameter_error("node_widths needs k >= 2");
  if (m < 1) throw parameter_error("node_widths needs m >= 1");
  NodeWidths w;
  w.t_bits = ceil_log2(m * (k / 2));
  w.gamma_bits = k % 2 == 1 ? ceil_log2((k + 1) / 2) : 0;
  return w;
}

std::uint64_t stream_bound(std::uint64_t n) {
  return n * (ceil_log2(n) + 6);
}

std::uint64_t max_stream_bits(std::uint64_t n, std::uint64_t m) {
  std::uint64_t total = 0;
  for (std::uint64_t k : split_preorder_sizes(n)) {
    const NodeWidths w = node_widths(k, m);
    total += 2 + w.t_bits + w.gamma_bits;
  }
  return total;
}

BitSeq serialize_records(const std::vector<SplitRecord>& records, std::uint64_t n,
                         std::uint64_t m) {
  const std::vector<std::uint64_t> sizes = split_preorder_sizes(n);
  if (records.size() != sizes.size())
    throw internal_error("serialize: " + std::to_string(records.size()) +
                         " records for a tree of " + std::to_string(sizes.size()) +
                         " nodes");
  BitSeq out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const SplitRecord& rec = records[i];
    if (rec.k != sizes[i])
      throw internal_error("serialize: record k=" + std::to_string(rec.k) +
                           " where the tree has k=" + std::to_string(sizes[i]));
    if (rec.tau > 2) throw internal_error("serialize: flip marker out of range");
    append_uint(out, rec.tau, 2);
    if (rec.tau == 0) {
      if (rec.t != 0 || rec.gamma != 0)
        throw internal_error("serialize: indices recorded without a flip");
      continue;
    }
    const NodeWidths w = node_widths(rec.k, m);
    if (rec.t == 0 || rec.t > m * (rec.k / 2))
      throw internal_error("serialize: swapping index out of range");
    append_uint(out, rec.t - 1, w.t_bits);
    if (rec.k % 2 == 1) {
      if (rec.gamma == 0 || rec.gamma > (rec.k + 1) / 2)
        throw internal_error("serialize: excluding index out of range");
      append_uint(out, rec.gamma - 1, w.gamma_bits);
    } else if (rec.gamma != 0) {
      throw internal_error("serialize: excluding index at an even node");
    }
  }
  if (out.length() > stream_bound(n))
    throw parameter_error("redundancy stream of " + std::to_string(out.length()) +
                          " bits exceeds the " + std::to_string(stream_bound(n)) +
                          "-bit bound");
  return out;
}

std::vector<SplitRecord> deserialize_records(const BitSeq& bits, std::uint64_t n,
                                             std::uint64_t m) {
  BitReader reader(bits);
  std::vector<SplitRecord> records;
  const std::vector<std::uint64_t> sizes = split_preorder_sizes(n);
  records.reserve(sizes.size());
  for (std::uint64_t k : sizes) {
    const unsigned hi = reader.read_bit() ? 1 : 0;
    const unsigned lo = reader.read_bit() ? 1 : 0;
    const unsigned tau = hi * 2 + lo;
    if (tau == 3) throw corrupt_codeword_error("deserialize", "flip marker 11");
    SplitRecord rec{k, tau, 0, 0};
    if (tau != 0) {
      const NodeWidths w = node_widths(k, m);
      rec.t = reader.read_uint(w.t_bits) + 1;
      if (rec.t > m * (k / 2))
        throw corrupt_codeword_error("deserialize", "swapping index " +
                                                        std::to_string(rec.t) +
                                                        " exceeds " +
                                                        std::to_string(m * (k / 2)));
      if (k % 2 == 1) {
        rec.gamma = reader.read_uint(w.gamma_bits) + 1;
        if (rec.gamma > (k + 1) / 2)
          throw corrupt_codeword_error("deserialize", "excluding index " +
                                                          std::to_string(rec.gamma) +
                                                          " exceeds " +
                                                          std::to_string((k + 1) / 2));
      }
    }
    records.push_back(rec);
  }
  for (std::uint64_t t = reader.consumed() + 1; t <= bits.length(); ++t)
    if (bits.get(t))
      throw corrupt_codeword_error("deserialize", "nonzero padding after the records");
  return records;
}

BitGrid pack_stream(const BitSeq& stream, const SlotLayout& layout) {
  if (stream.length() > layout.capacity())
    throw parameter_error("stream of " + std::to_string(stream.length()) +
                          " bits exceeds slot capacity " +
                          std::to_string(layout.capacity()));
  BitGrid c(layout.rows(), layout.n);
  std::uint64_t pos = 1;
  for (std::uint64_t col = 1; col <= layout.usable_cols(); ++col)
    for (std::uint64_t b = 0; b < layout.r_blocks; ++b, ++pos)
      if (pos <= stream.length() && stream.get(pos))
        c.set(layout.slot_row(col, b), col, true);
  return c;
}

BitSeq unpack_stream(const BitGrid& c, const SlotLayout& layout) {
  if (c.n_rows() != layout.rows() || c.n_cols() != layout.n)
    throw parameter_error("grid " + std::to_string(c.n_rows()) + "x" +
                          std::to_string(c.n_cols()) + " does not match the " +
                          std::to_string(layout.rows()) + "x" + std::to_string(layout.n) +
                          " layout");
  BitSeq out(layout.capacity());
  std::uint64_t pos = 1;
  for (std::uint64_t col = 1; col <= layout.usable_cols(); ++col)
    for (std::uint64_t b = 0; b < layout.r_blocks; ++b, ++pos)
      out.set(pos, c.get(layout.slot_row(col, b), col));
  for (std::uint64_t i = 1; i <= c.n_rows(); ++i)
    for (std::uint64_t j = 1; j <= c.n_cols(); ++j)
      if (c.get(i, j) && !layout.is_slot(i, j))
        throw corrupt_codeword_error("unpack", "stray 1 at (" + std::to_string(i) + "," +
                                                   std::to_string(j) +
                                                   ") outside the slot layout");
  return out;
}

}  // namespace wbgrid
