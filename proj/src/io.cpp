#include "wbgrid/io.hpp"

#include <fstream>
#include <sstream>

#include "wbgrid/errors.hpp"

namespace wbgrid {

namespace {

std::uint64_t binary_size(std::uint64_t n) { return (n * n + 7) / 8; }

}  // namespace

std::string grid_to_text(const BitGrid& g) {
  std::string out;
  out.reserve(g.n_rows() * (g.n_cols() + 1));
  for (std::uint64_t i = 1; i <= g.n_rows(); ++i) {
    for (std::uint64_t j = 1; j <= g.n_cols(); ++j)
      out.push_back(g.get(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

BitGrid grid_from_text(std::string_view content, std::uint64_t n) {
  BitGrid g(n, n);
  std::size_t pos = 0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    for (std::uint64_t j = 1; j <= n; ++j, ++pos) {
      if (pos >= content.size())
        throw parameter_error("text grid ends inside row " + std::to_string(i));
      const char ch = content[pos];
      if (ch != '0' && ch != '1')
        throw parameter_error(std::string("text grid has invalid character '") + ch +
                              "' in row " + std::to_string(i));
      if (ch == '1') g.set(i, j, true);
    }
    if (pos < content.size()) {
      if (content[pos] != '\n')
        throw parameter_error("row " + std::to_string(i) + " is longer than " +
                              std::to_string(n) + " characters");
      ++pos;
    } else if (i < n) {
      throw parameter_error("text grid has only " + std::to_string(i) + " of " +
                            std::to_string(n) + " rows");
    }
  }
  if (pos != content.size())
    throw parameter_error("text grid has content after row " + std::to_string(n));
  return g;
}

std::string grid_to_binary(const BitGrid& g) {
  const std::uint64_t n = g.n_rows();
  std::string out(binary_size(n), '\0');
  std::uint64_t t = 0;
  for (std::uint64_t i = 1; i <= n; ++i)
    for (std::uint64_t j = 1; j <= g.n_cols(); ++j, ++t)
      if (g.get(i, j)) out[t / 8] |= static_cast<char>(0x80 >> (t % 8));
  return out;
}

BitGrid grid_from_binary(std::string_view content, std::uint64_t n) {
  if (content.size() != binary_size(n))
    throw parameter_error("binary grid is " + std::to_string(content.size()) +
                          " bytes, expected " + std::to_string(binary_size(n)));
  BitGrid g(n, n);
  std::uint64_t t = 0;
  for (std::uint64_t i = 1; i <= n; ++i)
    for (std::uint64_t j = 1; j <= n; ++j, ++t)
      if (static_cast<unsigned char>(content[t / 8]) & (0x80u >> (t % 8)))
        g.set(i, j, true);
  for (std::uint64_t t2 = n * n; t2 < content.size() * 8; ++t2)
    if (static_cast<unsigned char>(content[t2 / 8]) & (0x80u >> (t2 % 8)))
      throw parameter_error("binary grid has nonzero padding bits");
  return g;
}

BitGrid grid_from_bytes(std::string_view content, std::uint64_t n, GridFormat format) {
  switch (format) {
    case GridFormat::text:
      return grid_from_text(content, n);
    case GridFormat::binary:
      return grid_from_binary(content, n);
    case GridFormat::auto_detect:
      return content.size() == binary_size(n) ? grid_from_binary(content, n)
                                              : grid_from_text(content, n);
  }
  throw parameter_error("unknown grid format");
}

std::string payload_to_bytes(const BitSeq& payload) {
  std::string out((payload.length() + 7) / 8, '\0');
  for (std::uint64_t t = 0; t < payload.length(); ++t)
    if (payload.get(t + 1)) out[t / 8] |= static_cast<char>(0x80 >> (t % 8));
  return out;
}

BitSeq payload_from_bytes(std::string_view bytes, std::uint64_t bit_count) {
  const std::uint64_t expected = (bit_count + 7) / 8;
  if (bytes.size() != expected)
    throw parameter_error("payload file is " + std::to_string(bytes.size()) +
                          " bytes, expected " + std::to_string(expected));
  BitSeq out(bit_count);
  for (std::uint64_t t = 0; t < bit_count; ++t)
    if (static_cast<unsigned char>(bytes[t / 8]) & (0x80u >> (t % 8)))
      out.set(t + 1, true);
  for (std::uint64_t t = bit_count; t < bytes.size() * 8; ++t)
    if (static_cast<unsigned char>(bytes[t / 8]) & (0x80u >> (t % 8)))
      throw parameter_error("payload padding bits must be zero");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parameter_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) throw parameter_error("cannot read " + path);
  return std::move(buf).str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw parameter_error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw parameter_error("cannot write " + path);
}

}  // namespace wbgrid
