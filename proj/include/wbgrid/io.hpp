#ifndef WBGRID_IO_HPP
#define WBGRID_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "wbgrid/bits.hpp"

namespace wbgrid {

enum class GridFormat { auto_detect, text, binary };

// Text grid: n lines of n characters '0'/'1', each line ending in LF.
std::string grid_to_text(const BitGrid& g);
BitGrid grid_from_text(std::string_view content, std::uint64_t n);

// Binary grid: bits row by row, MSB-first within each byte, ceil(n*n/8)
// bytes, zero padding in the last byte.
std::string grid_to_binary(const BitGrid& g);
BitGrid grid_from_binary(std::string_view content, std::uint64_t n);

// auto_detect: the exact binary size reads as binary, anything else as text.
// The two sizes never coincide.
BitGrid grid_from_bytes(std::string_view content, std::uint64_t n, GridFormat format);

// Payload framing: ceil(bits/8) bytes, message bits MSB-first, zero padding.
std::string payload_to_bytes(const BitSeq& payload);
BitSeq payload_from_bytes(std::string_view bytes, std::uint64_t bit_count);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace wbgrid

#endif
