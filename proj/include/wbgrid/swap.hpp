#ifndef WBGRID_SWAP_HPP
#define WBGRID_SWAP_HPP

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>

#include "wbgrid/bits.hpp"
#include "wbgrid/errors.hpp"

namespace wbgrid {

// Prefix exchange between two equal-length bit views, plus the two
// target-weight searches the balancer is built on. Exchanging ever longer
// prefixes moves each hybrid's weight in unit steps, so every weight between
// the two endpoints is hit, and the first arrival at a target carries a
// flippable 1 from the heavy side.

template <class S>
concept BitView = requires(const S& s, std::uint64_t t) {
  { s.length() } -> std::convertible_to<std::uint64_t>;
  { s.get(t) } -> std::convertible_to<bool>;
};

template <class S>
concept MutableBitView = BitView<S> && requires(S& s, std::uint64_t t) {
  s.set(t, true);
};

// Which argument slot of a search carries the flippable 1 after the caller
// performs the prefix exchange.
enum class FlipSide { none, first, second };

struct SwapOutcome {
  std::uint64_t t = 0;       // prefix length found
  bool flip_needed = false;  // a guaranteed 1 at position t remains to clear
  FlipSide flipped_side = FlipSide::none;
};

namespace detail {

template <BitView S>
std::uint64_t view_weight(const S& s) {
  std::uint64_t w = 0;
  for (std::uint64_t t = 1; t <= s.length(); ++t) w += s.get(t) ? 1 : 0;
  return w;
}

template <BitView A, BitView B>
void require_same_length(const A& a, const B& b, const char* who) {
  if (a.length() != b.length())
    throw parameter_error(std::string(who) + ": views have different lengths");
}

}  // namespace detail

// (z_1..z_t y_{t+1}..y_n, y_1..y_t z_{t+1}..z_n): both prefixes exchanged.
// Involutive in t; total weight conserved.
inline std::pair<BitSeq, BitSeq> swap_prefix(const BitSeq& y, const BitSeq& z,
                                             std::uint64_t t) {
  detail::require_same_length(y, z, "swap_prefix");
  if (t > y.length())
    throw parameter_error("swap_prefix: prefix length " + std::to_string(t) +
                          " exceeds " + std::to_string(y.length()));
  BitSeq a = y, b = z;
  for (std::uint64_t i = 1; i <= t; ++i) {
    a.set(i, z.get(i));
    b.set(i, y.get(i));
  }
  return {a, b};
}

template <MutableBitView A, MutableBitView B>
void exchange_prefix(A& a, B& b, std::uint64_t t) {
  detail::require_same_length(a, b, "exchange_prefix");
  if (t > a.length())
    throw parameter_error("exchange_prefix: prefix length " + std::to_string(t) +
                          " exceeds " + std::to_string(a.length()));
  for (std::uint64_t i = 1; i <= t; ++i) {
    const bool av = a.get(i);
    const bool bv = b.get(i);
    if (av != bv) {
      a.set(i, bv);
      b.set(i, av);
    }
  }
}

// Smallest t >= 1 such that heavy_1..heavy_t light_{t+1}..light_n weighs
// exactly W + 1. Requires weight(heavy) >= W + 1 and weight(light) <= W.
// The hybrid's weight walks from weight(light) up to weight(heavy), so the
// first arrival at W + 1 comes from below and heavy_t = 1. After the caller
// exchanges prefixes of (heavy, light), that hybrid sits in the second slot
// with a 1 at position t, ready to flip down to weight W.
template <BitView A, BitView B>
SwapOutcome find_target_up(const A& heavy, const B& light, std::uint64_t W) {
  detail::require_same_length(heavy, light, "find_target_up");
  const std::uint64_t wh = detail::view_weight(heavy);
  const std::uint64_t wl = detail::view_weight(light);
  if (wh < W + 1) throw internal_error("find_target_up: heavy view not above W");
  if (wl > W) throw internal_error("find_target_up: light view above W");
  std::uint64_t w = wl;
  for (std::uint64_t t = 1; t <= heavy.length(); ++t) {
    w += (heavy.get(t) ? 1 : 0) - (light.get(t) ? 1 : 0);
    if (w == W + 1) {
      if (!heavy.get(t))
        throw internal_error("find_target_up: heavy bit at target position is 0");
      return {t, true, FlipSide::second};
    }
  }
  throw internal_error("find_target_up: no prefix reaches W + 1");
}

// Smallest t >= 1 such that light_1..light_t heavy_{t+1}..heavy_n weighs
// exactly W, under the same preconditions. That hybrid's weight walks from
// weight(heavy) down to weight(light), so the first arrival at W comes from
// above and heavy_t = 1. After the prefix exchange the exact-W hybrid sits in
// the first slot and the complementary hybrid in the second slot still
// carries the flippable 1 at position t.
template <BitView A, BitView B>
SwapOutcome find_target_exact(const A& heavy, const B& light, std::uint64_t W) {
  detail::require_same_length(heavy, light, "find_target_exact");
  const std::uint64_t wh = detail::view_weight(heavy);
  const std::uint64_t wl = detail::view_weight(light);
  if (wh < W + 1) throw internal_error("find_target_exact: heavy view not above W");
  if (wl > W) throw internal_error("find_target_exact: light view above W");
  std::uint64_t w = wh;
  for (std::uint64_t t = 1; t <= heavy.length(); ++t) {
    w += (light.get(t) ? 1 : 0) - (heavy.get(t) ? 1 : 0);
    if (w == W) {
      if (!heavy.get(t))
        throw internal_error("find_target_exact: heavy bit at target position is 0");
      return {t, true, FlipSide::second};
    }
  }
  throw internal_error("find_target_exact: no prefix reaches W");
}

template <MutableBitView S>
void flip_one_at(S& s, std::uint64_t t) {
  if (t == 0 || t > s.length())
    throw index_error("flip_one_at: position " + std::to_string(t) + " outside 1.." +
                      std::to_string(s.length()));
  if (!s.get(t)) throw internal_error("flip_one_at: expected a 1 at the target position");
  s.set(t, false);
}

}  // namespace wbgrid

#endif
