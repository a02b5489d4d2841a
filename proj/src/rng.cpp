#include "rfk/rng.hpp"

#include <cmath>
#include <numbers>

namespace rfk {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline double to_open_unit(std::uint64_t x) {
  // 53 high bits, shifted by half an ulp so 0 and 1 are never produced.
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::array<std::uint32_t, 4> CounterRng::block(std::uint64_t index,
                                               std::uint32_t slot) const noexcept {
  // The slot shares a word with the high bits of the index; indices stay below 2^40.
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(index),
      static_cast<std::uint32_t>((index >> 32) & 0xFFu) | (slot << 8),
      static_cast<std::uint32_t>(stream_),
      static_cast<std::uint32_t>(stream_ >> 32),
  };
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                            static_cast<std::uint32_t>(seed_ >> 32)};
  return philox4x32(ctr, key);
}

std::uint64_t CounterRng::bits(std::uint64_t index, std::uint32_t slot) const noexcept {
  const auto r = block(index, slot);
  return (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
}

double CounterRng::uniform(std::uint64_t index, std::uint32_t slot) const noexcept {
  return to_open_unit(bits(index, slot));
}

double CounterRng::gaussian(std::uint64_t index, std::uint32_t slot) const noexcept {
  const auto r = block(index, slot);
  const double u1 = to_open_unit((static_cast<std::uint64_t>(r[0]) << 32) | r[1]);
  const double u2 = to_open_unit((static_cast<std::uint64_t>(r[2]) << 32) | r[3]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t CounterRng::uniform_int(std::uint64_t index, std::uint32_t slot, std::int64_t lo,
                                     std::int64_t hi) const noexcept {
  const auto span = static_cast<unsigned __int128>(hi - lo) + 1;
  const auto x = static_cast<unsigned __int128>(bits(index, slot));
  // Multiply-shift; bias is below 2^-40 for the small ranges used here.
  return lo + static_cast<std::int64_t>((x * span) >> 64);
}

}  // namespace rfk
