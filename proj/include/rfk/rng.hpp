#pragma once

#include <array>
#include <cstdint>

namespace rfk {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random source. Every draw is a pure function of
/// (seed, stream, index, slot), so results never depend on call order or threading.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Uniform on the open interval (0, 1).
  double uniform(std::uint64_t index, std::uint32_t slot) const noexcept;

  /// Standard normal via Box-Muller on one Philox block.
  double gaussian(std::uint64_t index, std::uint32_t slot) const noexcept;

  /// 64 raw bits.
  std::uint64_t bits(std::uint64_t index, std::uint32_t slot) const noexcept;

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::uint64_t index, std::uint32_t slot, std::int64_t lo,
                           std::int64_t hi) const noexcept;

 private:
  std::array<std::uint32_t, 4> block(std::uint64_t index, std::uint32_t slot) const noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
};

/// Slot ranges reserved per consumer so that different draws never share counters.
namespace slots {
inline constexpr std::uint32_t kCurve = 0;         // 2*coordinate + {0: cos, 1: sin}
inline constexpr std::uint32_t kSphere = 0x100;    // + 4*attempt + axis
inline constexpr std::uint32_t kReciprocal = 0x200;
inline constexpr std::uint32_t kPerturb = 0x300;
}  // namespace slots

}  // namespace rfk
