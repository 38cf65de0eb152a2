#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace mml {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Maps a 128-bit counter and a 64-bit key to 128 bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream. The key is the seed; the upper half of the
/// counter carries the stream id (replicate index) and the lower half counts
/// blocks, so (seed, stream_id) fully determines the sequence regardless of
/// which thread consumes it.
///
/// Satisfies UniformRandomBitGenerator for 32-bit output.
class RngStream {
 public:
  using result_type = std::uint32_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1) with 53-bit resolution; never 0 or 1.
  double uniform_open();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned used_ = 4;
};

}  // namespace mml
