#pragma once

#include <array>
#include <cstdint>

namespace archvar {

/// (value, stream_id) pair that fully determines a random stream.
struct Seed {
  std::uint64_t value = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// Philox4x32-10 block function (Salmon et al., Random123).
///
/// Maps a 128-bit counter and a 64-bit key to 128 random bits. Pure integer
/// arithmetic, so output is identical on every platform.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Sequential uniform stream over one (seed, substream) cell.
///
/// The counter is laid out as [draw, substream, stream_id.lo, stream_id.hi]
/// and the key is seed.value, so every (seed, stream_id, substream) triple
/// owns 2^32 blocks of four words that no other triple touches. Samplers use
/// the row index as substream, which makes a row's values independent of how
/// rows are scheduled.
class CounterRng {
 public:
  CounterRng(Seed seed, std::uint32_t substream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1) on a grid of spacing 2^-52.
  double uniform();

 private:
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
};

}  // namespace archvar
