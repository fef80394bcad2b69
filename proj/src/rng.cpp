#include "archvar/rng.hpp"

#include "archvar/errors.hpp"

namespace archvar {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

CounterRng::CounterRng(Seed seed, std::uint32_t substream)
    : counter_{0, substream, static_cast<std::uint32_t>(seed.stream_id),
               static_cast<std::uint32_t>(seed.stream_id >> 32)},
      key_{static_cast<std::uint32_t>(seed.value),
           static_cast<std::uint32_t>(seed.value >> 32)} {}

std::uint32_t CounterRng::next_u32() {
  if (used_ == 4) {
    if (counter_[0] == 0xFFFFFFFFu) {
      throw NumericalError("CounterRng: substream exhausted", 0.0, 0.0);
    }
    block_ = philox4x32(counter_, key_);
    ++counter_[0];
    used_ = 0;
  }
  return block_[used_++];
}

std::uint64_t CounterRng::next_u64() {
  const std::uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double CounterRng::uniform() {
  // (k + 0.5)·2^-52 for k uniform on [0, 2^52); exact, in [2^-53, 1 - 2^-53]
  const std::uint64_t bits = next_u64() >> 12;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

}  // namespace archvar
