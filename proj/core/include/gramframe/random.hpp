#pragma once

#include <cstdint>
#include <limits>

namespace gramframe {

/// SplitMix64. Satisfies UniformRandomBitGenerator; output is identical on
/// every platform, which keeps seeded reports byte-reproducible.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1), 53 random bits.
  double uniform() noexcept { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Independent stream seed for (master, stream index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  SplitMix64 mix(master ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
  return mix();
}

/// Standard normal variates by Box-Muller. std::normal_distribution is not
/// specified bit-for-bit across standard libraries, hence the hand-rolled form.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) noexcept : gen_(seed) {}

  double operator()() noexcept;

 private:
  SplitMix64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gramframe
