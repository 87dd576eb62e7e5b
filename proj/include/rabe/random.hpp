#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace rabe {

// Domain-separation labels. These strings are part of the external
// interface: changing one changes every seeded artifact.
namespace labels {
inline constexpr std::string_view kRng = "RABE-v1/rng";
inline constexpr std::string_view kRngBlock = "RABE-v1/rng-block";
inline constexpr std::string_view kTransparentModulus = "RABE-v1/transparent-modulus";
inline constexpr std::string_view kHashToScalar = "RABE-v1/hash-to-scalar";
inline constexpr std::string_view kTrialSeed = "RABE-v1/trial-seed";
}  // namespace labels

// SHAKE256 over (u16 big-endian label length || label || data).
std::vector<std::uint8_t> shake256(std::string_view label, std::span<const std::uint8_t> data,
                                   std::size_t out_len);
std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);

// Eight little-endian bytes; the canonical seed form of an integer seed.
std::vector<std::uint8_t> seed_bytes(std::uint64_t seed);

class Rng {
 public:
  virtual ~Rng() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint64_t next_u64();
  bool next_bit() { return next_u64() & 1; }
  // Uniform in [0, bound); bound > 0.
  std::uint64_t uniform(std::uint64_t bound);
};

// Deterministic stream: block i = SHAKE256(kRngBlock, key || i) where
// key = SHAKE256(kRng, seed).
class SeededRng final : public Rng {
 public:
  explicit SeededRng(std::span<const std::uint8_t> seed);
  explicit SeededRng(std::uint64_t seed) : SeededRng(seed_bytes(seed)) {}

  void fill(std::span<std::uint8_t> out) override;

 private:
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, 136> block_{};
  std::size_t pos_ = block_.size();
};

// Operating-system CSPRNG (OpenSSL RAND_bytes).
class SystemRng final : public Rng {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

}  // namespace rabe
