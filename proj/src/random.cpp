#include "rabe/random.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <algorithm>
#include <memory>

#include "rabe/error.hpp"

namespace rabe {
namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

}  // namespace

std::vector<std::uint8_t> shake256(std::string_view label, std::span<const std::uint8_t> data,
                                   std::size_t out_len) {
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  std::uint8_t len_be[2] = {static_cast<std::uint8_t>(label.size() >> 8),
                            static_cast<std::uint8_t>(label.size())};
  std::vector<std::uint8_t> out(out_len);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), len_be, 2) != 1 ||
      EVP_DigestUpdate(ctx.get(), label.data(), label.size()) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "SHAKE256 evaluation failed");
  }
  return out;
}

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
  std::array<std::uint8_t, 32> out{};
  SHA256(data.data(), data.size(), out.data());
  return out;
}

std::vector<std::uint8_t> seed_bytes(std::uint64_t seed) {
  std::vector<std::uint8_t> out(8);
  for (std::size_t i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(seed >> (8 * i));
  return out;
}

std::uint64_t Rng::next_u64() {
  std::uint8_t buf[8];
  fill(buf);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "uniform: bound must be positive");
  // rejection sampling against the largest multiple of bound
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

SeededRng::SeededRng(std::span<const std::uint8_t> seed) {
  auto key = shake256(labels::kRng, seed, key_.size());
  std::copy(key.begin(), key.end(), key_.begin());
}

void SeededRng::refill() {
  std::array<std::uint8_t, 40> input{};
  std::copy(key_.begin(), key_.end(), input.begin());
  for (std::size_t i = 0; i < 8; ++i) input[32 + i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
  ++counter_;
  auto block = shake256(labels::kRngBlock, input, block_.size());
  std::copy(block.begin(), block.end(), block_.begin());
  pos_ = 0;
}

void SeededRng::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (pos_ == block_.size()) refill();
    std::size_t take = std::min(out.size() - done, block_.size() - pos_);
    std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(pos_), take, out.begin() + static_cast<std::ptrdiff_t>(done));
    pos_ += take;
    done += take;
  }
}

void SystemRng::fill(std::span<std::uint8_t> out) {
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "system randomness source failed");
  }
}

}  // namespace rabe
