#include "rabe/bls12_381/curve.hpp"

#include <algorithm>

namespace rabe::bls12_381 {
namespace {

Fp fp_hex(std::string_view hex) { return Fp::from_canonical(limbs_from_hex<6>(hex)); }

constexpr std::uint8_t kCompressedFlag = 0x80;
constexpr std::uint8_t kInfinityFlag = 0x40;
constexpr std::uint8_t kSignFlag = 0x20;

void write_fp(const Fp& f, std::uint8_t* out) {
  f.to_bytes(std::span<std::uint8_t, kFpBytes>(out, kFpBytes));
}

std::optional<Fp> read_fp(const std::uint8_t* in) {
  return Fp::from_bytes(std::span<const std::uint8_t, kFpBytes>(in, kFpBytes));
}

// Returns false when the flags are malformed. On success `infinity` and
// `sign` carry the flag values and `body` has the flags stripped.
template <std::size_t Size>
bool split_flags(std::span<const std::uint8_t> in, std::array<std::uint8_t, Size>& body, bool& infinity,
                 bool& sign) {
  if (in.size() != Size) return false;
  std::copy(in.begin(), in.end(), body.begin());
  std::uint8_t flags = body[0] & 0xe0;
  body[0] &= 0x1f;
  if (!(flags & kCompressedFlag)) return false;
  infinity = flags & kInfinityFlag;
  sign = flags & kSignFlag;
  if (infinity) {
    if (sign) return false;
    return std::all_of(body.begin(), body.end(), [](std::uint8_t b) { return b == 0; });
  }
  return true;
}

}  // namespace

Fp G1Curve::gen_x() {
  return fp_hex("17f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac586c55e83ff97a1aeffb3af00adb22c6bb");
}
Fp G1Curve::gen_y() {
  return fp_hex("08b3f481e3aaa0f1a09e30ed741d8ae4fcf5e095d5d00af600db18cb2c04b3edd03cc744a2888ae40caa232946c5e7e1");
}
Fp2 G2Curve::gen_x() {
  return {fp_hex("024aa2b2f08f0a91260805272dc51051c6e47ad4fa403b02b4510b647ae3d1770bac0326a805bbefd48056c8c121bdb8"),
          fp_hex("13e02b6052719f607dacd3a088274f65596bd0d09920b61ab5da61bbdc7f5049334cf11213945d57e5ac7d055d042b7e")};
}
Fp2 G2Curve::gen_y() {
  return {fp_hex("0ce5d527727d6e118cc9cdc6da2e351aadfd9baa8cbdd3a76d429a695160d12c923ac9cc3baca289e193548608b82801"),
          fp_hex("0606c4a02ea734cc32acd2b02bc28b99cb3e287e85a763af267492ab572e99ab3f370d275cec1da1aaa9075ff05f79be")};
}

std::array<std::uint8_t, kG1CompressedBytes> compress(const G1& p) {
  std::array<std::uint8_t, kG1CompressedBytes> out{};
  if (p.is_identity()) {
    out[0] = kCompressedFlag | kInfinityFlag;
    return out;
  }
  auto [x, y] = p.to_affine();
  write_fp(x, out.data());
  out[0] |= kCompressedFlag;
  if (y.lexicographically_largest()) out[0] |= kSignFlag;
  return out;
}

std::array<std::uint8_t, kG2CompressedBytes> compress(const G2& p) {
  std::array<std::uint8_t, kG2CompressedBytes> out{};
  if (p.is_identity()) {
    out[0] = kCompressedFlag | kInfinityFlag;
    return out;
  }
  auto [x, y] = p.to_affine();
  write_fp(x.c1, out.data());
  write_fp(x.c0, out.data() + kFpBytes);
  out[0] |= kCompressedFlag;
  if (y.lexicographically_largest()) out[0] |= kSignFlag;
  return out;
}

std::optional<G1> decompress_g1(std::span<const std::uint8_t> in) {
  std::array<std::uint8_t, kG1CompressedBytes> body;
  bool infinity = false;
  bool sign = false;
  if (!split_flags(in, body, infinity, sign)) return std::nullopt;
  if (infinity) return G1::identity();
  auto x = read_fp(body.data());
  if (!x) return std::nullopt;
  auto y = (x->square() * *x + G1Curve::b()).sqrt();
  if (!y) return std::nullopt;
  if (y->lexicographically_largest() != sign) *y = -*y;
  G1 p = G1::from_affine(*x, *y);
  if (!p.in_subgroup()) return std::nullopt;
  return p;
}

std::optional<G2> decompress_g2(std::span<const std::uint8_t> in) {
  std::array<std::uint8_t, kG2CompressedBytes> body;
  bool infinity = false;
  bool sign = false;
  if (!split_flags(in, body, infinity, sign)) return std::nullopt;
  if (infinity) return G2::identity();
  auto x1 = read_fp(body.data());
  auto x0 = read_fp(body.data() + kFpBytes);
  if (!x0 || !x1) return std::nullopt;
  Fp2 x(*x0, *x1);
  auto y = (x.square() * x + G2Curve::b()).sqrt();
  if (!y) return std::nullopt;
  if (y->lexicographically_largest() != sign) *y = -*y;
  G2 p = G2::from_affine(x, *y);
  if (!p.in_subgroup()) return std::nullopt;
  return p;
}

}  // namespace rabe::bls12_381
