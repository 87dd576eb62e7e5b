#include <gmp.h>
#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "rabe/bls12_381/pairing.hpp"
#include "rabe/random.hpp"

namespace bls = rabe::bls12_381;

namespace {

std::string to_hex(std::span<const std::uint8_t> b) {
  static const char* d = "0123456789abcdef";
  std::string s;
  for (auto v : b) {
    s += d[v >> 4];
    s += d[v & 15];
  }
  return s;
}

bls::Limbs<4> random_scalar(rabe::Rng& rng) {
  bls::Limbs<4> k{};
  for (auto& l : k) l = rng.next_u64();
  k[3] &= 0x0fffffffffffffffULL;
  return k;
}

std::vector<std::uint64_t> to_limbs(const mpz_t v) {
  std::vector<std::uint64_t> out((mpz_sizeinbase(v, 2) + 63) / 64, 0);
  std::size_t count = 0;
  mpz_export(out.data(), &count, -1, sizeof(std::uint64_t), 0, 0, v);
  out.resize(count);
  return out;
}

void from_limbs(mpz_t out, std::span<const std::uint64_t> limbs) {
  mpz_import(out, limbs.size(), -1, sizeof(std::uint64_t), 0, 0, limbs.data());
}

}  // namespace

TEST(Bls12381, GeneratorCompressionMatchesStandardEncoding) {
  EXPECT_EQ(to_hex(bls::compress(bls::G1::generator())),
            "97f1d3a73197d7942695638c4fa9ac0fc3688c4f9774b905a14e3a3f171bac586c55e83ff97a1aeffb3af00adb22c6bb");
  EXPECT_EQ(to_hex(bls::compress(bls::G2::generator())),
            "93e02b6052719f607dacd3a088274f65596bd0d09920b61ab5da61bbdc7f5049334cf11213945d57e5ac7d055d042b7e"
            "024aa2b2f08f0a91260805272dc51051c6e47ad4fa403b02b4510b647ae3d1770bac0326a805bbefd48056c8c121bdb8");
}

TEST(Bls12381, GeneratorsOnCurveAndInSubgroup) {
  EXPECT_TRUE(bls::G1::generator().on_curve());
  EXPECT_TRUE(bls::G2::generator().on_curve());
  EXPECT_TRUE(bls::G1::generator().in_subgroup());
  EXPECT_TRUE(bls::G2::generator().in_subgroup());
}

TEST(Bls12381, IdentityCompressionRoundTrips) {
  auto c1 = bls::compress(bls::G1::identity());
  EXPECT_EQ(c1[0], 0xc0);
  auto d1 = bls::decompress_g1(c1);
  ASSERT_TRUE(d1);
  EXPECT_TRUE(d1->is_identity());
  auto d2 = bls::decompress_g2(bls::compress(bls::G2::identity()));
  ASSERT_TRUE(d2);
  EXPECT_TRUE(d2->is_identity());
}

TEST(Bls12381, RejectsMalformedCompressedPoints) {
  auto c = bls::compress(bls::G1::generator());
  c[0] &= 0x7f;  // clear the compression flag
  EXPECT_FALSE(bls::decompress_g1(c));
  std::array<std::uint8_t, bls::kG1CompressedBytes> all_ones;
  all_ones.fill(0xff);
  EXPECT_FALSE(bls::decompress_g1(all_ones));
}

TEST(Bls12381, PairingIsBilinearAndNonDegenerate) {
  rabe::SeededRng rng(7);
  auto g = bls::G1::generator();
  auto h = bls::G2::generator();
  auto base = bls::pairing(g, h);
  EXPECT_FALSE(base.is_one());
  EXPECT_TRUE(bls::in_target_subgroup(base));
  for (int i = 0; i < 3; ++i) {
    auto a = random_scalar(rng);
    auto b = random_scalar(rng);
    auto lhs = bls::pairing(g.mul(a), h.mul(b));
    EXPECT_EQ(lhs, bls::pairing(g.mul(b), h.mul(a)));
    EXPECT_EQ(lhs, bls::pairing(g, h).pow(a).pow(b));
  }
}

TEST(Bls12381, MultiPairingMatchesProductOfPairings) {
  rabe::SeededRng rng(8);
  std::vector<std::pair<bls::G1, bls::G2>> terms;
  bls::Fp12 product = bls::Fp12::one();
  for (int i = 0; i < 3; ++i) {
    auto p = bls::G1::generator().mul(random_scalar(rng));
    auto q = bls::G2::generator().mul(random_scalar(rng));
    terms.emplace_back(p, q);
    product *= bls::pairing(p, q);
  }
  EXPECT_EQ(bls::multi_pairing(terms), product);
}

// The hard part is evaluated by an addition chain in the curve parameter;
// compare against plain exponentiation by 3 (p^12 - 1) / r computed with GMP.
TEST(Bls12381, FinalExponentiationMatchesDirectPower) {
  mpz_t p, r, e;
  mpz_inits(p, r, e, nullptr);
  from_limbs(p, bls::kFieldModulus);
  from_limbs(r, bls::kCurveOrder);
  mpz_pow_ui(e, p, 12);
  mpz_sub_ui(e, e, 1);
  ASSERT_TRUE(mpz_divisible_p(e, r));
  mpz_divexact(e, e, r);
  mpz_mul_ui(e, e, 3);
  auto exponent = to_limbs(e);
  mpz_clears(p, r, e, nullptr);

  auto f = bls::miller_loop(bls::G1::generator(), bls::G2::generator());
  EXPECT_EQ(bls::final_exponentiation(f), f.pow(exponent));
}

TEST(Bls12381, TargetOrderIsCurveOrder) {
  auto gt = bls::pairing(bls::G1::generator(), bls::G2::generator());
  EXPECT_TRUE(gt.pow(bls::kCurveOrder).is_one());
}
