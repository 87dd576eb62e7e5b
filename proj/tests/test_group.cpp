#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "oracle.hpp"
#include "rabe/error.hpp"
#include "rabe/group.hpp"

using rabe::Backend;
using rabe::BilinearContext;
using rabe::GroupElement;
using rabe::Side;

namespace {

class BothBackends : public ::testing::TestWithParam<Backend> {
 protected:
  BilinearContext ctx = BilinearContext::create(GetParam(), rabe::seed_bytes(11));
};

std::string backend_label(const ::testing::TestParamInfo<Backend>& info) {
  return std::string(rabe::backend_name(info.param));
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_P(BothBackends, PairingBilinearOverHundredTrials) {
  rabe::SeededRng rng(1);
  const auto& g = ctx.generator(Side::kSourceOne);
  const auto& h = ctx.generator(Side::kSourceTwo);
  const auto base = rabe::pair(g, h);
  for (int i = 0; i < 100; ++i) {
    auto a = ctx.random_scalar(rng);
    auto b = ctx.random_scalar(rng);
    ASSERT_EQ(rabe::pair(g.pow(a), h.pow(b)), base.pow(a * b)) << "trial " << i;
  }
}

TEST_P(BothBackends, PairingNonDegenerateAndOrderMatches) {
  const auto base = rabe::pair(ctx.generator(Side::kSourceOne), ctx.generator(Side::kSourceTwo));
  EXPECT_FALSE(base.is_identity());
  // g^(p-1) * g = identity, i.e. the order divides p.
  auto minus_one = ctx.scalar_signed(-1);
  EXPECT_TRUE((base.pow(minus_one) * base).is_identity());
}

TEST_P(BothBackends, PairProductMatchesSequentialPairing) {
  rabe::SeededRng rng(2);
  std::vector<std::pair<GroupElement, GroupElement>> terms;
  GroupElement want = ctx.identity(Side::kTarget);
  for (int i = 0; i < 4; ++i) {
    auto a = ctx.generator(Side::kSourceOne).pow(ctx.random_scalar(rng));
    auto b = ctx.generator(Side::kSourceTwo).pow(ctx.random_scalar(rng));
    want *= rabe::pair(a, b);
    terms.emplace_back(a, b);
  }
  EXPECT_EQ(rabe::pair_product(terms), want);
  EXPECT_THROW(rabe::pair_product({}), rabe::Error);
}

TEST_P(BothBackends, EncodeDecodeRoundTripThousandElementsPerSide) {
  rabe::SeededRng rng(3);
  for (Side side : {Side::kSourceOne, Side::kSourceTwo}) {
    for (int i = 0; i < 1000; ++i) {
      auto e = ctx.generator(side).pow(ctx.random_scalar(rng));
      auto bytes = e.encode();
      ASSERT_EQ(bytes.size(), ctx.encoded_size(side));
      ASSERT_EQ(ctx.decode(bytes), e);
    }
  }
  for (int i = 0; i < 20; ++i) {
    auto e = ctx.generator(Side::kTarget).pow(ctx.random_scalar(rng));
    ASSERT_EQ(ctx.decode(e.encode()), e);
  }
}

TEST_P(BothBackends, DecodeRejectsWrongTags) {
  auto bytes = ctx.generator(Side::kSourceOne).encode();
  auto bad_backend = bytes;
  bad_backend[0] = 0x7f;
  EXPECT_THROW(ctx.decode(bad_backend), rabe::Error);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(ctx.decode(truncated), rabe::Error);
}

TEST_P(BothBackends, GroupLawsAndSideChecks) {
  rabe::SeededRng rng(4);
  auto a = ctx.random_scalar(rng), b = ctx.random_scalar(rng);
  const auto& g = ctx.generator(Side::kSourceOne);
  EXPECT_EQ(g.pow(a) * g.pow(b), g.pow(a + b));
  EXPECT_EQ(g.pow(a) / g.pow(a), ctx.identity(Side::kSourceOne));
  EXPECT_EQ(g.pow(a).inverse(), g.pow(-a));
  EXPECT_THROW(g * ctx.generator(Side::kSourceTwo), rabe::Error);
  EXPECT_THROW(rabe::pair(ctx.generator(Side::kSourceTwo), g), rabe::Error);
}

TEST_P(BothBackends, LagrangeInterpolatesRandomPolynomials) {
  rabe::SeededRng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t degree = 1 + rng.uniform(6);
    std::vector<rabe::Scalar> coeffs;
    for (std::size_t k = 0; k <= degree; ++k) coeffs.push_back(ctx.random_scalar(rng));
    auto eval = [&](const rabe::Scalar& x) {
      rabe::Scalar acc = ctx.scalar(0);
      for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
      return acc;
    };
    std::vector<rabe::Scalar> set;
    for (std::uint64_t i = 1; i <= degree + 1; ++i) set.push_back(ctx.scalar(i));
    auto x = ctx.random_scalar(rng);
    rabe::Scalar interp = ctx.scalar(0);
    for (const auto& i : set) interp += rabe::lagrange_coefficient(i, set, x) * eval(i);
    ASSERT_EQ(interp, eval(x));
  }
}

INSTANTIATE_TEST_SUITE_P(Group, BothBackends, ::testing::Values(Backend::kRealCurve, Backend::kTransparent),
                         backend_label);

TEST(Transparent, ModulusIsPrimeInRangeAndSeedDependent) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 8; ++s) {
    auto ctx = BilinearContext::create(Backend::kTransparent, rabe::seed_bytes(s));
    auto m = ctx.prime_order();
    EXPECT_EQ(m[1] | m[2] | m[3], 0u);
    EXPECT_GE(m[0], std::uint64_t{1} << 31);
    EXPECT_LT(m[0], std::uint64_t{1} << 32);
    EXPECT_TRUE(is_prime(m[0]));
    seen.insert(m[0]);
    EXPECT_EQ(BilinearContext::create(Backend::kTransparent, rabe::seed_bytes(s)), ctx);
  }
  EXPECT_GT(seen.size(), 1u);
}

TEST(Transparent, ScalarArithmeticMatchesWideIntegers) {
  auto ctx = BilinearContext::transparent_with_modulus(4294967291ULL);
  oracle::Zp f(4294967291ULL);
  rabe::SeededRng rng(6);
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t a = rng.uniform(f.p()), b = rng.uniform(f.p());
    auto sa = ctx.scalar(a), sb = ctx.scalar(b);
    ASSERT_EQ(oracle::value(sa + sb), f.add(a, b));
    ASSERT_EQ(oracle::value(sa - sb), f.sub(a, b));
    ASSERT_EQ(oracle::value(sa * sb), f.mul(a, b));
    if (b) ASSERT_EQ(oracle::value(sb.inverse()), f.inv(b));
  }
  EXPECT_THROW(ctx.scalar(0).inverse(), rabe::Error);
}

TEST(Transparent, PairingMultipliesLogarithms) {
  auto ctx = BilinearContext::transparent_with_modulus(4294967291ULL);
  oracle::Zp f(4294967291ULL);
  auto a = ctx.generator(Side::kSourceOne).pow(ctx.scalar(123456));
  auto b = ctx.generator(Side::kSourceTwo).pow(ctx.scalar(789));
  EXPECT_EQ(oracle::log(rabe::pair(a, b)), f.mul(123456, 789));
}

TEST(Contexts, MixingBackendsIsRejected) {
  auto real = BilinearContext::create(Backend::kRealCurve);
  auto fake = BilinearContext::create(Backend::kTransparent);
  EXPECT_THROW(real.generator(Side::kSourceOne) * fake.generator(Side::kSourceOne), rabe::Error);
  EXPECT_THROW(real.scalar(1) + fake.scalar(1), rabe::Error);
}

TEST(Contexts, DescriptorRoundTrip) {
  for (auto b : {Backend::kRealCurve, Backend::kTransparent}) {
    auto ctx = BilinearContext::create(b, rabe::seed_bytes(9));
    EXPECT_EQ(BilinearContext::from_descriptor(ctx.descriptor()), ctx);
  }
}
