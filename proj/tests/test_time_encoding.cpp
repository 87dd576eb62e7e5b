#include <gtest/gtest.h>

#include "oracle.hpp"
#include "rabe/error.hpp"
#include "rabe/time_encoding.hpp"

using rabe::TimeEpoch;

namespace {

std::set<std::size_t> as_set(const rabe::ZeroIndexSet& z) {
  return {z.positions().begin(), z.positions().end()};
}

}  // namespace

TEST(TimeEncoding, WorkedExampleForTwoToTheFive) {
  const std::uint64_t T = 32;
  EXPECT_EQ(rabe::tencode(TimeEpoch(5, T)).to_string(), "00101");
  EXPECT_EQ(rabe::tencode(TimeEpoch(7, T)).to_string(), "00111");
  EXPECT_EQ(rabe::ctencode(TimeEpoch(7, T)).to_string(), "00000");
  EXPECT_EQ(rabe::zero_set(rabe::tencode(TimeEpoch(5, T))).to_string(), "{1, 2, 4}");
  EXPECT_EQ(rabe::zero_set(rabe::ctencode(TimeEpoch(7, T))).to_string(), "{1, 2, 3, 4, 5}");
}

TEST(TimeEncoding, MatchesBitArithmeticForEveryEpoch) {
  for (unsigned tau = 2; tau <= 10; ++tau) {
    const std::uint64_t T = std::uint64_t{1} << tau;
    for (std::uint64_t t = 0; t < T; ++t) {
      auto bt = rabe::tencode(TimeEpoch(t, T));
      auto et = rabe::ctencode(TimeEpoch(t, T));
      ASSERT_EQ(bt.to_string(), oracle::tencode(t, tau));
      ASSERT_EQ(et.to_string(), oracle::ctencode(t, tau));
      ASSERT_EQ(bt.size(), tau);
      ASSERT_EQ(as_set(rabe::zero_set(bt)), oracle::zeros(oracle::tencode(t, tau)));
      ASSERT_EQ(as_set(rabe::zero_set(et)), oracle::zeros(oracle::ctencode(t, tau)));
    }
  }
}

TEST(TimeEncoding, CiphertextEncodingKeepsOnlyTheLeadingOnes) {
  const std::uint64_t T = 16;
  EXPECT_EQ(rabe::ctencode(TimeEpoch(15, T)).to_string(), "1111");
  EXPECT_EQ(rabe::ctencode(TimeEpoch(13, T)).to_string(), "1100");
  EXPECT_EQ(rabe::ctencode(TimeEpoch(8, T)).to_string(), "1000");
  EXPECT_EQ(rabe::ctencode(TimeEpoch(0, T)).to_string(), "0000");
}

TEST(TimeEncoding, RejectsBadParameters) {
  EXPECT_THROW(TimeEpoch(1, 12), rabe::Error);
  EXPECT_THROW(TimeEpoch(1, 2), rabe::Error);
  EXPECT_THROW(TimeEpoch(32, 32), rabe::Error);
  EXPECT_THROW(rabe::BitString::parse("01x1", rabe::BitString::Kind::kPlain), rabe::Error);
  EXPECT_EQ(rabe::BitString::parse("0101", rabe::BitString::Kind::kPlain).to_string(), "0101");
}

TEST(TimeEncoding, OutdatePairsMatchBruteForce) {
  for (unsigned tau = 2; tau <= 7; ++tau) {
    const std::uint64_t T = std::uint64_t{1} << tau;
    for (std::uint64_t ts = 1; ts < T; ++ts) {
      auto et = oracle::zeros(oracle::ctencode(ts, tau));
      std::vector<std::uint64_t> want;
      for (std::uint64_t t = 1; t < ts; ++t) {
        auto bt = oracle::zeros(oracle::tencode(t, tau));
        if (std::includes(et.begin(), et.end(), bt.begin(), bt.end())) want.push_back(t);
      }
      std::vector<std::uint64_t> got;
      for (const auto& e : rabe::find_outdate_pairs(TimeEpoch(ts, T))) got.push_back(e.value());
      ASSERT_EQ(got, want) << "tau " << tau << " t* " << ts;
    }
  }
}

TEST(TimeEncoding, PairFromTheWorkedExampleIsVulnerable) {
  auto ts = rabe::find_outdate_pairs(TimeEpoch(7, 32));
  std::vector<std::uint64_t> got;
  for (const auto& e : ts) got.push_back(e.value());
  EXPECT_EQ(got, (std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6}));
}

TEST(TimeEncoding, CensusCoversWholeRegime) {
  for (unsigned tau = 2; tau <= 10; ++tau) {
    auto c = rabe::outdate_pair_census(tau);
    const std::uint64_t half = std::uint64_t{1} << (tau - 1);
    // pairs 0 < t < t* < 2^(tau-1)
    EXPECT_EQ(c.regime_pairs, (half - 1) * (half - 2) / 2) << tau;
    EXPECT_EQ(c.regime_vulnerable, c.regime_pairs) << tau;
    EXPECT_EQ(c.regime_counterexamples, 0u) << tau;
  }
  auto five = rabe::outdate_pair_census(5);
  EXPECT_EQ(five.regime_vulnerable, 105u);
}

TEST(TimeEncoding, CensusBudget) {
  EXPECT_THROW(rabe::outdate_pair_census(17), rabe::Error);
  EXPECT_THROW(rabe::outdate_pair_census(1), rabe::Error);
}
