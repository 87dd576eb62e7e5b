#include <gtest/gtest.h>

#include <cmath>

#include "json.hpp"
#include "rabe/attack.hpp"
#include "rabe/error.hpp"
#include "rabe/serialization.hpp"

using rabe::Backend;
using rabe::GameMode;
using rabe::GameParams;

namespace {

GameParams params(GameMode mode = GameMode::kStandard, Backend backend = Backend::kTransparent) {
  GameParams p;
  p.backend = backend;
  p.mode = mode;
  return p;
}

rabe::AdversaryFactory outdate(rabe::OutdateOptions o = {}) {
  return [o] { return std::make_unique<rabe::OutdateAdversary>(o); };
}

std::vector<std::uint8_t> seed(std::uint64_t s) { return rabe::seed_bytes(s); }

// Asks for a satisfying key and never revokes it.
class GreedyAdversary final : public rabe::Adversary {
 public:
  std::string name() const override { return "greedy"; }
  rabe::AttributeSet init(const rabe::SchemeLimits&, rabe::Rng&) override { return {1}; }
  void phase1(rabe::Oracles& o, rabe::Rng&) override {
    o.private_key("x", rabe::parse_policy("1", o.pp().context().scalar_field()));
  }
  rabe::ChallengeRequest challenge(const rabe::PublicParams& pp, rabe::Rng& rng) override {
    rabe::SeededRng local(1);
    (void)rng;
    return {3, rabe::random_message(pp, local), rabe::random_message(pp, local)};
  }
  int guess(const rabe::OriginalCiphertext&, rabe::Oracles&, rabe::Rng&) override { return 0; }
};

}  // namespace

TEST(Attack, OutdateAdversaryWinsEveryTransparentGame) {
  auto trs = rabe::run_trials(outdate(), params(), seed(1), 50, 2);
  for (const auto& t : trs) {
    EXPECT_TRUE(t.win) << t.abort_reason;
    EXPECT_FALSE(t.aborted);
    EXPECT_TRUE(rabe::validate_transcript(t).ok);
    EXPECT_TRUE(t.constraint_disagreements.empty());
  }
  auto r = rabe::advantage_report(trs);
  EXPECT_EQ(r.wins, 50u);
  EXPECT_DOUBLE_EQ(r.advantage, 0.5);
}

TEST(Attack, OutdateAdversaryWinsOnTheRealCurve) {
  auto trs = rabe::run_trials(outdate(), params(GameMode::kStandard, Backend::kRealCurve), seed(2), 2);
  for (const auto& t : trs) EXPECT_TRUE(t.win) << t.abort_reason;
}

TEST(Attack, WorkedExamplePairFoldsExpectedIndices) {
  rabe::OutdateAdversary adv({5, 7});
  rabe::SeededRng c(1), a(2);
  auto tr = rabe::challenger_run(adv, params(), c, a);
  EXPECT_TRUE(tr.win);
  EXPECT_EQ(adv.t(), 5u);
  EXPECT_EQ(adv.t_star(), 7u);
  EXPECT_EQ(adv.folded_indices(), (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_TRUE(adv.bottom_at_t_star());
  EXPECT_TRUE(adv.derived_at_t());
  EXPECT_EQ(tr.narrative.size(), 5u);
}

TEST(Attack, AutomaticPairIsVulnerableAndInTheProofRegime) {
  for (std::uint64_t i = 0; i < 30; ++i) {
    rabe::OutdateAdversary adv;
    rabe::SeededRng c(i), a(i + 1000);
    auto tr = rabe::challenger_run(adv, params(), c, a);
    ASSERT_TRUE(tr.win);
    EXPECT_GE(adv.t_star(), 2u);
    EXPECT_LT(adv.t_star(), 16u);
    EXPECT_TRUE(rabe::is_vulnerable_pair(adv.t(), adv.t_star(), 32));
  }
}

TEST(Attack, NonVulnerablePairIsRefused) {
  EXPECT_FALSE(rabe::is_vulnerable_pair(3, 16, 32));
  EXPECT_TRUE(rabe::is_vulnerable_pair(5, 7, 32));
  rabe::OutdateAdversary adv({3, 16});
  rabe::SeededRng c(1), a(2);
  auto tr = rabe::challenger_run(adv, params(), c, a);
  EXPECT_TRUE(tr.aborted);
  EXPECT_FALSE(tr.win);
  auto s = rabe::suggest_pairs(16, 32);
  ASSERT_FALSE(s.empty());
  for (auto [t, ts] : s) EXPECT_TRUE(rabe::is_vulnerable_pair(t, ts, 32));
}

TEST(Attack, DeriveOutdatedCiphertextChecksEpochs) {
  rabe::SeededRng rng(3);
  auto sys = rabe::setup(rabe::BilinearContext::create(Backend::kTransparent), {}, rng);
  auto ct = rabe::encrypt({1}, 7, rabe::random_message(sys.pp, rng), sys.pp, rng);
  EXPECT_THROW(rabe::derive_outdated_ciphertext(ct, 7, sys.pp, rng), rabe::Error);
  EXPECT_THROW(rabe::derive_outdated_ciphertext(ct, 9, sys.pp, rng), rabe::Error);
  auto late = rabe::encrypt({1}, 16, rabe::random_message(sys.pp, rng), sys.pp, rng);
  try {
    rabe::derive_outdated_ciphertext(late, 3, sys.pp, rng);
    ADD_FAILURE();
  } catch (const rabe::Error& e) {
    EXPECT_EQ(e.code(), rabe::ErrorCode::kNotVulnerable);
  }
}

TEST(Attack, WeakerModeWithholdsTheKey) {
  auto trs = rabe::run_trials(outdate(), params(GameMode::kWeaker), seed(4), 400, 4);
  auto r = rabe::advantage_report(trs);
  EXPECT_EQ(r.aborted, 0u);
  EXPECT_GT(r.win_rate, 0.40);
  EXPECT_LT(r.win_rate, 0.60);
  for (const auto& t : trs) {
    ASSERT_TRUE(rabe::validate_transcript(t).ok);
    ASSERT_FALSE(t.queries.empty());
    EXPECT_TRUE(t.queries.front().withheld);
  }
}

TEST(Attack, RandomGuessingIsUnbiased) {
  auto trs = rabe::run_trials([] { return std::make_unique<rabe::RandomGuessAdversary>(); }, params(), seed(5), 400);
  auto r = rabe::advantage_report(trs);
  EXPECT_EQ(r.aborted, 0u);
  EXPECT_GT(r.win_rate, 0.40);
  EXPECT_LT(r.win_rate, 0.60);
}

TEST(Attack, ConstraintViolationAbortsAsLoss) {
  GreedyAdversary adv;
  rabe::SeededRng c(1), a(2);
  auto tr = rabe::challenger_run(adv, params(), c, a);
  EXPECT_TRUE(tr.aborted);
  EXPECT_FALSE(tr.win);
  EXPECT_NE(tr.abort_reason.find("constraint"), std::string::npos);
}

TEST(Attack, TrialsAreReproducibleAndThreadIndependent) {
  auto one = rabe::run_trials(outdate(), params(), seed(6), 12, 1);
  auto four = rabe::run_trials(outdate(), params(), seed(6), 12, 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].seed_hex, four[i].seed_hex);
    EXPECT_EQ(one[i].params_hash, four[i].params_hash);
    EXPECT_EQ(one[i].bit, four[i].bit);
    EXPECT_EQ(one[i].challenge_attrs, four[i].challenge_attrs);
  }
  auto other = rabe::run_trials(outdate(), params(), seed(7), 12, 1);
  EXPECT_NE(one[0].params_hash, other[0].params_hash);
}

TEST(Attack, TranscriptJsonRoundTripAndTamperDetection) {
  auto trs = rabe::run_trials(outdate(), params(), seed(8), 3);
  for (const auto& t : trs) {
    auto text = rabe::transcript_to_json(t);
    auto back = rabe::transcript_from_json(text);
    EXPECT_EQ(rabe::transcript_to_json(back), text);
    EXPECT_TRUE(rabe::validate_transcript(back).ok);

    auto flipped = back;
    flipped.bit ^= 1;
    EXPECT_FALSE(rabe::validate_transcript(flipped).ok);

    auto unrevoked = back;
    std::erase_if(unrevoked.queries, [](const auto& q) { return q.kind == rabe::QueryKind::kRevoke; });
    EXPECT_FALSE(rabe::validate_transcript(unrevoked).ok);
  }
  EXPECT_THROW(rabe::transcript_from_json("{"), std::exception);
}

TEST(Attack, AdvantageReportUsesWilsonInterval) {
  std::vector<rabe::GameTranscript> trs(40);
  for (std::size_t i = 0; i < trs.size(); ++i) {
    trs[i].win = i < 30;
    trs[i].guess = 0;
  }
  auto r = rabe::advantage_report(trs);
  const double n = 40, p = 0.75, z = 1.959963984540054;
  double center = (p + z * z / (2 * n)) / (1 + z * z / n);
  double half = z / (1 + z * z / n) * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  EXPECT_NEAR(r.interval_low, center - half, 1e-12);
  EXPECT_NEAR(r.interval_high, center + half, 1e-12);
  EXPECT_DOUBLE_EQ(r.advantage, 0.25);
  EXPECT_THROW(rabe::advantage_report({}), rabe::Error);

  auto j = nlohmann::json::parse(rabe::report_to_json(r, params(), "00"));
  for (const char* key : {"trials", "wins", "advantage", "interval", "mode", "T", "N", "n", "backend", "seed"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["trials"], 40);
  EXPECT_EQ(j["mode"], "standard");
}
