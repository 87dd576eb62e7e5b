#pragma once

// Selective IND-RABE-CPA game: a challenger with private-key, key-update and
// revocation oracles, the ciphertext outdate attack, and a trial runner.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rabe/scheme.hpp"

namespace rabe {

// Re-targets an original ciphertext for epoch t* to an earlier epoch t:
// E_t = E1 prod_{j in V_bt} E2_j, then every component is re-randomized.
// kInvalidArgument unless t < ct_star.epoch; kNotVulnerable when
// V_bt is not contained in V_et*.
UpdatedCiphertext derive_outdated_ciphertext(const OriginalCiphertext& ct_star, std::uint64_t t,
                                             const PublicParams& pp, Rng& rng);

// True when (t, t*) admits the derivation above.
bool is_vulnerable_pair(std::uint64_t t, std::uint64_t t_star, std::uint64_t max_time);
// Up to `limit` vulnerable pairs near (t, t*) for error messages.
std::vector<std::pair<std::uint64_t, std::uint64_t>> suggest_pairs(std::uint64_t t_star, std::uint64_t max_time,
                                                                   std::size_t limit = 3);

enum class GameMode { kStandard, kWeaker };
std::string_view mode_name(GameMode mode);

struct GameEvent {
  enum Kind { kSetup, kPrivateKey, kKeyUpdate, kChallenge } kind;
  const SetupResult& setup;
  const PrivateKey* sk = nullptr;
  const KeyUpdate* ku = nullptr;
  const OriginalCiphertext* ct = nullptr;
  const GroupElement* message = nullptr;  // the encrypted m_b
};

struct GameParams {
  Backend backend = Backend::kTransparent;
  SchemeLimits limits;
  GameMode mode = GameMode::kStandard;
  // Sees every challenger-side artifact as it is made; must be thread-safe
  // when trials run in parallel.
  std::function<void(const GameEvent&)> observer;
};

enum class QueryKind { kPrivateKey, kKeyUpdate, kRevoke };
std::string_view query_kind_name(QueryKind kind);

struct QueryRecord {
  QueryKind kind;
  int phase;                 // 1 or 2
  Identity id;               // private key and revoke
  std::string policy;        // private key
  bool satisfies_challenge = false;
  std::uint64_t epoch = 0;   // key update and revoke
  bool withheld = false;     // weaker mode: generated but not handed over
};

struct StepTiming {
  std::string step;
  double millis;
};

struct GameTranscript {
  std::string adversary;
  GameMode mode = GameMode::kStandard;
  Backend backend = Backend::kTransparent;
  SchemeLimits limits;
  std::string seed_hex;
  std::string params_hash;
  AttributeSet challenge_attrs;
  std::uint64_t challenge_epoch = 0;
  int bit = 0;
  std::optional<int> guess;
  std::vector<QueryRecord> queries;
  bool aborted = false;
  std::string abort_reason;
  bool win = false;
  // Satisfying-key ids that the "not previously queried" rule accepts but the
  // "revoked at t <= t*" rule rejects (or the reverse).
  std::vector<Identity> constraint_disagreements;
  std::vector<std::string> narrative;
  std::vector<StepTiming> timings;
};

// Handles the adversary uses to reach the challenger.
class Oracles {
 public:
  virtual ~Oracles() = default;
  virtual const PublicParams& pp() const = 0;
  // nullopt when the key is withheld (weaker mode, policy satisfies S*).
  virtual std::optional<PrivateKey> private_key(const Identity& id, const AccessPolicy& policy) = 0;
  virtual KeyUpdate key_update(std::uint64_t t) = 0;
  virtual void revoke(const Identity& id, std::uint64_t t) = 0;
};

struct ChallengeRequest {
  std::uint64_t epoch;
  GroupElement m0;
  GroupElement m1;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  virtual AttributeSet init(const SchemeLimits& limits, Rng& rng) = 0;
  virtual void phase1(Oracles& oracles, Rng& rng) = 0;
  virtual ChallengeRequest challenge(const PublicParams& pp, Rng& rng) = 0;
  virtual void phase2(Oracles& oracles, Rng& rng) { (void)oracles, (void)rng; }
  virtual int guess(const OriginalCiphertext& ct_star, Oracles& oracles, Rng& rng) = 0;
  virtual std::vector<std::string> narrative() const { return {}; }
  virtual std::vector<StepTiming> timings() const { return {}; }
};

class RandomGuessAdversary final : public Adversary {
 public:
  std::string name() const override { return "random-guess"; }
  AttributeSet init(const SchemeLimits& limits, Rng& rng) override;
  void phase1(Oracles& oracles, Rng& rng) override;
  ChallengeRequest challenge(const PublicParams& pp, Rng& rng) override;
  int guess(const OriginalCiphertext& ct_star, Oracles& oracles, Rng& rng) override;

 private:
  std::uint64_t max_time_ = 0;
};

struct OutdateOptions {
  std::optional<std::uint64_t> t;       // default: largest vulnerable t below t*
  std::optional<std::uint64_t> t_star;  // default: uniform in [2, T/2 - 1]
};

// The five-step ciphertext outdate adversary.
class OutdateAdversary final : public Adversary {
 public:
  explicit OutdateAdversary(OutdateOptions options = {}) : options_(options) {}

  std::string name() const override { return "outdate"; }
  AttributeSet init(const SchemeLimits& limits, Rng& rng) override;
  void phase1(Oracles& oracles, Rng& rng) override;
  ChallengeRequest challenge(const PublicParams& pp, Rng& rng) override;
  int guess(const OriginalCiphertext& ct_star, Oracles& oracles, Rng& rng) override;
  std::vector<std::string> narrative() const override { return narrative_; }
  std::vector<StepTiming> timings() const override { return timings_; }

  // Step-3 observations, for tests.
  bool derived_at_t() const { return dk_t_.has_value(); }
  bool bottom_at_t_star() const { return bottom_at_t_star_; }
  std::uint64_t t() const { return t_; }
  std::uint64_t t_star() const { return t_star_; }
  const std::vector<std::size_t>& folded_indices() const { return folded_; }
  const std::optional<DecryptionKey>& decryption_key() const { return dk_t_; }
  const std::optional<UpdatedCiphertext>& outdated_ciphertext() const { return outdated_; }

 private:
  OutdateOptions options_;
  SchemeLimits limits_;
  AttributeSet s_star_;
  std::uint64_t t_ = 0;
  std::uint64_t t_star_ = 0;
  std::optional<DecryptionKey> dk_t_;
  bool bottom_at_t_star_ = false;
  std::optional<GroupElement> m0_, m1_;
  std::vector<std::size_t> folded_;
  std::optional<UpdatedCiphertext> outdated_;
  std::vector<std::string> narrative_;
  std::vector<StepTiming> timings_;
};

// Runs one game. Adversary exceptions and constraint violations end the
// game as an adversary loss with aborted = true.
GameTranscript challenger_run(Adversary& adversary, const GameParams& params, Rng& challenger_rng,
                              Rng& adversary_rng);

struct TranscriptCheck {
  bool ok = true;
  std::vector<std::string> problems;
};

// Re-derives the challenge constraints and the outcome from the log alone.
TranscriptCheck validate_transcript(const GameTranscript& transcript);

using AdversaryFactory = std::function<std::unique_ptr<Adversary>()>;

// Trial i uses seed SHAKE256(trial-seed label, master || i); challenger and
// adversary draw from separate streams derived from it.
std::vector<GameTranscript> run_trials(const AdversaryFactory& factory, const GameParams& params,
                                       std::span<const std::uint8_t> master_seed, std::size_t trials,
                                       unsigned threads = 1);

struct AdvantageReport {
  std::size_t trials = 0;
  std::size_t wins = 0;
  std::size_t aborted = 0;
  double win_rate = 0;
  double advantage = 0;  // win_rate - 1/2
  double interval_low = 0;
  double interval_high = 0;  // Wilson score interval, 95%
  std::vector<StepTiming> mean_timings;
};

// kEmptyInput on no transcripts.
AdvantageReport advantage_report(const std::vector<GameTranscript>& transcripts);

std::string transcript_to_json(const GameTranscript& transcript);
GameTranscript transcript_from_json(std::string_view json);

// Machine-readable summary with fields trials, wins, advantage, interval,
// mode, T, N, n, backend, seed.
std::string report_to_json(const AdvantageReport& report, const GameParams& params, std::string_view seed_hex);
std::string report_to_table(const AdvantageReport& report, const GameParams& params);

}  // namespace rabe
