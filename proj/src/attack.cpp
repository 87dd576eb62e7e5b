#include "rabe/attack.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "rabe/error.hpp"
#include "rabe/serialization.hpp"

namespace rabe {
namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::uint8_t> with_suffix(std::span<const std::uint8_t> seed, std::uint8_t suffix) {
  std::vector<std::uint8_t> out(seed.begin(), seed.end());
  out.push_back(suffix);
  return out;
}

AttributeSet random_nonempty_subset(std::uint32_t n, Rng& rng) {
  AttributeSet s;
  while (s.empty()) {
    for (Attribute a = 1; a <= n; ++a) {
      if (rng.next_bit()) s.insert(a);
    }
  }
  return s;
}

std::pair<GroupElement, GroupElement> distinct_messages(const PublicParams& pp, Rng& rng) {
  GroupElement m0 = random_message(pp, rng);
  GroupElement m1 = random_message(pp, rng);
  while (m1 == m0) m1 = random_message(pp, rng);
  return {std::move(m0), std::move(m1)};
}

std::string and_of(const AttributeSet& attrs) {
  std::string s;
  for (Attribute a : attrs) {
    if (!s.empty()) s += " AND ";
    s += std::to_string(a);
  }
  return s;
}

std::string format_positions(const std::vector<std::size_t>& positions) {
  return ZeroIndexSet(positions).to_string();
}

class ChallengerOracles final : public Oracles {
 public:
  ChallengerOracles(SetupResult& setup, GameTranscript& transcript, const GameParams& params, Rng& rng)
      : setup_(setup), transcript_(transcript), params_(params), rng_(rng) {}

  const PublicParams& pp() const override { return setup_.pp; }

  std::optional<PrivateKey> private_key(const Identity& id, const AccessPolicy& policy) override {
    bool sat = satisfies(policy, transcript_.challenge_attrs);
    PrivateKey sk = gen_key(id, policy, setup_.mk, setup_.state, setup_.pp, rng_);
    if (params_.observer) params_.observer({GameEvent::kPrivateKey, setup_, &sk});
    bool withhold = params_.mode == GameMode::kWeaker && sat;
    transcript_.queries.push_back({QueryKind::kPrivateKey, phase, id, policy.formula(), sat, 0, withhold});
    if (withhold) return std::nullopt;
    return sk;
  }

  KeyUpdate key_update(std::uint64_t t) override {
    KeyUpdate ku = rabe::update_key(t, setup_.rl, setup_.mk, setup_.state, setup_.pp, rng_);
    if (params_.observer) params_.observer({GameEvent::kKeyUpdate, setup_, nullptr, &ku});
    transcript_.queries.push_back({QueryKind::kKeyUpdate, phase, {}, {}, false, t, false});
    return ku;
  }

  void revoke(const Identity& id, std::uint64_t t) override {
    rabe::revoke(id, t, setup_.rl, setup_.state, setup_.pp);
    transcript_.queries.push_back({QueryKind::kRevoke, phase, id, {}, false, t, false});
  }

  int phase = 1;

 private:
  SetupResult& setup_;
  GameTranscript& transcript_;
  const GameParams& params_;
  Rng& rng_;
};

// Both challenge-phase rules, applied to every satisfying key handed out so far.
// Returns the first violation, if any, and records ids the rules disagree on.
std::optional<std::string> check_constraints(GameTranscript& transcript, const RevocationList& rl) {
  std::optional<std::string> violation;
  transcript.constraint_disagreements.clear();
  for (const auto& q : transcript.queries) {
    if (q.kind != QueryKind::kPrivateKey || !q.satisfies_challenge || q.withheld) continue;
    auto revoked = rl.epoch_of(q.id);
    bool revoked_by_t_star = revoked && *revoked <= transcript.challenge_epoch;
    bool revoked_at_all = revoked.has_value();
    if (revoked_by_t_star != revoked_at_all) transcript.constraint_disagreements.push_back(q.id);
    if (!violation && !revoked_by_t_star) {
      violation = "key for '" + q.id + "' satisfies S* but its identity is not revoked at an epoch <= t* = " +
                  std::to_string(transcript.challenge_epoch);
    }
  }
  return violation;
}

}  // namespace

UpdatedCiphertext derive_outdated_ciphertext(const OriginalCiphertext& ct_star, std::uint64_t t,
                                             const PublicParams& pp, Rng& rng) {
  if (t >= ct_star.epoch) {
    throw Error(ErrorCode::kInvalidArgument, "outdated epoch " + std::to_string(t) +
                                                 " must precede the ciphertext epoch " + std::to_string(ct_star.epoch));
  }
  pp.check_operational_epoch(t);
  if (!is_vulnerable_pair(t, ct_star.epoch, pp.limits().max_time)) {
    throw Error(ErrorCode::kNotVulnerable,
                "V_bt for t = " + std::to_string(t) + " is not contained in V_et* for t* = " +
                    std::to_string(ct_star.epoch));
  }
  return fold_ciphertext(ct_star, t, pp, rng);
}

bool is_vulnerable_pair(std::uint64_t t, std::uint64_t t_star, std::uint64_t max_time) {
  if (t < 1 || t >= t_star || t_star >= max_time) return false;
  return zero_set(tencode(TimeEpoch(t, max_time))).is_subset_of(zero_set(ctencode(TimeEpoch(t_star, max_time))));
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> suggest_pairs(std::uint64_t t_star, std::uint64_t max_time,
                                                                   std::size_t limit) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (!is_valid_max_time(max_time)) return out;
  // Nearest t* values first, largest t for each.
  std::vector<std::uint64_t> candidates;
  for (std::uint64_t c = 2; c < max_time; ++c) candidates.push_back(c);
  auto distance = [&](std::uint64_t c) { return c > t_star ? c - t_star : t_star - c; };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::uint64_t a, std::uint64_t b) { return distance(a) < distance(b); });
  for (std::uint64_t c : candidates) {
    if (out.size() >= limit) break;
    auto ts = find_outdate_pairs(TimeEpoch(c, max_time));
    if (!ts.empty()) out.emplace_back(ts.back().value(), c);
  }
  return out;
}

std::string_view mode_name(GameMode mode) { return mode == GameMode::kStandard ? "standard" : "weaker"; }

std::string_view query_kind_name(QueryKind kind) {
  switch (kind) {
    case QueryKind::kPrivateKey: return "private-key";
    case QueryKind::kKeyUpdate: return "key-update";
    case QueryKind::kRevoke: return "revoke";
  }
  return "unknown";
}

AttributeSet RandomGuessAdversary::init(const SchemeLimits& limits, Rng& rng) {
  max_time_ = limits.max_time;
  return random_nonempty_subset(limits.max_attributes, rng);
}

void RandomGuessAdversary::phase1(Oracles& oracles, Rng& rng) {
  (void)oracles;
  (void)rng;
}

ChallengeRequest RandomGuessAdversary::challenge(const PublicParams& pp, Rng& rng) {
  auto [m0, m1] = distinct_messages(pp, rng);
  return {1 + rng.uniform(max_time_ - 1), std::move(m0), std::move(m1)};
}

int RandomGuessAdversary::guess(const OriginalCiphertext& ct_star, Oracles& oracles, Rng& rng) {
  (void)ct_star;
  (void)oracles;
  return rng.next_bit() ? 1 : 0;
}

AttributeSet OutdateAdversary::init(const SchemeLimits& limits, Rng& rng) {
  limits_ = limits;
  const std::uint64_t T = limits.max_time;
  if (options_.t_star) {
    t_star_ = *options_.t_star;
  } else {
    if (T / 2 <= 2) throw Error(ErrorCode::kInvalidArgument, "T must be at least 8 to pick t* in [2, T/2 - 1]");
    t_star_ = 2 + rng.uniform(T / 2 - 2);
  }
  if (t_star_ < 2 || t_star_ >= T) {
    throw Error(ErrorCode::kOutOfRange, "t* = " + std::to_string(t_star_) + " outside [2, " + std::to_string(T - 1) + "]");
  }
  if (options_.t) {
    t_ = *options_.t;
  } else {
    auto ts = find_outdate_pairs(TimeEpoch(t_star_, T));
    if (ts.empty()) throw Error(ErrorCode::kNotVulnerable, "no vulnerable t below t* = " + std::to_string(t_star_));
    t_ = ts.back().value();
  }
  if (!is_vulnerable_pair(t_, t_star_, T)) {
    throw Error(ErrorCode::kNotVulnerable,
                "(t, t*) = (" + std::to_string(t_) + ", " + std::to_string(t_star_) + ") is not a vulnerable pair");
  }
  s_star_ = random_nonempty_subset(limits.max_attributes, rng);
  narrative_.push_back("step 1: submit S* = {" + format_attributes(s_star_) + "}");
  return s_star_;
}

void OutdateAdversary::phase1(Oracles& oracles, Rng& rng) {
  (void)rng;
  const PublicParams& pp = oracles.pp();
  auto start = Clock::now();
  const Identity id = "leaked-user";
  AccessPolicy policy = parse_policy(and_of(s_star_), pp.context().scalar_field());
  std::optional<PrivateKey> sk = oracles.private_key(id, policy);
  if (!sk) {
    narrative_.push_back("step 2: the satisfying key was withheld; no credential to harvest");
    timings_.push_back({"harvest", millis_since(start)});
    return;
  }
  oracles.revoke(id, t_star_);
  narrative_.push_back("step 2: harvested revoked key of '" + id + "' (policy " + policy.formula() +
                       "), revoked at t* = " + std::to_string(t_star_) + "; chose past epoch t = " +
                       std::to_string(t_));
  timings_.push_back({"harvest", millis_since(start)});

  start = Clock::now();
  KeyUpdate ku_t = oracles.key_update(t_);
  KeyUpdate ku_t_star = oracles.key_update(t_star_);
  bottom_at_t_star_ = !derive_dk(*sk, ku_t_star).has_value();
  dk_t_ = derive_dk(*sk, ku_t);
  narrative_.push_back(std::string("step 3: DeriveDK with KU_") + std::to_string(t_star_) + " -> " +
                       (bottom_at_t_star_ ? "bottom" : "key") + "; with KU_" + std::to_string(t_) + " -> " +
                       (dk_t_ ? "key at node " + std::to_string(dk_t_->node) : std::string("bottom")));
  timings_.push_back({"derive-dk", millis_since(start)});
}

ChallengeRequest OutdateAdversary::challenge(const PublicParams& pp, Rng& rng) {
  auto [m0, m1] = distinct_messages(pp, rng);
  m0_ = m0;
  m1_ = m1;
  return {t_star_, std::move(m0), std::move(m1)};
}

int OutdateAdversary::guess(const OriginalCiphertext& ct_star, Oracles& oracles, Rng& rng) {
  if (!dk_t_) {
    narrative_.push_back("step 5: no decryption key; guessing at random");
    return rng.next_bit() ? 1 : 0;
  }
  const PublicParams& pp = oracles.pp();
  auto start = Clock::now();
  outdated_ = derive_outdated_ciphertext(ct_star, t_, pp, rng);
  const UpdatedCiphertext& ct_t = *outdated_;
  folded_ = zero_set(tencode(pp.epoch(t_))).positions();
  narrative_.push_back("step 4: folded E2 components " + format_positions(folded_) + " of CT* (V_et* = " +
                       zero_set(ctencode(pp.epoch(t_star_))).to_string() + ") into E_" + std::to_string(t_) +
                       " and re-randomized");
  timings_.push_back({"outdate", millis_since(start)});

  start = Clock::now();
  GroupElement m = decrypt(ct_t, *dk_t_, pp);
  timings_.push_back({"decrypt", millis_since(start)});
  int b;
  if (m == *m0_) {
    b = 0;
  } else if (m == *m1_) {
    b = 1;
  } else {
    b = rng.next_bit() ? 1 : 0;
    narrative_.push_back("step 5: decryption matched neither message; guessing " + std::to_string(b));
    return b;
  }
  narrative_.push_back("step 5: decrypted message equals m" + std::to_string(b) + "; guess " + std::to_string(b));
  return b;
}

GameTranscript challenger_run(Adversary& adversary, const GameParams& params, Rng& challenger_rng,
                              Rng& adversary_rng) {
  GameTranscript tr;
  tr.adversary = adversary.name();
  tr.mode = params.mode;
  tr.backend = params.backend;
  tr.limits = params.limits;
  auto finish = [&](std::string reason) {
    tr.aborted = true;
    tr.abort_reason = std::move(reason);
    tr.win = false;
    tr.narrative = adversary.narrative();
    tr.timings = adversary.timings();
    return tr;
  };

  try {
    tr.challenge_attrs = adversary.init(params.limits, adversary_rng);
    for (Attribute a : tr.challenge_attrs) {
      if (a < 1 || a > params.limits.max_attributes) return finish("challenge attribute outside [1, n]");
    }
    if (tr.challenge_attrs.empty()) return finish("empty challenge attribute set");
  } catch (const std::exception& e) {
    return finish(std::string("init failed: ") + e.what());
  }

  std::vector<std::uint8_t> ctx_seed(32);
  challenger_rng.fill(ctx_seed);
  SetupResult setup = rabe::setup(BilinearContext::create(params.backend, ctx_seed), params.limits, challenger_rng);
  tr.params_hash = params_hash(setup.pp);
  if (params.observer) params.observer({GameEvent::kSetup, setup});
  ChallengerOracles oracles(setup, tr, params, challenger_rng);

  std::optional<OriginalCiphertext> ct_star;
  try {
    adversary.phase1(oracles, adversary_rng);
    ChallengeRequest req = adversary.challenge(setup.pp, adversary_rng);
    setup.pp.check_operational_epoch(req.epoch);
    tr.challenge_epoch = req.epoch;
    if (req.m0.side() != Side::kTarget || req.m1.side() != Side::kTarget || req.m0 == req.m1) {
      return finish("challenge messages must be two distinct target-group elements");
    }
    if (auto v = check_constraints(tr, setup.rl)) return finish("challenge constraint violated: " + *v);
    tr.bit = challenger_rng.next_bit() ? 1 : 0;
    ct_star = encrypt(tr.challenge_attrs, req.epoch, tr.bit ? req.m1 : req.m0, setup.pp, challenger_rng);
    if (params.observer) {
      params.observer({GameEvent::kChallenge, setup, nullptr, nullptr, &*ct_star, tr.bit ? &req.m1 : &req.m0});
    }
    oracles.phase = 2;
    adversary.phase2(oracles, adversary_rng);
    int g = adversary.guess(*ct_star, oracles, adversary_rng);
    if (g != 0 && g != 1) return finish("guess is not a bit");
    tr.guess = g;
    if (auto v = check_constraints(tr, setup.rl)) return finish("constraint violated after phase 2: " + *v);
  } catch (const std::exception& e) {
    return finish(std::string("adversary failed: ") + e.what());
  }
  tr.win = *tr.guess == tr.bit;
  tr.narrative = adversary.narrative();
  tr.timings = adversary.timings();
  return tr;
}

TranscriptCheck validate_transcript(const GameTranscript& tr) {
  TranscriptCheck check;
  auto problem = [&](std::string p) {
    check.ok = false;
    check.problems.push_back(std::move(p));
  };
  if (tr.bit != 0 && tr.bit != 1) problem("challenge bit is not 0 or 1");
  if (tr.aborted) {
    if (tr.win) problem("aborted game recorded as a win");
    return check;
  }
  if (!tr.guess) problem("completed game without a guess");
  if (tr.guess && tr.win != (*tr.guess == tr.bit)) problem("outcome does not match guess and bit");

  // Earliest revocation per identity, from the log.
  std::map<Identity, std::uint64_t> revoked;
  for (const auto& q : tr.queries) {
    if (q.kind != QueryKind::kRevoke) continue;
    auto [it, inserted] = revoked.emplace(q.id, q.epoch);
    if (!inserted) it->second = std::min(it->second, q.epoch);
  }
  auto field = BilinearContext::create(Backend::kTransparent).scalar_field();
  for (const auto& q : tr.queries) {
    if (q.kind != QueryKind::kPrivateKey) continue;
    bool sat = satisfies(parse_policy(q.policy, field), tr.challenge_attrs);
    if (sat != q.satisfies_challenge) problem("satisfaction flag for '" + q.id + "' does not match its policy");
    if (q.withheld != (sat && tr.mode == GameMode::kWeaker)) problem("withheld flag for '" + q.id + "' is wrong");
    if (!sat || q.withheld) continue;
    auto it = revoked.find(q.id);
    if (it == revoked.end()) problem("satisfying key for '" + q.id + "' belongs to a non-revoked identity");
    else if (it->second > tr.challenge_epoch) {
      problem("satisfying key for '" + q.id + "' revoked only at " + std::to_string(it->second) + " > t*");
    }
  }
  return check;
}

std::vector<GameTranscript> run_trials(const AdversaryFactory& factory, const GameParams& params,
                                       std::span<const std::uint8_t> master_seed, std::size_t trials,
                                       unsigned threads) {
  std::vector<std::optional<GameTranscript>> results(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      std::vector<std::uint8_t> material(master_seed.begin(), master_seed.end());
      auto idx = seed_bytes(i);
      material.insert(material.end(), idx.begin(), idx.end());
      auto trial_seed = shake256(labels::kTrialSeed, material, 32);
      SeededRng challenger(with_suffix(trial_seed, 0));
      SeededRng adversary_rng(with_suffix(trial_seed, 1));
      auto adversary = factory();
      GameTranscript tr = challenger_run(*adversary, params, challenger, adversary_rng);
      tr.seed_hex = hex_encode(trial_seed);
      results[i] = std::move(tr);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<GameTranscript> out;
  out.reserve(trials);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

AdvantageReport advantage_report(const std::vector<GameTranscript>& transcripts) {
  if (transcripts.empty()) throw Error(ErrorCode::kEmptyInput, "no transcripts to summarize");
  AdvantageReport r;
  r.trials = transcripts.size();
  std::vector<std::pair<std::string, std::pair<double, std::size_t>>> sums;
  for (const auto& t : transcripts) {
    r.wins += t.win ? 1 : 0;
    r.aborted += t.aborted ? 1 : 0;
    for (const auto& s : t.timings) {
      auto it = std::find_if(sums.begin(), sums.end(), [&](const auto& e) { return e.first == s.step; });
      if (it == sums.end()) {
        sums.push_back({s.step, {s.millis, 1}});
      } else {
        it->second.first += s.millis;
        ++it->second.second;
      }
    }
  }
  const double n = static_cast<double>(r.trials);
  r.win_rate = static_cast<double>(r.wins) / n;
  r.advantage = r.win_rate - 0.5;
  constexpr double z = 1.959963984540054;
  const double denom = 1 + z * z / n;
  const double center = (r.win_rate + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(r.win_rate * (1 - r.win_rate) / n + z * z / (4 * n * n)) / denom;
  r.interval_low = std::max(0.0, center - half);
  r.interval_high = std::min(1.0, center + half);
  for (const auto& [step, acc] : sums) r.mean_timings.push_back({step, acc.first / static_cast<double>(acc.second)});
  return r;
}

std::string transcript_to_json(const GameTranscript& tr) {
  using nlohmann::json;
  json j;
  j["adversary"] = tr.adversary;
  j["mode"] = mode_name(tr.mode);
  j["backend"] = backend_name(tr.backend);
  j["T"] = tr.limits.max_time;
  j["N"] = tr.limits.max_users;
  j["n"] = tr.limits.max_attributes;
  j["seed"] = tr.seed_hex;
  j["params_hash"] = tr.params_hash;
  j["challenge_attrs"] = std::vector<Attribute>(tr.challenge_attrs.begin(), tr.challenge_attrs.end());
  j["challenge_epoch"] = tr.challenge_epoch;
  j["bit"] = tr.bit;
  j["guess"] = tr.guess ? json(*tr.guess) : json(nullptr);
  j["aborted"] = tr.aborted;
  j["abort_reason"] = tr.abort_reason;
  j["win"] = tr.win;
  j["constraint_disagreements"] = tr.constraint_disagreements;
  j["narrative"] = tr.narrative;
  json queries = json::array();
  for (const auto& q : tr.queries) {
    queries.push_back({{"kind", query_kind_name(q.kind)},
                       {"phase", q.phase},
                       {"id", q.id},
                       {"policy", q.policy},
                       {"satisfies_challenge", q.satisfies_challenge},
                       {"epoch", q.epoch},
                       {"withheld", q.withheld}});
  }
  j["queries"] = queries;
  json timings = json::array();
  for (const auto& t : tr.timings) timings.push_back({{"step", t.step}, {"millis", t.millis}});
  j["timings"] = timings;
  return j.dump(2);
}

GameTranscript transcript_from_json(std::string_view text) {
  using nlohmann::json;
  try {
    json j = json::parse(text);
    GameTranscript tr;
    tr.adversary = j.at("adversary").get<std::string>();
    tr.mode = j.at("mode").get<std::string>() == "weaker" ? GameMode::kWeaker : GameMode::kStandard;
    auto backend = parse_backend(j.at("backend").get<std::string>());
    if (!backend) throw Error(ErrorCode::kDecode, "unknown backend in transcript");
    tr.backend = *backend;
    tr.limits.max_time = j.at("T").get<std::uint64_t>();
    tr.limits.max_users = j.at("N").get<std::uint64_t>();
    tr.limits.max_attributes = j.at("n").get<std::uint32_t>();
    tr.seed_hex = j.at("seed").get<std::string>();
    tr.params_hash = j.at("params_hash").get<std::string>();
    for (Attribute a : j.at("challenge_attrs").get<std::vector<Attribute>>()) tr.challenge_attrs.insert(a);
    tr.challenge_epoch = j.at("challenge_epoch").get<std::uint64_t>();
    tr.bit = j.at("bit").get<int>();
    if (!j.at("guess").is_null()) tr.guess = j.at("guess").get<int>();
    tr.aborted = j.at("aborted").get<bool>();
    tr.abort_reason = j.at("abort_reason").get<std::string>();
    tr.win = j.at("win").get<bool>();
    tr.constraint_disagreements = j.at("constraint_disagreements").get<std::vector<std::string>>();
    tr.narrative = j.at("narrative").get<std::vector<std::string>>();
    for (const auto& q : j.at("queries")) {
      std::string kind = q.at("kind").get<std::string>();
      QueryKind k = kind == "private-key" ? QueryKind::kPrivateKey
                    : kind == "key-update" ? QueryKind::kKeyUpdate
                    : kind == "revoke"     ? QueryKind::kRevoke
                                           : throw Error(ErrorCode::kDecode, "unknown query kind '" + kind + "'");
      tr.queries.push_back({k, q.at("phase").get<int>(), q.at("id").get<std::string>(),
                            q.at("policy").get<std::string>(), q.at("satisfies_challenge").get<bool>(),
                            q.at("epoch").get<std::uint64_t>(), q.at("withheld").get<bool>()});
    }
    for (const auto& t : j.at("timings")) tr.timings.push_back({t.at("step").get<std::string>(), t.at("millis").get<double>()});
    return tr;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kDecode, std::string("malformed transcript: ") + e.what());
  }
}

std::string report_to_json(const AdvantageReport& r, const GameParams& params, std::string_view seed_hex) {
  nlohmann::json j;
  j["trials"] = r.trials;
  j["wins"] = r.wins;
  j["aborted"] = r.aborted;
  j["win_rate"] = r.win_rate;
  j["advantage"] = r.advantage;
  j["interval"] = {r.interval_low, r.interval_high};
  j["mode"] = mode_name(params.mode);
  j["T"] = params.limits.max_time;
  j["N"] = params.limits.max_users;
  j["n"] = params.limits.max_attributes;
  j["backend"] = backend_name(params.backend);
  j["seed"] = seed_hex;
  nlohmann::json timings = nlohmann::json::object();
  for (const auto& t : r.mean_timings) timings[t.step] = t.millis;
  j["mean_step_millis"] = timings;
  return j.dump();
}

std::string report_to_table(const AdvantageReport& r, const GameParams& params) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  os << "mode        " << mode_name(params.mode) << "\n";
  os << "backend     " << backend_name(params.backend) << "\n";
  os << "T, N, n     " << params.limits.max_time << ", " << params.limits.max_users << ", "
     << params.limits.max_attributes << "\n";
  os << "trials      " << r.trials << "\n";
  os << "wins        " << r.wins << "\n";
  os << "aborted     " << r.aborted << "\n";
  os << "win rate    " << r.win_rate << "\n";
  os << "advantage   " << r.advantage << "\n";
  os << "95% Wilson  [" << r.interval_low << ", " << r.interval_high << "]\n";
  for (const auto& t : r.mean_timings) {
    os << "mean " << std::left << std::setw(10) << t.step << std::right << " " << std::setprecision(3) << t.millis
       << " ms\n";
  }
  return os.str();
}

}  // namespace rabe
