#include "rabe/rabe.h"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "rabe/attack.hpp"
#include "rabe/center.hpp"
#include "rabe/error.hpp"
#include "rabe/serialization.hpp"

using rabe::ArtifactKind;
using rabe::Error;
using rabe::ErrorCode;

struct rabe_center {
  rabe::CenterState state;
};

struct rabe_artifact {
  rabe::Envelope env;
  // Decoded public parameters, filled on first use when env is a pp envelope.
  mutable std::optional<rabe::PublicParams> pp;
};

struct rabe_rng {
  std::unique_ptr<rabe::Rng> rng;
};

namespace {

thread_local std::string g_last_error;

rabe_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return RABE_ERR_INVALID_ARGUMENT;
    case ErrorCode::kOutOfRange: return RABE_ERR_OUT_OF_RANGE;
    case ErrorCode::kSideMismatch: return RABE_ERR_SIDE_MISMATCH;
    case ErrorCode::kBackendMismatch: return RABE_ERR_BACKEND_MISMATCH;
    case ErrorCode::kDivisionByZero: return RABE_ERR_DIVISION_BY_ZERO;
    case ErrorCode::kParse: return RABE_ERR_PARSE;
    case ErrorCode::kNonMonotone: return RABE_ERR_NON_MONOTONE;
    case ErrorCode::kCapacityExhausted: return RABE_ERR_CAPACITY_EXHAUSTED;
    case ErrorCode::kInvalidNode: return RABE_ERR_INVALID_NODE;
    case ErrorCode::kUnknownIdentity: return RABE_ERR_UNKNOWN_IDENTITY;
    case ErrorCode::kUnsatisfiedPolicy: return RABE_ERR_UNSATISFIED_POLICY;
    case ErrorCode::kMissingComponent: return RABE_ERR_MISSING_COMPONENT;
    case ErrorCode::kDecode: return RABE_ERR_DECODE;
    case ErrorCode::kHashMismatch: return RABE_ERR_HASH_MISMATCH;
    case ErrorCode::kIo: return RABE_ERR_IO;
    case ErrorCode::kConstraintViolation: return RABE_ERR_CONSTRAINT_VIOLATION;
    case ErrorCode::kBudgetExceeded: return RABE_ERR_BUDGET_EXCEEDED;
    case ErrorCode::kEmptyInput: return RABE_ERR_EMPTY_INPUT;
    case ErrorCode::kNotVulnerable: return RABE_ERR_NOT_VULNERABLE;
  }
  return RABE_ERR_INTERNAL;
}

template <class F>
rabe_status guarded(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RABE_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RABE_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, std::string("cannot open '") + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, std::string("cannot read '") + path + "'");
  return ss.str();
}

void write_file(const char* path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, std::string("cannot create '") + path + "'");
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, std::string("cannot write '") + path + "'");
}

rabe::Backend backend_or_throw(const char* name) {
  require(name, "backend");
  auto b = rabe::parse_backend(name);
  if (!b) throw Error(ErrorCode::kInvalidArgument, std::string("unknown backend '") + name + "'");
  return *b;
}

const rabe::PublicParams& public_params(const rabe_artifact* a) {
  require(a, "public parameters");
  if (a->env.kind != ArtifactKind::kPublicParams) {
    throw Error(ErrorCode::kInvalidArgument, "expected a 'pp' artifact, got '" +
                                                 std::string(rabe::kind_name(a->env.kind)) + "'");
  }
  if (!a->pp) {
    rabe::PublicParams pp = rabe::decode_public_params(a->env.payload);
    if (rabe::params_hash(pp) != a->env.params_hash) {
      throw Error(ErrorCode::kHashMismatch, "public-parameter envelope hash does not match its payload");
    }
    a->pp.emplace(std::move(pp));
  }
  return *a->pp;
}

rabe_artifact* new_artifact(ArtifactKind kind, const rabe::PublicParams& pp, std::vector<std::uint8_t> payload) {
  return new rabe_artifact{rabe::make_envelope(kind, pp, std::move(payload)), std::nullopt};
}

const std::vector<std::uint8_t>& payload_of(const rabe_artifact* a, ArtifactKind kind, const rabe::PublicParams& pp,
                                            const char* what) {
  require(a, what);
  return rabe::open_envelope(a->env, kind, pp);
}

std::string describe_policy(const rabe::AccessPolicy& p) {
  return p.formula() + " (" + std::to_string(p.rows()) + "x" + std::to_string(p.cols()) + " matrix)";
}

std::string join_nodes(const std::vector<rabe::NodeId>& nodes) {
  std::string s = "{";
  for (std::size_t i = 0; i < nodes.size(); ++i) s += (i ? ", " : "") + std::to_string(nodes[i]);
  return s + "}";
}

template <class Map>
std::string keys_of(const Map& m) {
  std::vector<rabe::NodeId> keys;
  for (const auto& [k, v] : m) keys.push_back(static_cast<rabe::NodeId>(k));
  return join_nodes(keys);
}

std::string describe(const rabe_artifact* a, const rabe_artifact* pp_artifact) {
  std::ostringstream os;
  os << "kind: " << rabe::kind_name(a->env.kind) << "\n";
  os << "backend: " << rabe::backend_name(a->env.backend) << "\n";
  os << "params-hash: " << a->env.params_hash << "\n";
  if (a->env.kind == ArtifactKind::kTranscript) {
    os << "payload: " << a->env.payload.size() << " bytes of JSON\n";
    return os.str();
  }
  const rabe::PublicParams& pp = public_params(a->env.kind == ArtifactKind::kPublicParams ? a : pp_artifact);
  const auto& data = rabe::open_envelope(a->env, a->env.kind, pp);
  switch (a->env.kind) {
    case ArtifactKind::kPublicParams:
      os << "N: " << pp.limits().max_users << "\nT: " << pp.limits().max_time
         << "\nn: " << pp.limits().max_attributes << "\n";
      break;
    case ArtifactKind::kPrivateKey: {
      auto sk = rabe::decode_private_key(data, pp);
      std::vector<rabe::NodeId> nodes;
      for (const auto& [n, p] : sk.parts) nodes.push_back(n);
      os << "id: " << sk.id << "\npolicy: " << describe_policy(sk.policy) << "\nleaf: " << sk.leaf
         << "\npath: " << join_nodes(nodes) << "\n";
      break;
    }
    case ArtifactKind::kKeyUpdate: {
      auto ku = rabe::decode_key_update(data, pp);
      os << "epoch: " << ku.epoch << "\nbt: " << rabe::tencode(pp.epoch(ku.epoch)).to_string()
         << "\nnodes: " << keys_of(ku.parts) << "\n";
      break;
    }
    case ArtifactKind::kDecryptionKey: {
      auto dk = rabe::decode_decryption_key(data, pp);
      os << "id: " << dk.id << "\nepoch: " << dk.epoch << "\nnode: " << dk.node
         << "\npolicy: " << describe_policy(dk.policy) << "\n";
      break;
    }
    case ArtifactKind::kOriginalCiphertext: {
      auto ct = rabe::decode_original_ciphertext(data, pp);
      os << "epoch: " << ct.epoch << "\nattrs: " << rabe::format_attributes(ct.attrs)
         << "\net: " << rabe::ctencode(pp.epoch(ct.epoch)).to_string() << "\nE2 indices: " << keys_of(ct.e2) << "\n";
      break;
    }
    case ArtifactKind::kUpdatedCiphertext: {
      auto ct = rabe::decode_updated_ciphertext(data, pp);
      os << "epoch: " << ct.epoch << "\nattrs: " << rabe::format_attributes(ct.attrs) << "\n";
      break;
    }
    case ArtifactKind::kMessage:
      os << "element: " << rabe::hex_encode(rabe::decode_message(data, pp).encode()) << "\n";
      break;
    default:
      os << "payload: " << a->env.payload.size() << " bytes\n";
  }
  return os.str();
}

std::string lemma_table(unsigned tau_min, unsigned tau_max, bool& all_hold) {
  std::ostringstream os;
  os << "tau  regime-pairs  vulnerable  counterexamples  outside-pairs  outside-vulnerable  outside-examples\n";
  all_hold = true;
  std::ostringstream detail;
  for (unsigned tau = tau_min; tau <= tau_max; ++tau) {
    auto c = rabe::outdate_pair_census(tau, 3);
    all_hold = all_hold && c.regime_counterexamples == 0;
    std::string examples;
    for (const auto& [t, ts] : c.outside_examples) {
      examples += (examples.empty() ? "" : " ") + std::string("(") + std::to_string(t) + "," + std::to_string(ts) + ")";
    }
    os << std::left << std::setw(5) << tau << std::setw(14) << c.regime_pairs << std::setw(12) << c.regime_vulnerable
       << std::setw(17) << c.regime_counterexamples << std::setw(15) << c.outside_pairs << std::setw(20)
       << c.outside_vulnerable << (examples.empty() ? "-" : examples) << "\n";
    if (tau <= 5) {
      const std::uint64_t T = std::uint64_t{1} << tau;
      detail << "tau = " << tau << ", vulnerable t per t* (t* < " << T / 2 << "):\n";
      for (std::uint64_t t_star = 2; t_star < T / 2; ++t_star) {
        auto ts = rabe::find_outdate_pairs(rabe::TimeEpoch(t_star, T));
        detail << "  t* = " << t_star << ": t in {";
        for (std::size_t i = 0; i < ts.size(); ++i) detail << (i ? ", " : "") << ts[i].value();
        detail << "}\n";
      }
    }
  }
  os << (all_hold ? "subset property V_t in V_et* holds for every pair 0 < t < t* < 2^(tau-1)\n"
                  : "subset property FAILS for some pair in the proof regime\n");
  return os.str() + detail.str();
}

rabe::GameParams game_params(const rabe_attack_options* o) {
  rabe::GameParams p;
  p.backend = backend_or_throw(o->backend);
  p.limits = rabe::SchemeLimits{o->max_users, o->max_time, o->max_attributes};
  p.limits.validate();
  p.mode = o->weaker_model ? rabe::GameMode::kWeaker : rabe::GameMode::kStandard;
  return p;
}

std::vector<std::uint8_t> master_seed(const rabe_attack_options* o) {
  if (o->seed) return {o->seed, o->seed + o->seed_len};
  std::vector<std::uint8_t> s(32);
  rabe::SystemRng().fill(s);
  return s;
}

std::vector<rabe::GameTranscript> run_demo(const rabe_attack_options* o, const rabe::GameParams& params,
                                           const std::vector<std::uint8_t>& seed) {
  if (o->trials == 0) throw Error(ErrorCode::kEmptyInput, "at least one trial is required");
  rabe::OutdateOptions opts;
  if (o->t_star) opts.t_star = o->t_star;
  if (o->t) opts.t = o->t;
  if (!o->null_adversary && (o->t || o->t_star)) {
    const std::uint64_t T = params.limits.max_time;
    if (o->t_star && (o->t_star < 2 || o->t_star >= T)) {
      throw Error(ErrorCode::kOutOfRange, "t* = " + std::to_string(o->t_star) + " outside [2, " +
                                              std::to_string(T - 1) + "]");
    }
    if (o->t && o->t_star && !rabe::is_vulnerable_pair(o->t, o->t_star, T)) {
      std::string msg = "(t, t*) = (" + std::to_string(o->t) + ", " + std::to_string(o->t_star) +
                        ") is not vulnerable: V_bt is not contained in V_et*; try";
      for (const auto& [t, ts] : rabe::suggest_pairs(o->t_star, T)) {
        msg += " (" + std::to_string(t) + ", " + std::to_string(ts) + ")";
      }
      throw Error(ErrorCode::kNotVulnerable, msg);
    }
    if (o->t && !o->t_star) {
      throw Error(ErrorCode::kInvalidArgument, "t requires t* to be given as well");
    }
  }
  rabe::AdversaryFactory factory;
  if (o->null_adversary) {
    factory = [] { return std::make_unique<rabe::RandomGuessAdversary>(); };
  } else {
    factory = [opts] { return std::make_unique<rabe::OutdateAdversary>(opts); };
  }
  return rabe::run_trials(factory, params, seed, o->trials, o->threads ? o->threads : 1);
}

}  // namespace

extern "C" {

const char* rabe_last_error(void) { return g_last_error.c_str(); }

const char* rabe_status_name(rabe_status status) {
  switch (status) {
    case RABE_OK: return "ok";
    case RABE_BOTTOM: return "bottom";
    case RABE_ERR_IO: return "io";
    case RABE_ERR_INTERNAL: return "internal";
    default: break;
  }
  for (int c = 0; c <= static_cast<int>(ErrorCode::kNotVulnerable); ++c) {
    if (status_of(static_cast<ErrorCode>(c)) == status) return rabe::error_code_name(static_cast<ErrorCode>(c));
  }
  return "unknown";
}

void rabe_string_free(char* s) { std::free(s); }

rabe_status rabe_rng_new_seeded(const uint8_t* seed, size_t seed_len, rabe_rng** out) {
  return guarded([&] {
    require(out, "out");
    if (seed_len) require(seed, "seed");
    *out = new rabe_rng{std::make_unique<rabe::SeededRng>(std::span<const std::uint8_t>(seed, seed_len))};
    return RABE_OK;
  });
}

rabe_status rabe_rng_new_system(rabe_rng** out) {
  return guarded([&] {
    require(out, "out");
    *out = new rabe_rng{std::make_unique<rabe::SystemRng>()};
    return RABE_OK;
  });
}

void rabe_rng_free(rabe_rng* rng) { delete rng; }

rabe_status rabe_center_setup(const char* backend, uint64_t max_users, uint64_t max_time, uint32_t max_attributes,
                              const uint8_t* seed, size_t seed_len, rabe_center** out) {
  return guarded([&] {
    require(out, "out");
    std::optional<std::vector<std::uint8_t>> s;
    if (seed) s.emplace(seed, seed + seed_len);
    auto state = rabe::CenterState::create(backend_or_throw(backend),
                                           rabe::SchemeLimits{max_users, max_time, max_attributes}, std::move(s));
    *out = new rabe_center{std::move(state)};
    return RABE_OK;
  });
}

rabe_status rabe_center_load(const char* path, rabe_center** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    rabe::Envelope env = rabe::envelope_from_text(read_file(path));
    if (env.kind != ArtifactKind::kCenterState) {
      throw Error(ErrorCode::kDecode, std::string("'") + path + "' is not a center state file");
    }
    auto state = rabe::CenterState::decode(env.payload);
    if (rabe::params_hash(state.pp()) != env.params_hash || state.pp().context().backend() != env.backend) {
      throw Error(ErrorCode::kHashMismatch, "center state envelope does not match its parameters");
    }
    *out = new rabe_center{std::move(state)};
    return RABE_OK;
  });
}

rabe_status rabe_center_save(const rabe_center* center, const char* path) {
  return guarded([&] {
    require(center, "center");
    require(path, "path");
    auto env = rabe::make_envelope(ArtifactKind::kCenterState, center->state.pp(), center->state.encode());
    write_file(path, rabe::envelope_to_text(env));
    return RABE_OK;
  });
}

void rabe_center_free(rabe_center* center) { delete center; }

rabe_status rabe_center_public_params(const rabe_center* center, rabe_artifact** out) {
  return guarded([&] {
    require(center, "center");
    require(out, "out");
    const auto& pp = center->state.pp();
    *out = new rabe_artifact{rabe::make_envelope(ArtifactKind::kPublicParams, pp, rabe::encode_public_params(pp)), pp};
    return RABE_OK;
  });
}

rabe_status rabe_center_describe(const rabe_center* center, char** out) {
  return guarded([&] {
    require(center, "center");
    require(out, "out");
    const auto& s = center->state;
    std::ostringstream os;
    os << "backend: " << rabe::backend_name(s.pp().context().backend()) << "\n";
    os << "N: " << s.pp().limits().max_users << " (tree capacity " << s.tree().capacity() << ")\n";
    os << "T: " << s.pp().limits().max_time << "\n";
    os << "n: " << s.pp().limits().max_attributes << "\n";
    os << "epoch: " << s.epoch() << "\n";
    os << "params-hash: " << rabe::params_hash(s.pp()) << "\n";
    os << "seeded: " << (s.seed() ? "yes" : "no") << "\n";
    for (const auto& [id, leaf] : s.tree().assignments()) {
      os << "user " << id << " leaf " << leaf;
      if (auto e = s.rl().epoch_of(id)) os << " revoked at " << *e;
      os << "\n";
    }
    *out = dup_string(os.str());
    return RABE_OK;
  });
}

rabe_status rabe_center_keygen(rabe_center* center, const char* id, const char* policy, rabe_artifact** out) {
  return guarded([&] {
    require(center, "center");
    require(id, "id");
    require(policy, "policy");
    require(out, "out");
    const auto& pp = center->state.pp();
    auto parsed = rabe::parse_policy(policy, pp.context().scalar_field());
    auto sk = center->state.keygen(id, parsed);
    *out = new_artifact(ArtifactKind::kPrivateKey, pp, rabe::encode_private_key(sk));
    return RABE_OK;
  });
}

rabe_status rabe_center_update_key(rabe_center* center, uint64_t epoch, rabe_artifact** out) {
  return guarded([&] {
    require(center, "center");
    require(out, "out");
    auto ku = center->state.update_key(epoch);
    *out = new_artifact(ArtifactKind::kKeyUpdate, center->state.pp(), rabe::encode_key_update(ku));
    return RABE_OK;
  });
}

rabe_status rabe_center_revoke(rabe_center* center, const char* id, uint64_t epoch) {
  return guarded([&] {
    require(center, "center");
    require(id, "id");
    center->state.revoke(id, epoch);
    return RABE_OK;
  });
}

rabe_status rabe_artifact_load(const char* path, rabe_artifact** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new rabe_artifact{rabe::envelope_from_text(read_file(path)), std::nullopt};
    return RABE_OK;
  });
}

rabe_status rabe_artifact_parse(const char* text, rabe_artifact** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new rabe_artifact{rabe::envelope_from_text(text), std::nullopt};
    return RABE_OK;
  });
}

rabe_status rabe_artifact_save(const rabe_artifact* artifact, const char* path) {
  return guarded([&] {
    require(artifact, "artifact");
    require(path, "path");
    write_file(path, rabe::envelope_to_text(artifact->env));
    return RABE_OK;
  });
}

rabe_status rabe_artifact_to_text(const rabe_artifact* artifact, char** out) {
  return guarded([&] {
    require(artifact, "artifact");
    require(out, "out");
    *out = dup_string(rabe::envelope_to_text(artifact->env));
    return RABE_OK;
  });
}

const char* rabe_artifact_kind(const rabe_artifact* artifact) {
  if (!artifact) return "none";
  return rabe::kind_name(artifact->env.kind).data();
}

rabe_status rabe_artifact_describe(const rabe_artifact* artifact, const rabe_artifact* pp, char** out) {
  return guarded([&] {
    require(artifact, "artifact");
    require(out, "out");
    *out = dup_string(describe(artifact, pp));
    return RABE_OK;
  });
}

void rabe_artifact_free(rabe_artifact* artifact) { delete artifact; }

rabe_status rabe_random_message(const rabe_artifact* pp_artifact, rabe_rng* rng, rabe_artifact** out) {
  return guarded([&] {
    require(rng, "rng");
    require(out, "out");
    const auto& pp = public_params(pp_artifact);
    *out = new_artifact(ArtifactKind::kMessage, pp, rabe::encode_message(rabe::random_message(pp, *rng->rng)));
    return RABE_OK;
  });
}

rabe_status rabe_encrypt(const rabe_artifact* pp_artifact, const char* attrs, uint64_t epoch,
                         const rabe_artifact* message, rabe_rng* rng, rabe_artifact** out) {
  return guarded([&] {
    require(attrs, "attrs");
    require(rng, "rng");
    require(out, "out");
    const auto& pp = public_params(pp_artifact);
    auto m = rabe::decode_message(payload_of(message, ArtifactKind::kMessage, pp, "message"), pp);
    auto ct = rabe::encrypt(rabe::parse_attributes(attrs), epoch, m, pp, *rng->rng);
    *out = new_artifact(ArtifactKind::kOriginalCiphertext, pp, rabe::encode_original_ciphertext(ct));
    return RABE_OK;
  });
}

rabe_status rabe_update_ct(const rabe_artifact* pp_artifact, const rabe_artifact* ct_original, uint64_t new_epoch,
                           rabe_rng* rng, rabe_artifact** out) {
  return guarded([&] {
    require(rng, "rng");
    require(out, "out");
    const auto& pp = public_params(pp_artifact);
    auto ct = rabe::decode_original_ciphertext(
        payload_of(ct_original, ArtifactKind::kOriginalCiphertext, pp, "ciphertext"), pp);
    pp.check_operational_epoch(new_epoch);
    auto updated = rabe::update_ct(ct, new_epoch, pp, *rng->rng);
    if (!updated) {
      g_last_error = "epoch " + std::to_string(new_epoch) + " precedes the ciphertext epoch " +
                     std::to_string(ct.epoch);
      *out = nullptr;
      return RABE_BOTTOM;
    }
    *out = new_artifact(ArtifactKind::kUpdatedCiphertext, pp, rabe::encode_updated_ciphertext(*updated));
    return RABE_OK;
  });
}

rabe_status rabe_derive_dk(const rabe_artifact* pp_artifact, const rabe_artifact* sk, const rabe_artifact* ku,
                           rabe_artifact** out) {
  return guarded([&] {
    require(out, "out");
    const auto& pp = public_params(pp_artifact);
    auto key = rabe::decode_private_key(payload_of(sk, ArtifactKind::kPrivateKey, pp, "private key"), pp);
    auto update = rabe::decode_key_update(payload_of(ku, ArtifactKind::kKeyUpdate, pp, "key update"), pp);
    auto dk = rabe::derive_dk(key, update);
    if (!dk) {
      g_last_error = "'" + key.id + "' has no node in the key update for epoch " + std::to_string(update.epoch) +
                     " (revoked)";
      *out = nullptr;
      return RABE_BOTTOM;
    }
    *out = new_artifact(ArtifactKind::kDecryptionKey, pp, rabe::encode_decryption_key(*dk));
    return RABE_OK;
  });
}

rabe_status rabe_decrypt(const rabe_artifact* pp_artifact, const rabe_artifact* ct_updated, const rabe_artifact* dk,
                         rabe_artifact** message_out) {
  return guarded([&] {
    require(message_out, "out");
    const auto& pp = public_params(pp_artifact);
    auto ct = rabe::decode_updated_ciphertext(
        payload_of(ct_updated, ArtifactKind::kUpdatedCiphertext, pp, "ciphertext"), pp);
    auto key = rabe::decode_decryption_key(payload_of(dk, ArtifactKind::kDecryptionKey, pp, "decryption key"), pp);
    auto m = rabe::decrypt(ct, key, pp);
    *message_out = new_artifact(ArtifactKind::kMessage, pp, rabe::encode_message(m));
    return RABE_OK;
  });
}

rabe_status rabe_message_hex(const rabe_artifact* pp_artifact, const rabe_artifact* message, char** out) {
  return guarded([&] {
    require(out, "out");
    const auto& pp = public_params(pp_artifact);
    auto m = rabe::decode_message(payload_of(message, ArtifactKind::kMessage, pp, "message"), pp);
    *out = dup_string(rabe::hex_encode(m.encode()));
    return RABE_OK;
  });
}

rabe_status rabe_message_equal(const rabe_artifact* pp_artifact, const rabe_artifact* a, const rabe_artifact* b,
                               int* equal) {
  return guarded([&] {
    require(equal, "equal");
    const auto& pp = public_params(pp_artifact);
    auto ma = rabe::decode_message(payload_of(a, ArtifactKind::kMessage, pp, "message"), pp);
    auto mb = rabe::decode_message(payload_of(b, ArtifactKind::kMessage, pp, "message"), pp);
    *equal = ma == mb ? 1 : 0;
    return RABE_OK;
  });
}

void rabe_attack_options_default(rabe_attack_options* o) {
  if (!o) return;
  *o = rabe_attack_options{};
  o->backend = "transparent";
  o->max_users = 8;
  o->max_time = 32;
  o->max_attributes = 4;
  o->trials = 10;
  o->threads = 1;
}

rabe_status rabe_attack_demo(const rabe_attack_options* options, char** narrative, char** table, char** json,
                             uint32_t* wins) {
  return guarded([&] {
    require(options, "options");
    auto params = game_params(options);
    auto seed = master_seed(options);
    auto transcripts = run_demo(options, params, seed);
    auto report = rabe::advantage_report(transcripts);
    for (const auto& t : transcripts) {
      auto check = rabe::validate_transcript(t);
      if (!check.ok) throw Error(ErrorCode::kConstraintViolation, "transcript failed validation: " + check.problems[0]);
    }
    if (narrative) {
      std::string s;
      const auto& first = transcripts.front();
      s += "trial 0: S* = {" + rabe::format_attributes(first.challenge_attrs) +
           "}, t* = " + std::to_string(first.challenge_epoch) + ", b = " + std::to_string(first.bit) + "\n";
      for (const auto& line : first.narrative) s += "  " + line + "\n";
      if (first.aborted) s += "  aborted: " + first.abort_reason + "\n";
      s += std::string("  outcome: ") + (first.win ? "win" : "loss") + "\n";
      *narrative = dup_string(s);
    }
    if (table) *table = dup_string(rabe::report_to_table(report, params));
    if (json) *json = dup_string(rabe::report_to_json(report, params, rabe::hex_encode(seed)));
    if (wins) *wins = static_cast<uint32_t>(report.wins);
    return RABE_OK;
  });
}

rabe_status rabe_attack_transcripts(const rabe_attack_options* options, char** text) {
  return guarded([&] {
    require(options, "options");
    require(text, "text");
    auto params = game_params(options);
    auto transcripts = run_demo(options, params, master_seed(options));
    std::string out;
    for (const auto& t : transcripts) {
      std::string body = rabe::transcript_to_json(t);
      rabe::Envelope env{ArtifactKind::kTranscript, rabe::kFormatVersion, t.backend, t.params_hash,
                         std::vector<std::uint8_t>(body.begin(), body.end())};
      out += rabe::envelope_to_text(env);
    }
    *text = dup_string(out);
    return RABE_OK;
  });
}

rabe_status rabe_lemma_check(unsigned tau_min, unsigned tau_max, char** table, int* all_hold) {
  return guarded([&] {
    if (tau_min < 2 || tau_min > tau_max) throw Error(ErrorCode::kInvalidArgument, "need 2 <= tau-min <= tau-max");
    if (tau_max > rabe::kMaxCensusTau) {
      throw Error(ErrorCode::kBudgetExceeded, "tau-max " + std::to_string(tau_max) + " exceeds the budget of " +
                                                  std::to_string(rabe::kMaxCensusTau));
    }
    bool ok = true;
    std::string t = lemma_table(tau_min, tau_max, ok);
    if (table) *table = dup_string(t);
    if (all_hold) *all_hold = ok ? 1 : 0;
    return RABE_OK;
  });
}

}  // extern "C"
