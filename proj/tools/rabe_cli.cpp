// rabe: trusted center, data owner, cloud server and user operations on
// envelope files, plus the outdate-attack and encoding demonstrations.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rabe/rabe.h"

namespace {

enum Exit { kOk = 0, kMismatch = 1, kBottom = 2, kValidation = 3, kIo = 4 };

struct Failure {
  int code;
};

int exit_code(rabe_status s) {
  switch (s) {
    case RABE_OK: return kOk;
    case RABE_BOTTOM: return kBottom;
    case RABE_ERR_IO: return kIo;
    default: return kValidation;
  }
}

void check(rabe_status s, const std::string& what) {
  if (s == RABE_OK) return;
  if (s == RABE_BOTTOM) {
    std::cout << "bottom: " << rabe_last_error() << "\n";
  } else {
    std::cerr << "error: " << what << ": " << rabe_last_error() << " [" << rabe_status_name(s) << "]\n";
  }
  throw Failure{exit_code(s)};
}

struct ArtifactDeleter {
  void operator()(rabe_artifact* a) const { rabe_artifact_free(a); }
};
struct CenterDeleter {
  void operator()(rabe_center* c) const { rabe_center_free(c); }
};
struct RngDeleter {
  void operator()(rabe_rng* r) const { rabe_rng_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { rabe_string_free(s); }
};
using Artifact = std::unique_ptr<rabe_artifact, ArtifactDeleter>;
using Center = std::unique_ptr<rabe_center, CenterDeleter>;
using RngHandle = std::unique_ptr<rabe_rng, RngDeleter>;
using CString = std::unique_ptr<char, StringDeleter>;

Artifact load(const std::string& path, const char* what) {
  rabe_artifact* a = nullptr;
  check(rabe_artifact_load(path.c_str(), &a), std::string("loading ") + what);
  return Artifact(a);
}

void save(const rabe_artifact* a, const std::string& path) {
  check(rabe_artifact_save(a, path.c_str()), "writing " + path);
  std::cout << "wrote " << rabe_artifact_kind(a) << " to " << path << "\n";
}

Center load_center(const std::string& path) {
  rabe_center* c = nullptr;
  check(rabe_center_load(path.c_str(), &c), "loading center state");
  return Center(c);
}

void save_center(const rabe_center* c, const std::string& path) {
  check(rabe_center_save(c, path.c_str()), "writing " + path);
}

// Seeded generator for one subcommand, so seeded invocations reproduce.
RngHandle make_rng(const std::optional<std::string>& seed, const std::string& purpose) {
  rabe_rng* r = nullptr;
  if (seed) {
    std::string material = *seed + "/" + purpose;
    check(rabe_rng_new_seeded(reinterpret_cast<const uint8_t*>(material.data()), material.size(), &r), "rng");
  } else {
    check(rabe_rng_new_system(&r), "rng");
  }
  return RngHandle(r);
}

std::string take(char* s) {
  CString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    throw Failure{kIo};
  }
}

struct Options {
  std::optional<std::string> seed;
  std::string state = "center.rabe";
  std::string pp = "pp.rabe";
  std::string backend = "transparent";
  uint64_t users = 8;
  uint64_t max_time = 32;
  uint32_t attributes = 4;
  uint64_t epoch = 0;
  std::string id;
  std::string policy;
  std::string attrs;
  std::string out;
  std::string sk, ku, ct, dk;
  std::string message;
  std::string new_message;
  std::string expect;
  // attack-demo
  uint64_t t = 0;
  uint64_t t_star = 0;
  uint32_t trials = 10;
  bool weaker = false;
  bool null_adversary = false;
  unsigned threads = 1;
  std::string json_out;
  std::string transcripts_out;
  bool from_state = false;
  // lemma-check
  unsigned tau_min = 2;
  unsigned tau_max = 10;
  // show
  std::string file;
};

const uint8_t* seed_data(const std::optional<std::string>& s) {
  return s ? reinterpret_cast<const uint8_t*>(s->data()) : nullptr;
}

int cmd_setup(const Options& o) {
  rabe_center* raw = nullptr;
  check(rabe_center_setup(o.backend.c_str(), o.users, o.max_time, o.attributes, seed_data(o.seed),
                          o.seed ? o.seed->size() : 0, &raw),
        "setup");
  Center c(raw);
  save_center(c.get(), o.state);
  std::cout << "wrote center state to " << o.state << "\n";
  rabe_artifact* pp = nullptr;
  check(rabe_center_public_params(c.get(), &pp), "public parameters");
  Artifact owned(pp);
  save(pp, o.pp);
  return kOk;
}

int cmd_keygen(const Options& o) {
  Center c = load_center(o.state);
  rabe_artifact* sk = nullptr;
  check(rabe_center_keygen(c.get(), o.id.c_str(), o.policy.c_str(), &sk), "keygen");
  Artifact owned(sk);
  save_center(c.get(), o.state);
  save(sk, o.out);
  return kOk;
}

int cmd_update_key(const Options& o) {
  Center c = load_center(o.state);
  rabe_artifact* ku = nullptr;
  check(rabe_center_update_key(c.get(), o.epoch, &ku), "update-key");
  Artifact owned(ku);
  save_center(c.get(), o.state);
  save(ku, o.out);
  return kOk;
}

int cmd_revoke(const Options& o) {
  Center c = load_center(o.state);
  check(rabe_center_revoke(c.get(), o.id.c_str(), o.epoch), "revoke");
  save_center(c.get(), o.state);
  std::cout << "revoked '" << o.id << "' at epoch " << o.epoch << "\n";
  return kOk;
}

int cmd_encrypt(const Options& o) {
  Artifact pp = load(o.pp, "public parameters");
  RngHandle rng = make_rng(o.seed, "encrypt");
  Artifact m;
  if (o.message.empty() && o.new_message.empty()) {
    std::cerr << "error: encrypt needs --message or --new-message\n";
    throw Failure{kValidation};
  }
  if (!o.message.empty()) {
    m = load(o.message, "message");
  } else {
    rabe_artifact* fresh = nullptr;
    check(rabe_random_message(pp.get(), rng.get(), &fresh), "random message");
    m.reset(fresh);
    save(fresh, o.new_message);
  }
  rabe_artifact* ct = nullptr;
  check(rabe_encrypt(pp.get(), o.attrs.c_str(), o.epoch, m.get(), rng.get(), &ct), "encrypt");
  Artifact owned(ct);
  save(ct, o.out);
  return kOk;
}

int cmd_update_ct(const Options& o) {
  Artifact pp = load(o.pp, "public parameters");
  Artifact ct = load(o.ct, "ciphertext");
  RngHandle rng = make_rng(o.seed, "update-ct");
  rabe_artifact* updated = nullptr;
  check(rabe_update_ct(pp.get(), ct.get(), o.epoch, rng.get(), &updated), "update-ct");
  Artifact owned(updated);
  save(updated, o.out);
  return kOk;
}

int cmd_derive_dk(const Options& o) {
  Artifact pp = load(o.pp, "public parameters");
  Artifact sk = load(o.sk, "private key");
  Artifact ku = load(o.ku, "key update");
  rabe_artifact* dk = nullptr;
  check(rabe_derive_dk(pp.get(), sk.get(), ku.get(), &dk), "derive-dk");
  Artifact owned(dk);
  save(dk, o.out);
  return kOk;
}

int cmd_decrypt(const Options& o) {
  Artifact pp = load(o.pp, "public parameters");
  Artifact ct = load(o.ct, "ciphertext");
  Artifact dk = load(o.dk, "decryption key");
  rabe_artifact* m = nullptr;
  check(rabe_decrypt(pp.get(), ct.get(), dk.get(), &m), "decrypt");
  Artifact owned(m);
  char* hex = nullptr;
  check(rabe_message_hex(pp.get(), m, &hex), "message");
  std::cout << "message: " << take(hex) << "\n";
  if (!o.out.empty()) save(m, o.out);
  if (o.expect.empty()) return kOk;
  Artifact expected = load(o.expect, "expected message");
  int equal = 0;
  check(rabe_message_equal(pp.get(), m, expected.get(), &equal), "compare");
  std::cout << (equal ? "MATCH" : "MISMATCH") << "\n";
  return equal ? kOk : kMismatch;
}

int cmd_attack_demo(const Options& o) {
  rabe_attack_options a;
  rabe_attack_options_default(&a);
  std::string backend = o.backend;
  a.max_users = o.users;
  a.max_time = o.max_time;
  a.max_attributes = o.attributes;
  if (o.from_state) {
    // Reuse the parameter shape of an existing deployment; the game runs its own setup.
    Center c = load_center(o.state);
    char* text = nullptr;
    check(rabe_center_describe(c.get(), &text), "describe");
    std::istringstream in(take(text));
    std::string line;
    while (std::getline(in, line)) {
      auto value = line.substr(line.find(':') + 1);
      if (line.rfind("backend:", 0) == 0) backend = value.substr(1);
      if (line.rfind("N:", 0) == 0) a.max_users = std::stoull(value);
      if (line.rfind("T:", 0) == 0) a.max_time = std::stoull(value);
      if (line.rfind("n:", 0) == 0) a.max_attributes = static_cast<uint32_t>(std::stoul(value));
    }
  }
  a.backend = backend.c_str();
  a.t = o.t;
  a.t_star = o.t_star;
  a.trials = o.trials;
  a.weaker_model = o.weaker;
  a.null_adversary = o.null_adversary;
  a.threads = o.threads;
  a.seed = seed_data(o.seed);
  a.seed_len = o.seed ? o.seed->size() : 0;

  char *narrative = nullptr, *table = nullptr, *json = nullptr;
  uint32_t wins = 0;
  check(rabe_attack_demo(&a, &narrative, &table, &json, &wins), "attack-demo");
  std::cout << take(narrative) << "\n" << take(table);
  std::string json_text = take(json);
  if (!o.json_out.empty()) {
    write_text(o.json_out, json_text + "\n");
    std::cout << "wrote report to " << o.json_out << "\n";
  }
  if (!o.transcripts_out.empty()) {
    char* text = nullptr;
    check(rabe_attack_transcripts(&a, &text), "transcripts");
    write_text(o.transcripts_out, take(text));
    std::cout << "wrote transcripts to " << o.transcripts_out << "\n";
  }
  return kOk;
}

int cmd_lemma_check(const Options& o) {
  char* table = nullptr;
  int all_hold = 0;
  check(rabe_lemma_check(o.tau_min, o.tau_max, &table, &all_hold), "lemma-check");
  std::cout << take(table);
  return all_hold ? kOk : kValidation;
}

int cmd_show(const Options& o) {
  Artifact a = load(o.file, "artifact");
  Artifact pp;
  if (std::string(rabe_artifact_kind(a.get())) != "pp") pp = load(o.pp, "public parameters");
  char* text = nullptr;
  check(rabe_artifact_describe(a.get(), pp.get(), &text), "describe");
  std::cout << take(text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Revocable attribute-based encryption toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  if (const char* env = std::getenv("RABE_SEED"); env && *env) o.seed = env;

  app.add_option_function<std::string>(
      "--seed", [&](const std::string& s) { o.seed = s; },
      "Seed string for reproducible runs (default: $RABE_SEED, else OS randomness)");

  auto backend_opt = [&](CLI::App* sub) {
    sub->add_option("--backend", o.backend, "Group backend")
        ->check(CLI::IsMember({"real", "transparent"}))
        ->capture_default_str();
  };
  auto limits = [&](CLI::App* sub) {
    sub->add_option("--users,-N", o.users, "Maximum number of users")->capture_default_str();
    sub->add_option("--max-time,-T", o.max_time, "Number of epochs (power of two)")->capture_default_str();
    sub->add_option("--attributes,-n", o.attributes, "Attribute universe size")->capture_default_str();
  };
  auto state = [&](CLI::App* sub) { sub->add_option("--state", o.state, "Center state file")->capture_default_str(); };
  auto pp = [&](CLI::App* sub) { sub->add_option("--pp", o.pp, "Public parameters file")->capture_default_str(); };
  auto epoch = [&](CLI::App* sub) { sub->add_option("--epoch", o.epoch, "Epoch")->required(); };
  auto out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Output file")->required(); };

  auto* setup = app.add_subcommand("setup", "Create a trusted center and publish parameters");
  state(setup);
  pp(setup);
  backend_opt(setup);
  limits(setup);

  auto* keygen = app.add_subcommand("keygen", "Issue a private key for an identity and policy");
  state(keygen);
  keygen->add_option("--id", o.id, "User identity")->required();
  keygen->add_option("--policy", o.policy, "Access policy, e.g. \"1 AND (2 OR 3)\"")->required();
  out(keygen);

  auto* update_key = app.add_subcommand("update-key", "Broadcast the key update for an epoch");
  state(update_key);
  epoch(update_key);
  out(update_key);

  auto* revoke = app.add_subcommand("revoke", "Revoke an identity from an epoch on");
  state(revoke);
  revoke->add_option("--id", o.id, "User identity")->required();
  epoch(revoke);

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a message under attributes and an epoch");
  pp(encrypt);
  encrypt->add_option("--attrs", o.attrs, "Attribute set, e.g. 1,2")->required();
  epoch(encrypt);
  auto* msg_in = encrypt->add_option("--message", o.message, "Message file to encrypt")->check(CLI::ExistingFile);
  auto* msg_new = encrypt->add_option("--new-message", o.new_message, "Draw a random message and write it here");
  msg_in->excludes(msg_new);
  out(encrypt);

  auto* update_ct = app.add_subcommand("update-ct", "Update an original ciphertext to an epoch");
  pp(update_ct);
  update_ct->add_option("--ct", o.ct, "Original ciphertext")->required();
  epoch(update_ct);
  out(update_ct);

  auto* derive_dk = app.add_subcommand("derive-dk", "Combine a private key with a key update");
  pp(derive_dk);
  derive_dk->add_option("--sk", o.sk, "Private key")->required();
  derive_dk->add_option("--ku", o.ku, "Key update")->required();
  out(derive_dk);

  auto* decrypt = app.add_subcommand("decrypt", "Decrypt an updated ciphertext");
  pp(decrypt);
  decrypt->add_option("--ct", o.ct, "Updated ciphertext")->required();
  decrypt->add_option("--dk", o.dk, "Decryption key")->required();
  decrypt->add_option("--expect", o.expect, "Expected message file; prints MATCH or MISMATCH");
  decrypt->add_option("--out", o.out, "Write the recovered message here");

  auto* attack = app.add_subcommand("attack-demo", "Run the ciphertext outdate attack in the security game");
  backend_opt(attack);
  limits(attack);
  attack->add_option("--state", o.state, "Take backend and sizes from a center state file")
      ->each([&](const std::string&) { o.from_state = true; });
  attack->add_option("--t", o.t, "Epoch of the harvested decryption key (0: automatic)");
  attack->add_option("--t-star", o.t_star, "Challenge epoch (0: automatic)");
  attack->add_option("--trials", o.trials, "Number of games")->capture_default_str();
  attack->add_flag("--weaker-model", o.weaker, "Withhold keys whose policy satisfies the challenge set");
  attack->add_flag("--null-adversary", o.null_adversary, "Random guessing instead of the attack");
  attack->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
  attack->add_option("--json", o.json_out, "Write the report as JSON");
  attack->add_option("--transcripts", o.transcripts_out, "Write per-trial transcripts");

  auto* lemma = app.add_subcommand("lemma-check", "Enumerate vulnerable epoch pairs");
  lemma->add_option("--tau-min", o.tau_min, "Smallest tau")->capture_default_str();
  lemma->add_option("--tau-max", o.tau_max, "Largest tau (at most 16)")->capture_default_str();

  auto* show = app.add_subcommand("show", "Describe an artifact file");
  show->add_option("file", o.file, "Artifact file")->required();
  pp(show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "setup") return cmd_setup(o);
    if (name == "keygen") return cmd_keygen(o);
    if (name == "update-key") return cmd_update_key(o);
    if (name == "revoke") return cmd_revoke(o);
    if (name == "encrypt") return cmd_encrypt(o);
    if (name == "update-ct") return cmd_update_ct(o);
    if (name == "derive-dk") return cmd_derive_dk(o);
    if (name == "decrypt") return cmd_decrypt(o);
    if (name == "attack-demo") return cmd_attack_demo(o);
    if (name == "lemma-check") return cmd_lemma_check(o);
    if (name == "show") return cmd_show(o);
  } catch (const Failure& f) {
    return f.code;
  }
  return kValidation;
}
