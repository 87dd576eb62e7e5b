#include "rabe/center.hpp"

#include <algorithm>

#include "rabe/error.hpp"

namespace rabe {

std::unique_ptr<Rng> make_rng(const std::optional<std::vector<std::uint8_t>>& seed, std::uint64_t counter) {
  if (!seed) return std::make_unique<SystemRng>();
  std::vector<std::uint8_t> material = *seed;
  auto c = seed_bytes(counter);
  material.insert(material.end(), c.begin(), c.end());
  return std::make_unique<SeededRng>(material);
}

CenterState CenterState::create(Backend backend, const SchemeLimits& limits,
                                std::optional<std::vector<std::uint8_t>> seed) {
  limits.validate();
  std::vector<std::uint8_t> context_seed = seed.value_or(std::vector<std::uint8_t>{});
  if (!seed && backend == Backend::kTransparent) {
    context_seed.resize(32);
    SystemRng().fill(context_seed);
  }
  auto ctx = BilinearContext::create(backend, context_seed);
  auto rng = make_rng(seed, 0);
  auto result = rabe::setup(ctx, limits, *rng);
  CenterState state(std::move(result.pp), std::move(result.mk), std::move(result.state), std::move(result.rl));
  state.seed_ = std::move(seed);
  state.op_counter_ = 1;
  return state;
}

std::unique_ptr<Rng> CenterState::next_rng() { return make_rng(seed_, op_counter_++); }

PrivateKey CenterState::keygen(const Identity& id, const AccessPolicy& policy) {
  if (id.empty()) throw Error(ErrorCode::kInvalidArgument, "identity must not be empty");
  auto rng = next_rng();
  return gen_key(id, policy, mk_, tree_, pp_, *rng);
}

KeyUpdate CenterState::update_key(std::uint64_t t) {
  pp_.check_operational_epoch(t);
  auto rng = next_rng();
  KeyUpdate ku = rabe::update_key(t, rl_, mk_, tree_, pp_, *rng);
  epoch_ = std::max(epoch_, t);
  return ku;
}

void CenterState::revoke(const Identity& id, std::uint64_t t) {
  rabe::revoke(id, t, rl_, tree_, pp_);
  epoch_ = std::max(epoch_, t);
}

std::vector<std::uint8_t> CenterState::encode() const {
  ByteWriter w;
  w.bytes(encode_public_params(pp_));
  w.scalar(mk_.alpha);
  w.u64(tree_.capacity());
  w.u32(static_cast<std::uint32_t>(tree_.assignments().size()));
  for (const auto& [id, leaf] : tree_.assignments()) {
    w.string(id);
    w.u64(leaf);
  }
  w.u32(static_cast<std::uint32_t>(tree_.node_secrets().size()));
  for (const auto& [node, secret] : tree_.node_secrets()) {
    w.u64(node);
    w.scalar(secret);
  }
  w.u32(static_cast<std::uint32_t>(rl_.entries().size()));
  for (const auto& [id, epoch] : rl_.entries()) {
    w.string(id);
    w.u64(epoch);
  }
  w.u64(epoch_);
  w.u8(seed_ ? 1 : 0);
  if (seed_) w.bytes(*seed_);
  w.u64(op_counter_);
  return w.take();
}

CenterState CenterState::decode(std::span<const std::uint8_t> payload) {
  ByteReader r(payload);
  PublicParams pp = decode_public_params(r.bytes());
  const auto& ctx = pp.context();
  MasterKey mk{r.scalar(ctx)};
  if (!(ctx.generator(Side::kSourceOne).pow(mk.alpha) == pp.g1())) {
    throw Error(ErrorCode::kDecode, "master key does not match g1");
  }
  std::uint64_t capacity = r.u64();
  if (capacity != TreeState(pp.limits().max_users).capacity()) {
    throw Error(ErrorCode::kDecode, "tree capacity does not match the public parameters");
  }
  std::map<Identity, NodeId> assignments;
  for (std::uint32_t i = 0, n = r.count(); i < n; ++i) {
    std::string id = r.string();
    if (!assignments.emplace(std::move(id), r.u64()).second) throw Error(ErrorCode::kDecode, "repeated identity");
  }
  std::map<NodeId, Scalar> secrets;
  for (std::uint32_t i = 0, n = r.count(); i < n; ++i) {
    NodeId node = r.u64();
    if (!secrets.emplace(node, r.scalar(ctx)).second) throw Error(ErrorCode::kDecode, "repeated node secret");
  }
  TreeState tree = TreeState::restore(capacity, std::move(assignments), std::move(secrets));
  RevocationList rl;
  for (std::uint32_t i = 0, n = r.count(); i < n; ++i) {
    std::string id = r.string();
    std::uint64_t epoch = r.u64();
    if (!tree.leaf_of(id) || rl.epoch_of(id) || epoch < 1 || epoch >= pp.limits().max_time) {
      throw Error(ErrorCode::kDecode, "invalid revocation entry");
    }
    rl.add(id, epoch);
  }
  CenterState state(std::move(pp), std::move(mk), std::move(tree), std::move(rl));
  state.epoch_ = r.u64();
  std::uint8_t has_seed = r.u8();
  if (has_seed > 1) throw Error(ErrorCode::kDecode, "invalid seed flag");
  if (has_seed) state.seed_ = r.bytes();
  state.op_counter_ = r.u64();
  r.expect_end();
  return state;
}

}  // namespace rabe
