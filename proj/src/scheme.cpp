#include "rabe/scheme.hpp"

#include <utility>

#include "rabe/error.hpp"

namespace rabe {
namespace {

MirroredElement mirrored(const BilinearContext& ctx, const Scalar& exponent) {
  return {ctx.generator(Side::kSourceOne).pow(exponent), ctx.generator(Side::kSourceTwo).pow(exponent)};
}

void check_element(const GroupElement& e, const BilinearContext& ctx, Side side, const char* what) {
  if (e.backend() != ctx.backend()) throw Error(ErrorCode::kBackendMismatch, std::string(what) + ": wrong backend");
  if (e.side() != side) throw Error(ErrorCode::kSideMismatch, std::string(what) + ": wrong group");
}

void check_mirrored(const MirroredElement& m, const BilinearContext& ctx, const char* what) {
  check_element(m.one, ctx, Side::kSourceOne, what);
  check_element(m.two, ctx, Side::kSourceTwo, what);
}

// U0 prod_{j in zeros} U_j on one side.
GroupElement u_product(const PublicParams& pp, const ZeroIndexSet& zeros, Side side) {
  GroupElement acc = pp.u0().on(side);
  for (std::size_t j : zeros.positions()) acc *= pp.u(j).on(side);
  return acc;
}

void check_attributes(const AttributeSet& attrs, const PublicParams& pp) {
  if (attrs.empty()) throw Error(ErrorCode::kInvalidArgument, "attribute set is empty");
  for (Attribute a : attrs) {
    if (a < 1 || a > pp.limits().max_attributes) {
      throw Error(ErrorCode::kOutOfRange, "attribute " + std::to_string(a) + " outside [1, " +
                                              std::to_string(pp.limits().max_attributes) + "]");
    }
  }
}

}  // namespace

const GroupElement& MirroredElement::on(Side side) const {
  if (side == Side::kSourceOne) return one;
  if (side == Side::kSourceTwo) return two;
  throw Error(ErrorCode::kSideMismatch, "mirrored generators live in the source groups");
}

void SchemeLimits::validate() const {
  if (max_users < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one user");
  if (max_users > (std::uint64_t{1} << 20)) throw Error(ErrorCode::kInvalidArgument, "too many users");
  if (!is_valid_max_time(max_time)) {
    throw Error(ErrorCode::kInvalidArgument, "max time must be a power of two >= 4, got " + std::to_string(max_time));
  }
  if (max_time > (std::uint64_t{1} << 32)) throw Error(ErrorCode::kInvalidArgument, "max time too large");
  if (max_attributes < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one attribute");
  if (max_attributes > 1024) throw Error(ErrorCode::kInvalidArgument, "too many attributes");
}

PublicParams::PublicParams(BilinearContext context, SchemeLimits limits, GroupElement g1, MirroredElement g2,
                           std::vector<MirroredElement> t_gens, MirroredElement u0,
                           std::vector<MirroredElement> u_gens)
    : context_(std::move(context)),
      limits_(limits),
      g1_(std::move(g1)),
      g2_(std::move(g2)),
      t_gens_(std::move(t_gens)),
      u0_(std::move(u0)),
      u_gens_(std::move(u_gens)),
      blinding_base_(pair(g1_, g2_.two)) {
  limits_.validate();
  check_element(g1_, context_, Side::kSourceOne, "g1");
  check_mirrored(g2_, context_, "g2");
  check_mirrored(u0_, context_, "U0");
  if (t_gens_.size() != limits_.max_attributes + 1) throw Error(ErrorCode::kDecode, "expected n + 1 T generators");
  if (u_gens_.size() != limits_.time_bits()) throw Error(ErrorCode::kDecode, "expected log2(T) U generators");
  for (const auto& t : t_gens_) check_mirrored(t, context_, "T_i");
  for (const auto& u : u_gens_) check_mirrored(u, context_, "U_j");
  attribute_points_.reserve(limits_.max_attributes);
  for (Attribute x = 1; x <= limits_.max_attributes; ++x) {
    Scalar sx = context_.scalar(x);
    attribute_points_.push_back({eval_t(sx, Side::kSourceOne, *this), eval_t(sx, Side::kSourceTwo, *this)});
  }
}

const GroupElement& PublicParams::attribute_point(Attribute x, Side side) const {
  if (x < 1 || x > limits_.max_attributes) {
    throw Error(ErrorCode::kOutOfRange, "attribute " + std::to_string(x) + " outside [1, " +
                                            std::to_string(limits_.max_attributes) + "]");
  }
  return attribute_points_[x - 1].on(side);
}

void PublicParams::check_operational_epoch(std::uint64_t t) const {
  if (t < 1 || t >= limits_.max_time) {
    throw Error(ErrorCode::kOutOfRange,
                "epoch " + std::to_string(t) + " outside [1, " + std::to_string(limits_.max_time - 1) + "]");
  }
}

bool PublicParams::operator==(const PublicParams& o) const {
  auto same = [](const MirroredElement& a, const MirroredElement& b) { return a.one == b.one && a.two == b.two; };
  auto same_all = [&](const std::vector<MirroredElement>& a, const std::vector<MirroredElement>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!same(a[i], b[i])) return false;
    }
    return true;
  };
  return context_ == o.context_ && limits_ == o.limits_ && g1_ == o.g1_ && same(g2_, o.g2_) &&
         same_all(t_gens_, o.t_gens_) && same(u0_, o.u0_) && same_all(u_gens_, o.u_gens_);
}

SetupResult setup(const BilinearContext& ctx, const SchemeLimits& limits, Rng& rng) {
  limits.validate();
  Scalar alpha = ctx.random_scalar(rng);
  GroupElement g1 = ctx.generator(Side::kSourceOne).pow(alpha);
  MirroredElement g2 = mirrored(ctx, ctx.random_scalar(rng));
  std::vector<MirroredElement> t_gens;
  for (std::uint32_t i = 0; i <= limits.max_attributes; ++i) t_gens.push_back(mirrored(ctx, ctx.random_scalar(rng)));
  MirroredElement u0 = mirrored(ctx, ctx.random_scalar(rng));
  std::vector<MirroredElement> u_gens;
  for (unsigned j = 0; j < limits.time_bits(); ++j) u_gens.push_back(mirrored(ctx, ctx.random_scalar(rng)));
  PublicParams pp(ctx, limits, std::move(g1), std::move(g2), std::move(t_gens), std::move(u0), std::move(u_gens));
  return SetupResult{RevocationList{}, TreeState(limits.max_users), MasterKey{alpha}, std::move(pp)};
}

GroupElement eval_t(const Scalar& x, Side side, const PublicParams& pp) {
  const auto& ctx = pp.context();
  const std::uint32_t n = pp.limits().max_attributes;
  std::vector<Scalar> nodes;
  for (std::uint32_t i = 1; i <= n + 1; ++i) nodes.push_back(ctx.scalar(i));
  GroupElement acc = pp.g2().on(side).pow(x.pow(n));
  for (std::uint32_t i = 1; i <= n + 1; ++i) {
    acc *= pp.t_gens()[i - 1].on(side).pow(lagrange_coefficient(nodes[i - 1], nodes, x));
  }
  return acc;
}

PrivateKey gen_key(const Identity& id, const AccessPolicy& policy, const MasterKey& mk, TreeState& state,
                   const PublicParams& pp, Rng& rng) {
  const auto& ctx = pp.context();
  if (!(*policy.field() == *ctx.scalar_field())) {
    throw Error(ErrorCode::kBackendMismatch, "policy built for a different scalar field");
  }
  if (policy.max_attribute() > pp.limits().max_attributes) {
    throw Error(ErrorCode::kOutOfRange, "policy mentions attribute " + std::to_string(policy.max_attribute()) +
                                            " beyond n = " + std::to_string(pp.limits().max_attributes));
  }
  (void)mk;  // node secrets alpha_x are independent of alpha in GenKey
  NodeId leaf = state.assign_leaf(id);
  const GroupElement& g_two = ctx.generator(Side::kSourceTwo);
  PrivateKey sk{id, policy, leaf, {}};
  for (NodeId x : state.path(leaf)) {
    const Scalar& alpha_x = state.get_or_create_secret(x, ctx, rng);
    std::vector<Scalar> shares = share_secret(policy, alpha_x, rng);
    PartialPrivateKey part;
    part.rows.reserve(policy.rows());
    for (std::size_t i = 0; i < policy.rows(); ++i) {
      Scalar r = ctx.random_scalar(rng);
      part.rows.push_back({pp.g2().two.pow(shares[i]) * pp.attribute_point(policy.attribute(i), Side::kSourceTwo).pow(r),
                           g_two.pow(r)});
    }
    sk.parts.emplace(x, std::move(part));
  }
  return sk;
}

KeyUpdate update_key(std::uint64_t t, const RevocationList& rl, const MasterKey& mk, TreeState& state,
                     const PublicParams& pp, Rng& rng) {
  pp.check_operational_epoch(t);
  const auto& ctx = pp.context();
  ZeroIndexSet v_bt = zero_set(tencode(pp.epoch(t)));
  GroupElement blind = u_product(pp, v_bt, Side::kSourceTwo);
  KeyUpdate ku{t, {}};
  for (NodeId x : ku_nodes(state, rl, t)) {
    const Scalar& alpha_x = state.get_or_create_secret(x, ctx, rng);
    Scalar r = ctx.random_scalar(rng);
    ku.parts.emplace(x, KeyUpdatePart{pp.g2().two.pow(mk.alpha - alpha_x) * blind.pow(r),
                                      ctx.generator(Side::kSourceTwo).pow(r)});
  }
  return ku;
}

std::optional<DecryptionKey> derive_dk(const PrivateKey& sk, const KeyUpdate& ku) {
  for (const auto& [node, part] : sk.parts) {
    auto it = ku.parts.find(node);
    if (it != ku.parts.end()) return DecryptionKey{sk.id, ku.epoch, node, sk.policy, part, it->second};
  }
  return std::nullopt;
}

OriginalCiphertext encrypt(const AttributeSet& attrs, std::uint64_t t, const GroupElement& message,
                           const PublicParams& pp, Rng& rng) {
  pp.check_operational_epoch(t);
  check_attributes(attrs, pp);
  const auto& ctx = pp.context();
  check_element(message, ctx, Side::kTarget, "message");
  Scalar s = ctx.random_scalar(rng);
  std::map<Attribute, GroupElement> c2;
  for (Attribute x : attrs) c2.emplace(x, pp.attribute_point(x, Side::kSourceOne).pow(s));
  std::map<std::size_t, GroupElement> e2;
  ZeroIndexSet v_et = zero_set(ctencode(pp.epoch(t)));
  for (std::size_t j : v_et.positions()) e2.emplace(j, pp.u(j).one.pow(s));
  return OriginalCiphertext{attrs,
                            t,
                            pp.blinding_base().pow(s) * message,
                            ctx.generator(Side::kSourceOne).pow(s),
                            std::move(c2),
                            pp.u0().one.pow(s),
                            std::move(e2)};
}

UpdatedCiphertext fold_ciphertext(const OriginalCiphertext& ct, std::uint64_t target_epoch,
                                  const PublicParams& pp, Rng& rng) {
  pp.check_operational_epoch(target_epoch);
  const auto& ctx = pp.context();
  ZeroIndexSet v_bt = zero_set(tencode(pp.epoch(target_epoch)));
  GroupElement folded = ct.e1;
  for (std::size_t j : v_bt.positions()) {
    auto it = ct.e2.find(j);
    if (it == ct.e2.end()) {
      throw Error(ErrorCode::kMissingComponent, "ciphertext for epoch " + std::to_string(ct.epoch) +
                                                    " has no E2 component " + std::to_string(j) +
                                                    " needed for epoch " + std::to_string(target_epoch));
    }
    folded *= it->second;
  }
  Scalar s_prime = ctx.random_scalar(rng);
  std::map<Attribute, GroupElement> c2;
  for (const auto& [x, c] : ct.c2) c2.emplace(x, c * pp.attribute_point(x, Side::kSourceOne).pow(s_prime));
  return UpdatedCiphertext{ct.attrs,
                           target_epoch,
                           ct.c * pp.blinding_base().pow(s_prime),
                           ct.c1 * ctx.generator(Side::kSourceOne).pow(s_prime),
                           std::move(c2),
                           folded * u_product(pp, v_bt, Side::kSourceOne).pow(s_prime)};
}

std::optional<UpdatedCiphertext> update_ct(const OriginalCiphertext& ct, std::uint64_t t_prime,
                                           const PublicParams& pp, Rng& rng) {
  if (t_prime < ct.epoch) return std::nullopt;
  return fold_ciphertext(ct, t_prime, pp, rng);
}

DecryptionParts decrypt_parts(const UpdatedCiphertext& ct, const DecryptionKey& dk, const PublicParams& pp) {
  ReconstructionCoefficients w = reconstruct(dk.policy, ct.attrs);
  if (dk.psk.rows.size() != dk.policy.rows()) {
    throw Error(ErrorCode::kMissingComponent, "decryption key row count does not match its policy");
  }
  std::vector<std::pair<GroupElement, GroupElement>> terms;
  terms.reserve(2 * w.size());
  for (const auto& [i, wi] : w) {
    auto c2_it = ct.c2.find(dk.policy.attribute(i));
    if (c2_it == ct.c2.end()) {
      throw Error(ErrorCode::kMissingComponent, "ciphertext has no component for attribute " +
                                                    std::to_string(dk.policy.attribute(i)));
    }
    const GroupElement& c2 = c2_it->second;
    terms.emplace_back(ct.c1.pow(wi), dk.psk.rows[i].k0);
    terms.emplace_back(c2.pow(-wi), dk.psk.rows[i].k1);
  }
  GroupElement a1 = pair_product(terms);
  std::pair<GroupElement, GroupElement> a2_terms[] = {{ct.c1, dk.pku.d0}, {ct.et.inverse(), dk.pku.d1}};
  GroupElement a2 = pair_product(a2_terms);
  (void)pp;
  GroupElement m = ct.c / (a1 * a2);
  return {std::move(a1), std::move(a2), std::move(m)};
}

GroupElement decrypt(const UpdatedCiphertext& ct, const DecryptionKey& dk, const PublicParams& pp) {
  return decrypt_parts(ct, dk, pp).message;
}

GroupElement random_message(const PublicParams& pp, Rng& rng) {
  const auto& ctx = pp.context();
  return ctx.generator(Side::kTarget).pow(ctx.random_scalar(rng));
}

void revoke(const Identity& id, std::uint64_t t, RevocationList& rl, const TreeState& state,
            const PublicParams& pp) {
  if (!state.leaf_of(id)) throw Error(ErrorCode::kUnknownIdentity, "identity '" + id + "' has no key");
  pp.check_operational_epoch(t);
  rl.add(id, t);
}

}  // namespace rabe
