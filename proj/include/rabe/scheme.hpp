#pragma once

// The revocable KP-ABE scheme: Setup, GenKey, UpdateKey, DeriveDK, Encrypt,
// UpdateCT, Decrypt and Revoke. Ciphertext components live in source group
// one and key components in source group two; every public generator is
// published in both groups with the same exponent.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rabe/group.hpp"
#include "rabe/lsss.hpp"
#include "rabe/revocation_tree.hpp"
#include "rabe/time_encoding.hpp"

namespace rabe {

struct MirroredElement {
  GroupElement one;  // source group one
  GroupElement two;  // source group two
  const GroupElement& on(Side side) const;
};

struct SchemeLimits {
  std::uint64_t max_users = 8;  // N
  std::uint64_t max_time = 32;  // T, a power of two >= 4
  std::uint32_t max_attributes = 4;  // n

  void validate() const;  // kInvalidArgument
  unsigned time_bits() const { return log2_exact(max_time); }
  bool operator==(const SchemeLimits&) const = default;
};

class PublicParams {
 public:
  // Builds the parameter set and precomputes T(x) for x in [1, n].
  PublicParams(BilinearContext context, SchemeLimits limits, GroupElement g1, MirroredElement g2,
               std::vector<MirroredElement> t_gens, MirroredElement u0, std::vector<MirroredElement> u_gens);

  const BilinearContext& context() const { return context_; }
  const SchemeLimits& limits() const { return limits_; }
  const GroupElement& g1() const { return g1_; }                 // g^alpha
  const MirroredElement& g2() const { return g2_; }
  const std::vector<MirroredElement>& t_gens() const { return t_gens_; }  // T_1 .. T_{n+1}
  const MirroredElement& u0() const { return u0_; }
  const std::vector<MirroredElement>& u_gens() const { return u_gens_; }  // U_1 .. U_tau
  const MirroredElement& u(std::size_t j) const { return u_gens_.at(j - 1); }  // 1-based
  const GroupElement& blinding_base() const { return blinding_base_; }  // e(g1, g2)

  // T(x) for an attribute in [1, n]; kOutOfRange otherwise.
  const GroupElement& attribute_point(Attribute x, Side side) const;

  TimeEpoch epoch(std::uint64_t t) const { return TimeEpoch(t, limits_.max_time); }
  // kOutOfRange unless 1 <= t <= T - 1.
  void check_operational_epoch(std::uint64_t t) const;

  bool operator==(const PublicParams& o) const;

 private:
  BilinearContext context_;
  SchemeLimits limits_;
  GroupElement g1_;
  MirroredElement g2_;
  std::vector<MirroredElement> t_gens_;
  MirroredElement u0_;
  std::vector<MirroredElement> u_gens_;
  GroupElement blinding_base_;
  std::vector<MirroredElement> attribute_points_;
};

struct MasterKey {
  Scalar alpha;
};

struct KeyRow {
  GroupElement k0;  // g2^{lambda_i} T(rho(i))^{r_i}
  GroupElement k1;  // g~^{r_i}
};

struct PartialPrivateKey {
  std::vector<KeyRow> rows;
};

struct PrivateKey {
  Identity id;
  AccessPolicy policy;
  NodeId leaf;
  std::map<NodeId, PartialPrivateKey> parts;  // one per node of Path(leaf)
};

struct KeyUpdatePart {
  GroupElement d0;  // g2^{alpha - alpha_x} (U0 prod_{j in V_bt} U_j)^r
  GroupElement d1;  // g~^r
};

struct KeyUpdate {
  std::uint64_t epoch;
  std::map<NodeId, KeyUpdatePart> parts;  // one per KUNodes node
};

struct DecryptionKey {
  Identity id;
  std::uint64_t epoch;
  NodeId node;
  AccessPolicy policy;
  PartialPrivateKey psk;
  KeyUpdatePart pku;
};

struct OriginalCiphertext {
  AttributeSet attrs;
  std::uint64_t epoch;
  GroupElement c;                          // e(g1, g2)^s m
  GroupElement c1;                         // g^s
  std::map<Attribute, GroupElement> c2;    // T(x)^s for x in attrs
  GroupElement e1;                         // U0^s
  std::map<std::size_t, GroupElement> e2;  // U_j^s for j in V_et
};

struct UpdatedCiphertext {
  AttributeSet attrs;
  std::uint64_t epoch;
  GroupElement c;
  GroupElement c1;
  std::map<Attribute, GroupElement> c2;
  GroupElement et;  // U0^s prod_{j in V_bt} U_j^s
};

struct SetupResult {
  RevocationList rl;
  TreeState state;
  MasterKey mk;
  PublicParams pp;
};

SetupResult setup(const BilinearContext& context, const SchemeLimits& limits, Rng& rng);

// T(x) = g2^{x^n} prod_{i=1}^{n+1} T_i^{Delta_{i,[n+1]}(x)}, evaluated from the generators.
GroupElement eval_t(const Scalar& x, Side side, const PublicParams& pp);

// Binds id to a leaf and issues one partial key per node on its path.
PrivateKey gen_key(const Identity& id, const AccessPolicy& policy, const MasterKey& mk, TreeState& state,
                   const PublicParams& pp, Rng& rng);

KeyUpdate update_key(std::uint64_t t, const RevocationList& rl, const MasterKey& mk, TreeState& state,
                     const PublicParams& pp, Rng& rng);

// nullopt (bottom) when the key's path misses every key-update node.
std::optional<DecryptionKey> derive_dk(const PrivateKey& sk, const KeyUpdate& ku);

OriginalCiphertext encrypt(const AttributeSet& attrs, std::uint64_t t, const GroupElement& message,
                           const PublicParams& pp, Rng& rng);

// Folds E1 with {E2_j : j in V_bt'} into E_t' and re-randomizes every
// component with a fresh s'. Does not compare epochs; kMissingComponent when
// V_bt' is not covered by the ciphertext's E2 set.
//
// The published UpdateCT reads E_t' = (C1 prod C_{2,j}) (U0 prod U_{2,j})^{s'}
// with V_bt taken from TEncode(t); the fold below uses E1, E2_j, U_j and the
// target epoch t', which is what Decrypt's A2 cancellation requires.
UpdatedCiphertext fold_ciphertext(const OriginalCiphertext& ct, std::uint64_t target_epoch,
                                  const PublicParams& pp, Rng& rng);

// nullopt (bottom) when t' < ct.epoch.
std::optional<UpdatedCiphertext> update_ct(const OriginalCiphertext& ct, std::uint64_t t_prime,
                                           const PublicParams& pp, Rng& rng);

struct DecryptionParts {
  GroupElement a1;  // prod (e(C1, K_i0) / e(C2_rho(i), K_i1))^{w_i}
  GroupElement a2;  // e(C1, D0) / e(E_t, D1)
  GroupElement message;
};

// No epoch check: a mismatched key yields a wrong element, not an error.
// kUnsatisfiedPolicy when the key's policy rejects ct.attrs.
DecryptionParts decrypt_parts(const UpdatedCiphertext& ct, const DecryptionKey& dk, const PublicParams& pp);
GroupElement decrypt(const UpdatedCiphertext& ct, const DecryptionKey& dk, const PublicParams& pp);

// Uniform element of the target group, used as a KEM-style message.
GroupElement random_message(const PublicParams& pp, Rng& rng);

// kUnknownIdentity when id never received a key; epoch must be operational.
void revoke(const Identity& id, std::uint64_t t, RevocationList& rl, const TreeState& state,
            const PublicParams& pp);

}  // namespace rabe
