#pragma once

// Trusted-center state: everything Setup produces plus the bookkeeping the
// center needs between invocations.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rabe/scheme.hpp"
#include "rabe/serialization.hpp"

namespace rabe {

class CenterState {
 public:
  // With a seed every operation draws from SeededRng(seed || op-counter),
  // so a scripted run is reproducible; without one the OS generator is used.
  static CenterState create(Backend backend, const SchemeLimits& limits,
                            std::optional<std::vector<std::uint8_t>> seed);

  const PublicParams& pp() const { return pp_; }
  const MasterKey& mk() const { return mk_; }
  const TreeState& tree() const { return tree_; }
  const RevocationList& rl() const { return rl_; }
  // Largest epoch seen by update_key or revoke; never decreases.
  std::uint64_t epoch() const { return epoch_; }
  const std::optional<std::vector<std::uint8_t>>& seed() const { return seed_; }
  std::uint64_t op_counter() const { return op_counter_; }

  PrivateKey keygen(const Identity& id, const AccessPolicy& policy);
  KeyUpdate update_key(std::uint64_t t);
  void revoke(const Identity& id, std::uint64_t t);

  std::vector<std::uint8_t> encode() const;
  static CenterState decode(std::span<const std::uint8_t> payload);

 private:
  CenterState(PublicParams pp, MasterKey mk, TreeState tree, RevocationList rl)
      : pp_(std::move(pp)), mk_(std::move(mk)), tree_(std::move(tree)), rl_(std::move(rl)) {}
  std::unique_ptr<Rng> next_rng();

  PublicParams pp_;
  MasterKey mk_;
  TreeState tree_;
  RevocationList rl_;
  std::uint64_t epoch_ = 0;
  std::optional<std::vector<std::uint8_t>> seed_;
  std::uint64_t op_counter_ = 0;
};

// Rng for one operation: seeded from (seed || counter) when a seed is given.
std::unique_ptr<Rng> make_rng(const std::optional<std::vector<std::uint8_t>>& seed, std::uint64_t counter);

}  // namespace rabe
