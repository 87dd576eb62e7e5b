#pragma once

// Complete-subtree revocation over a binary tree with heap numbering
// (root = 1, children of k are 2k and 2k + 1, leaves are
// [capacity, 2 * capacity)).

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rabe/group.hpp"

namespace rabe {

using NodeId = std::uint64_t;
using Identity = std::string;

class TreeState {
 public:
  // Capacity is max_users rounded up to a power of two.
  explicit TreeState(std::uint64_t max_users);

  std::uint64_t capacity() const { return capacity_; }
  bool is_valid_node(NodeId node) const { return node >= 1 && node < 2 * capacity_; }
  bool is_leaf(NodeId node) const { return node >= capacity_ && node < 2 * capacity_; }

  // Binds id to the leftmost free leaf; idempotent per id.
  NodeId assign_leaf(const Identity& id);
  std::optional<NodeId> leaf_of(const Identity& id) const;

  // Root first, leaf last.
  std::vector<NodeId> path(NodeId leaf) const;

  // alpha_x for the node, drawn from rng on first use and fixed thereafter.
  const Scalar& get_or_create_secret(NodeId node, const BilinearContext& ctx, Rng& rng);
  const Scalar* find_secret(NodeId node) const;

  const std::map<Identity, NodeId>& assignments() const { return leaf_assignments_; }
  const std::map<NodeId, Scalar>& node_secrets() const { return node_secrets_; }

  // Rebuilds a state from serialized parts; validates every invariant.
  static TreeState restore(std::uint64_t capacity, std::map<Identity, NodeId> assignments,
                           std::map<NodeId, Scalar> secrets);

 private:
  void check_node(NodeId node) const;

  std::uint64_t capacity_;
  std::map<NodeId, Scalar> node_secrets_;
  std::map<Identity, NodeId> leaf_assignments_;
  std::set<NodeId> used_leaves_;
};

class RevocationList {
 public:
  // Records (id, epoch); a repeated id keeps the earliest epoch.
  void add(const Identity& id, std::uint64_t epoch);
  std::optional<std::uint64_t> epoch_of(const Identity& id) const;
  // Revoked at t when the recorded epoch is <= t.
  bool revoked_at(const Identity& id, std::uint64_t t) const;
  const std::map<Identity, std::uint64_t>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<Identity, std::uint64_t> entries_;
};

// Roots of the minimal subtrees covering exactly the leaves not revoked at
// epoch t.
std::set<NodeId> ku_nodes(const TreeState& state, const RevocationList& rl, std::uint64_t t);

}  // namespace rabe
