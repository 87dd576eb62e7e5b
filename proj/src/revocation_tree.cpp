#include "rabe/revocation_tree.hpp"

#include <algorithm>

#include "rabe/error.hpp"

namespace rabe {

TreeState::TreeState(std::uint64_t max_users) {
  if (max_users == 0) throw Error(ErrorCode::kInvalidArgument, "tree needs at least one leaf");
  if (max_users > (std::uint64_t{1} << 40)) throw Error(ErrorCode::kInvalidArgument, "tree capacity too large");
  capacity_ = 1;
  while (capacity_ < max_users) capacity_ <<= 1;
}

void TreeState::check_node(NodeId node) const {
  if (!is_valid_node(node)) throw Error(ErrorCode::kInvalidNode, "node " + std::to_string(node) + " is not in the tree");
}

NodeId TreeState::assign_leaf(const Identity& id) {
  if (auto it = leaf_assignments_.find(id); it != leaf_assignments_.end()) return it->second;
  for (NodeId leaf = capacity_; leaf < 2 * capacity_; ++leaf) {
    if (!used_leaves_.contains(leaf)) {
      used_leaves_.insert(leaf);
      leaf_assignments_.emplace(id, leaf);
      return leaf;
    }
  }
  throw Error(ErrorCode::kCapacityExhausted, "all " + std::to_string(capacity_) + " leaves are assigned");
}

std::optional<NodeId> TreeState::leaf_of(const Identity& id) const {
  if (auto it = leaf_assignments_.find(id); it != leaf_assignments_.end()) return it->second;
  return std::nullopt;
}

std::vector<NodeId> TreeState::path(NodeId leaf) const {
  if (!is_leaf(leaf)) throw Error(ErrorCode::kInvalidNode, "node " + std::to_string(leaf) + " is not a leaf");
  std::vector<NodeId> nodes;
  for (NodeId n = leaf; n >= 1; n >>= 1) nodes.push_back(n);
  std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

const Scalar& TreeState::get_or_create_secret(NodeId node, const BilinearContext& ctx, Rng& rng) {
  check_node(node);
  auto it = node_secrets_.find(node);
  if (it == node_secrets_.end()) it = node_secrets_.emplace(node, ctx.random_scalar(rng)).first;
  return it->second;
}

const Scalar* TreeState::find_secret(NodeId node) const {
  auto it = node_secrets_.find(node);
  return it == node_secrets_.end() ? nullptr : &it->second;
}

TreeState TreeState::restore(std::uint64_t capacity, std::map<Identity, NodeId> assignments,
                             std::map<NodeId, Scalar> secrets) {
  if (capacity == 0 || (capacity & (capacity - 1)) != 0) {
    throw Error(ErrorCode::kDecode, "tree capacity must be a power of two");
  }
  TreeState state(capacity);
  for (const auto& [id, leaf] : assignments) {
    if (!state.is_leaf(leaf) || !state.used_leaves_.insert(leaf).second) {
      throw Error(ErrorCode::kDecode, "invalid or duplicate leaf assignment for '" + id + "'");
    }
  }
  for (const auto& [node, secret] : secrets) state.check_node(node);
  state.leaf_assignments_ = std::move(assignments);
  state.node_secrets_ = std::move(secrets);
  return state;
}

void RevocationList::add(const Identity& id, std::uint64_t epoch) {
  auto [it, inserted] = entries_.emplace(id, epoch);
  if (!inserted) it->second = std::min(it->second, epoch);
}

std::optional<std::uint64_t> RevocationList::epoch_of(const Identity& id) const {
  if (auto it = entries_.find(id); it != entries_.end()) return it->second;
  return std::nullopt;
}

bool RevocationList::revoked_at(const Identity& id, std::uint64_t t) const {
  auto e = epoch_of(id);
  return e && *e <= t;
}

std::set<NodeId> ku_nodes(const TreeState& state, const RevocationList& rl, std::uint64_t t) {
  std::set<NodeId> marked;
  for (const auto& [id, epoch] : rl.entries()) {
    if (epoch > t) continue;
    auto leaf = state.leaf_of(id);
    if (!leaf) continue;
    for (NodeId n = *leaf; n >= 1; n >>= 1) marked.insert(n);
  }
  if (marked.empty()) return {1};
  std::set<NodeId> cover;
  for (NodeId x : marked) {
    if (state.is_leaf(x)) continue;
    for (NodeId child : {2 * x, 2 * x + 1}) {
      if (!marked.contains(child)) cover.insert(child);
    }
  }
  return cover;
}

}  // namespace rabe
