#pragma once

// Finite posets and rooted trees with a fixed planar embedding.
//
// Node ids are dense integers.  For rooted trees they are assigned in
// preorder (root = 0), so the subtree of x is the id range [x, end(x)).

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace rowmotion {

using NodeId = std::uint32_t;

/// Sorted, duplicate-free list of node ids.
using NodeSet = std::vector<NodeId>;

NodeSet make_node_set(std::vector<NodeId> ids);
inline NodeSet make_node_set(std::initializer_list<NodeId> ids) {
  return make_node_set(std::vector<NodeId>(ids));
}

/// x is covered by y.
struct Cover {
  NodeId lower;
  NodeId upper;
  friend auto operator<=>(const Cover&, const Cover&) = default;
};

class Poset {
 public:
  Poset() = default;

  /// Throws InvalidInput on out-of-range ids, duplicate covers, cycles, or a
  /// cover implied by transitivity through other covers.
  Poset(std::size_t size, std::vector<Cover> covers);

  std::size_t size() const { return size_; }
  const std::vector<Cover>& covers() const { return covers_; }
  std::span<const NodeId> upper_covers(NodeId x) const { return up_[x]; }
  std::span<const NodeId> lower_covers(NodeId x) const { return down_[x]; }
  bool contains(NodeId x) const { return x < size_; }
  bool leq(NodeId x, NodeId y) const {
    return (above_[x][y / 64] >> (y % 64)) & 1U;
  }
  bool less(NodeId x, NodeId y) const { return x != y && leq(x, y); }
  bool comparable(NodeId x, NodeId y) const { return leq(x, y) || leq(y, x); }
  const NodeSet& minimal() const { return minimal_; }
  const NodeSet& maximal() const { return maximal_; }

 private:
  std::size_t size_ = 0;
  std::vector<Cover> covers_;
  std::vector<std::vector<NodeId>> up_;
  std::vector<std::vector<NodeId>> down_;
  // above_[x] is a bitset of { y : x <= y }.
  std::vector<std::vector<std::uint64_t>> above_;
  NodeSet minimal_;
  NodeSet maximal_;
};

/// Closed interval [lo, hi] of leaf labels, 1-based.
struct Interval {
  int lo = 1;
  int hi = 1;
  int length() const { return hi - lo + 1; }
  bool contains(int i) const { return lo <= i && i <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& interval);

/// A branch: the maximal chain of nodes sharing one leaf interval.  `nodes`
/// runs from the maximal element of the branch downward.
struct IntervalSpec {
  Interval interval;
  std::size_t beta = 0;
  std::vector<NodeId> nodes;
  friend bool operator==(const IntervalSpec&, const IntervalSpec&) = default;
};

class RootedTree {
 public:
  static constexpr NodeId kNoParent = static_cast<NodeId>(-1);

  /// `children[x]` lists the children of x in left-to-right order.  Ids must
  /// be a preorder numbering with the root at 0.
  explicit RootedTree(std::vector<std::vector<NodeId>> children);

  std::size_t size() const { return children_.size(); }
  NodeId root() const { return 0; }
  const Poset& poset() const { return poset_; }
  NodeId parent(NodeId x) const { return parent_[x]; }
  std::span<const NodeId> children(NodeId x) const { return children_[x]; }
  bool is_leaf(NodeId x) const { return children_[x].empty(); }
  bool leq(NodeId x, NodeId y) const { return x <= y && y < end_[x]; }

  /// Number of leaves n.
  std::size_t leaf_count() const { return leaves_.size(); }
  /// Leaf with label i (1-based).
  NodeId leaf(int label) const { return leaves_[static_cast<std::size_t>(label - 1)]; }
  /// Label of leaf x, 0 for interior nodes.
  int leaf_label(NodeId x) const { return leaf_label_[x]; }

  Interval interval_of(NodeId x) const { return interval_[x]; }
  /// Index into branches() of the branch containing x.
  std::size_t branch_index(NodeId x) const { return branch_index_[x]; }
  /// j such that x = x_{I,j}, counting from the top of the branch (1-based).
  std::size_t branch_position(NodeId x) const { return branch_position_[x]; }
  /// All branches, ordered by interval length then by left endpoint.
  const std::vector<IntervalSpec>& branches() const { return branches_; }
  /// Branch with the given interval, or nullptr if it is not in the family.
  const IntervalSpec* find_branch(const Interval& interval) const;

 private:
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> parent_;
  std::vector<NodeId> end_;
  Poset poset_;
  std::vector<NodeId> leaves_;
  std::vector<int> leaf_label_;
  std::vector<Interval> interval_;
  std::vector<std::size_t> branch_index_;
  std::vector<std::size_t> branch_position_;
  std::vector<IntervalSpec> branches_;
};

/// Parses nested-parenthesis notation: "()" is a single node, and a node's
/// children are its immediate sub-pairs in written order.  Whitespace is
/// ignored.
RootedTree parse_tree(std::string_view spec);

/// Inverse of parse_tree (no whitespace).
std::string to_notation(const RootedTree& tree);

/// The interval family of the tree.
const std::vector<IntervalSpec>& intervals(const RootedTree& tree);

bool is_antichain(const Poset& poset, const NodeSet& nodes);
bool is_ideal(const Poset& poset, const NodeSet& nodes);

/// { x : x <= y for some y in q }.
NodeSet down_set(const Poset& poset, const NodeSet& q);
NodeSet down_set(const RootedTree& tree, const NodeSet& q);

/// Maximal elements of a node set.
NodeSet max_of(const Poset& poset, const NodeSet& nodes);

/// Number of antichains, by the product recursion over the root's subtrees.
/// Throws std::overflow_error past 2^64 - 1.
std::uint64_t count_antichains(const RootedTree& tree);

/// The maximal partition of `interval` into blocks of the tree's interval
/// family.  With `proper` set the trivial partition {interval} is excluded,
/// which requires the interval to be in the family and to have length >= 2.
std::vector<Interval> interval_partition(const RootedTree& tree,
                                         const Interval& interval, bool proper);

/// The product of a p-chain and a q-chain.  Element (i, j), 0 <= i < p,
/// 0 <= j < q, has id i * q + j.
Poset chain_product(std::size_t p, std::size_t q);

/// Smallest-id-first topological order.
std::vector<NodeId> linear_extension(const Poset& poset);

bool is_linear_extension(const Poset& poset, std::span<const NodeId> order);

/// {nodes, covers, leafLabels, intervals} with stable key order.
nlohmann::ordered_json tree_to_json(const RootedTree& tree);

}  // namespace rowmotion
