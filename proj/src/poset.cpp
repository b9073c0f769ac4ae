#include "rowmotion/poset.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

#include "rowmotion/errors.hpp"

namespace rowmotion {

NodeSet make_node_set(std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::string to_string(const Interval& interval) {
  return "[" + std::to_string(interval.lo) + "," + std::to_string(interval.hi) + "]";
}

// ---------------------------------------------------------------------------
// Poset

Poset::Poset(std::size_t size, std::vector<Cover> covers)
    : size_(size), covers_(std::move(covers)), up_(size), down_(size) {
  std::sort(covers_.begin(), covers_.end());
  if (std::adjacent_find(covers_.begin(), covers_.end()) != covers_.end()) {
    throw InvalidInput("duplicate cover relation");
  }
  for (const auto& c : covers_) {
    if (c.lower >= size || c.upper >= size) {
      throw InvalidInput("cover relation refers to an unknown element");
    }
    if (c.lower == c.upper) throw InvalidInput("cover relation is a self-loop");
    up_[c.lower].push_back(c.upper);
    down_[c.upper].push_back(c.lower);
  }

  // Kahn's algorithm; leftover elements mean a directed cycle.
  std::vector<std::size_t> indegree(size);
  for (std::size_t x = 0; x < size; ++x) indegree[x] = down_[x].size();
  std::vector<NodeId> order;
  order.reserve(size);
  for (NodeId x = 0; x < size; ++x) {
    if (indegree[x] == 0) order.push_back(x);
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (NodeId y : up_[order[k]]) {
      if (--indegree[y] == 0) order.push_back(y);
    }
  }
  if (order.size() != size) throw InvalidInput("cover relations contain a cycle");

  const std::size_t words = (size + 63) / 64;
  above_.assign(size, std::vector<std::uint64_t>(words, 0));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId x = *it;
    auto& row = above_[x];
    row[x / 64] |= std::uint64_t{1} << (x % 64);
    for (NodeId y : up_[x]) {
      for (std::size_t w = 0; w < words; ++w) row[w] |= above_[y][w];
    }
  }

  for (const auto& c : covers_) {
    for (NodeId z : up_[c.lower]) {
      if (z != c.upper && leq(z, c.upper)) {
        throw InvalidInput("cover relation " + std::to_string(c.lower) + " < " +
                           std::to_string(c.upper) + " is implied by transitivity");
      }
    }
  }

  for (NodeId x = 0; x < size; ++x) {
    if (down_[x].empty()) minimal_.push_back(x);
    if (up_[x].empty()) maximal_.push_back(x);
  }
}

// ---------------------------------------------------------------------------
// RootedTree

namespace {

std::vector<Cover> tree_covers(const std::vector<std::vector<NodeId>>& children) {
  std::vector<Cover> covers;
  for (NodeId x = 0; x < children.size(); ++x) {
    for (NodeId c : children[x]) covers.push_back({x, c});
  }
  return covers;
}

}  // namespace

RootedTree::RootedTree(std::vector<std::vector<NodeId>> children)
    : children_(std::move(children)) {
  const std::size_t n = children_.size();
  if (n == 0) throw InvalidInput("a rooted tree needs at least one node");

  parent_.assign(n, kNoParent);
  end_.assign(n, 0);

  // Verify that ids are a preorder numbering: walking the children lists
  // depth-first from 0 must visit 0, 1, 2, ... in turn.
  std::vector<std::pair<NodeId, std::size_t>> stack{{0, 0}};
  NodeId next = 1;
  while (!stack.empty()) {
    auto& [x, k] = stack.back();
    if (k < children_[x].size()) {
      const NodeId c = children_[x][k++];
      if (c != next) throw InvalidInput("tree node ids are not a preorder numbering");
      parent_[c] = x;
      ++next;
      stack.push_back({c, 0});
    } else {
      end_[x] = next;
      stack.pop_back();
    }
  }
  if (next != n) throw InvalidInput("tree is not connected");

  poset_ = Poset(n, tree_covers(children_));

  leaf_label_.assign(n, 0);
  for (NodeId x = 0; x < n; ++x) {
    if (children_[x].empty()) {
      leaves_.push_back(x);
      leaf_label_[x] = static_cast<int>(leaves_.size());
    }
  }

  // Preorder visits leaves left to right, and the subtree of x is a
  // contiguous id range, so its leaf labels form an interval.
  interval_.assign(n, {});
  for (NodeId x = static_cast<NodeId>(n); x-- > 0;) {
    if (children_[x].empty()) {
      interval_[x] = {leaf_label_[x], leaf_label_[x]};
    } else {
      interval_[x] = {interval_[children_[x].front()].lo,
                      interval_[children_[x].back()].hi};
    }
  }

  std::map<std::pair<int, int>, std::vector<NodeId>> by_interval;
  for (NodeId x = 0; x < n; ++x) {
    by_interval[{interval_[x].length(), interval_[x].lo}].push_back(x);
  }
  branch_index_.assign(n, 0);
  branch_position_.assign(n, 0);
  for (auto& [key, nodes] : by_interval) {
    // Within a branch deeper nodes have larger preorder ids.
    std::sort(nodes.rbegin(), nodes.rend());
    IntervalSpec spec;
    spec.interval = interval_[nodes.front()];
    spec.beta = nodes.size();
    spec.nodes = nodes;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      branch_index_[nodes[j]] = branches_.size();
      branch_position_[nodes[j]] = j + 1;
    }
    branches_.push_back(std::move(spec));
  }
}

const IntervalSpec* RootedTree::find_branch(const Interval& interval) const {
  auto it = std::lower_bound(
      branches_.begin(), branches_.end(), interval,
      [](const IntervalSpec& s, const Interval& i) {
        return std::pair{s.interval.length(), s.interval.lo} <
               std::pair{i.length(), i.lo};
      });
  if (it != branches_.end() && it->interval == interval) return &*it;
  return nullptr;
}

RootedTree parse_tree(std::string_view spec) {
  std::vector<std::vector<NodeId>> children;
  std::vector<NodeId> stack;
  bool closed_root = false;
  for (std::size_t pos = 0; pos < spec.size(); ++pos) {
    const char ch = spec[pos];
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
    if (ch == '(') {
      if (closed_root) {
        throw InvalidInput("tree notation has more than one outermost pair");
      }
      const auto id = static_cast<NodeId>(children.size());
      children.emplace_back();
      if (!stack.empty()) children[stack.back()].push_back(id);
      stack.push_back(id);
    } else if (ch == ')') {
      if (stack.empty()) {
        throw InvalidInput("unbalanced ')' at position " + std::to_string(pos));
      }
      stack.pop_back();
      if (stack.empty()) closed_root = true;
    } else {
      throw InvalidInput(std::string("unexpected character '") + ch +
                         "' in tree notation");
    }
  }
  if (children.empty()) throw InvalidInput("empty tree notation");
  if (!stack.empty()) throw InvalidInput("unbalanced '(' in tree notation");
  return RootedTree(std::move(children));
}

std::string to_notation(const RootedTree& tree) {
  std::string out;
  out.reserve(2 * tree.size());
  std::vector<NodeId> open;
  for (NodeId x = 0; x < tree.size(); ++x) {
    while (!open.empty() && !tree.leq(open.back(), x)) {
      out.push_back(')');
      open.pop_back();
    }
    out.push_back('(');
    open.push_back(x);
  }
  out.append(open.size(), ')');
  return out;
}

const std::vector<IntervalSpec>& intervals(const RootedTree& tree) {
  return tree.branches();
}

// ---------------------------------------------------------------------------
// Node-set operations

namespace {

void check_members(const Poset& poset, const NodeSet& nodes) {
  for (NodeId x : nodes) {
    if (!poset.contains(x)) throw InvalidInput("unknown node id " + std::to_string(x));
  }
}

}  // namespace

bool is_antichain(const Poset& poset, const NodeSet& nodes) {
  check_members(poset, nodes);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (poset.comparable(nodes[i], nodes[j])) return false;
    }
  }
  return true;
}

bool is_ideal(const Poset& poset, const NodeSet& nodes) {
  check_members(poset, nodes);
  std::vector<char> in(poset.size(), 0);
  for (NodeId x : nodes) in[x] = 1;
  for (NodeId x : nodes) {
    for (NodeId y : poset.lower_covers(x)) {
      if (!in[y]) return false;
    }
  }
  return true;
}

NodeSet down_set(const Poset& poset, const NodeSet& q) {
  check_members(poset, q);
  std::vector<char> in(poset.size(), 0);
  std::vector<NodeId> stack(q.begin(), q.end());
  for (NodeId x : q) in[x] = 1;
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    for (NodeId y : poset.lower_covers(x)) {
      if (!in[y]) {
        in[y] = 1;
        stack.push_back(y);
      }
    }
  }
  NodeSet out;
  for (NodeId x = 0; x < poset.size(); ++x) {
    if (in[x]) out.push_back(x);
  }
  return out;
}

NodeSet down_set(const RootedTree& tree, const NodeSet& q) {
  return down_set(tree.poset(), q);
}

NodeSet max_of(const Poset& poset, const NodeSet& nodes) {
  check_members(poset, nodes);
  NodeSet out;
  for (NodeId x : nodes) {
    bool top = true;
    for (NodeId y : nodes) {
      if (y != x && poset.leq(x, y)) {
        top = false;
        break;
      }
    }
    if (top) out.push_back(x);
  }
  return out;
}

std::uint64_t count_antichains(const RootedTree& tree) {
  std::vector<std::uint64_t> count(tree.size(), 0);
  for (NodeId x = static_cast<NodeId>(tree.size()); x-- > 0;) {
    if (tree.is_leaf(x)) {
      count[x] = 2;
      continue;
    }
    std::uint64_t product = 1;
    for (NodeId c : tree.children(x)) {
      if (__builtin_mul_overflow(product, count[c], &product)) {
        throw std::overflow_error("antichain count exceeds 64 bits");
      }
    }
    if (__builtin_add_overflow(product, 1, &count[x])) {
      throw std::overflow_error("antichain count exceeds 64 bits");
    }
  }
  return count[0];
}

std::vector<Interval> interval_partition(const RootedTree& tree,
                                         const Interval& interval, bool proper) {
  const int n = static_cast<int>(tree.leaf_count());
  if (interval.lo < 1 || interval.hi > n || interval.lo > interval.hi) {
    throw InvalidInput("interval " + to_string(interval) + " is not a subinterval of [1," +
                       std::to_string(n) + "]");
  }
  if (proper) {
    if (interval.length() == 1) {
      throw InvalidInput("a singleton interval has no proper partition");
    }
    if (tree.find_branch(interval) == nullptr) {
      throw InvalidInput("interval " + to_string(interval) + " is not in the family");
    }
  }
  // The family is nested, so greedily taking the longest family member that
  // starts at the current position and fits gives the maximal partition.
  std::vector<Interval> blocks;
  int pos = interval.lo;
  while (pos <= interval.hi) {
    Interval best{pos, pos};
    for (NodeId x = tree.leaf(pos);; x = tree.parent(x)) {
      const Interval candidate = tree.interval_of(x);
      if (candidate.lo != pos || !interval.contains(candidate)) break;
      if (proper && candidate == interval) break;
      best = candidate;
      if (x == tree.root()) break;
    }
    blocks.push_back(best);
    pos = best.hi + 1;
  }
  return blocks;
}

Poset chain_product(std::size_t p, std::size_t q) {
  if (p == 0 || q == 0) throw InvalidInput("chain lengths must be positive");
  std::vector<Cover> covers;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      const auto id = static_cast<NodeId>(i * q + j);
      if (i + 1 < p) covers.push_back({id, static_cast<NodeId>(id + q)});
      if (j + 1 < q) covers.push_back({id, static_cast<NodeId>(id + 1)});
    }
  }
  return Poset(p * q, std::move(covers));
}

std::vector<NodeId> linear_extension(const Poset& poset) {
  std::vector<std::size_t> pending(poset.size());
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId x = 0; x < poset.size(); ++x) {
    pending[x] = poset.lower_covers(x).size();
    if (pending[x] == 0) ready.push(x);
  }
  std::vector<NodeId> order;
  order.reserve(poset.size());
  while (!ready.empty()) {
    const NodeId x = ready.top();
    ready.pop();
    order.push_back(x);
    for (NodeId y : poset.upper_covers(x)) {
      if (--pending[y] == 0) ready.push(y);
    }
  }
  return order;
}

bool is_linear_extension(const Poset& poset, std::span<const NodeId> order) {
  if (order.size() != poset.size()) return false;
  std::vector<std::size_t> position(poset.size(), poset.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!poset.contains(order[i]) || position[order[i]] != poset.size()) return false;
    position[order[i]] = i;
  }
  for (const auto& c : poset.covers()) {
    if (position[c.lower] > position[c.upper]) return false;
  }
  return true;
}

nlohmann::ordered_json tree_to_json(const RootedTree& tree) {
  nlohmann::ordered_json out;
  auto nodes = nlohmann::ordered_json::array();
  for (NodeId x = 0; x < tree.size(); ++x) nodes.push_back(x);
  auto covers = nlohmann::ordered_json::array();
  for (const auto& c : tree.poset().covers()) covers.push_back({c.lower, c.upper});
  auto labels = nlohmann::ordered_json::array();
  for (int i = 1; i <= static_cast<int>(tree.leaf_count()); ++i) {
    labels.push_back({{"label", i}, {"node", tree.leaf(i)}});
  }
  auto family = nlohmann::ordered_json::array();
  for (const auto& spec : tree.branches()) {
    family.push_back({{"interval", {spec.interval.lo, spec.interval.hi}},
                      {"beta", spec.beta},
                      {"nodes", spec.nodes}});
  }
  out["nodes"] = std::move(nodes);
  out["covers"] = std::move(covers);
  out["leafLabels"] = std::move(labels);
  out["intervals"] = std::move(family);
  return out;
}

}  // namespace rowmotion
