#include "rowmotion/rowmotion.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_set>

#include "rowmotion/errors.hpp"

namespace rowmotion {

namespace {

struct NodeSetHash {
  std::size_t operator()(const NodeSet& s) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (NodeId x : s) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Marks the down-set of `a` in `mark` (which must be all zero on entry).
void mark_down_set(const RootedTree& tree, const NodeSet& a, std::vector<char>& mark) {
  for (NodeId x : a) {
    while (!mark[x]) {
      mark[x] = 1;
      if (x == tree.root()) break;
      x = tree.parent(x);
    }
  }
}

// Minimal elements of the complement of a marked ideal, computed in the
// induced subposet: unmarked elements all of whose lower covers are marked.
NodeSet min_of_complement(const Poset& poset, const std::vector<char>& mark) {
  NodeSet out;
  for (NodeId y = 0; y < poset.size(); ++y) {
    if (mark[y]) continue;
    const auto lower = poset.lower_covers(y);
    if (std::all_of(lower.begin(), lower.end(), [&](NodeId z) { return mark[z] != 0; })) {
      out.push_back(y);
    }
  }
  return out;
}

Antichain rho_unchecked(const RootedTree& tree, const NodeSet& a, std::vector<char>& mark) {
  std::fill(mark.begin(), mark.end(), 0);
  mark_down_set(tree, a, mark);
  return Antichain{min_of_complement(tree.poset(), mark)};
}

void require_antichain(const Poset& poset, const NodeSet& a) {
  if (!std::is_sorted(a.begin(), a.end()) ||
      std::adjacent_find(a.begin(), a.end()) != a.end()) {
    throw InvalidInput("node set must be sorted and duplicate-free");
  }
  if (!is_antichain(poset, a)) throw InvalidInput("node set is not an antichain");
}

void require_ideal(const Poset& poset, const NodeSet& l) {
  if (!std::is_sorted(l.begin(), l.end()) ||
      std::adjacent_find(l.begin(), l.end()) != l.end()) {
    throw InvalidInput("node set must be sorted and duplicate-free");
  }
  if (!is_ideal(poset, l)) throw InvalidInput("node set is not a lower order ideal");
}

}  // namespace

Orbit make_orbit(std::vector<Antichain> cycle, NodeId root) {
  Orbit orbit;
  if (cycle.empty()) return orbit;
  const auto smallest = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), smallest, cycle.end());
  orbit.contains_root = std::any_of(cycle.begin(), cycle.end(), [&](const Antichain& a) {
    return a.members.size() == 1 && a.members.front() == root;
  });
  orbit.antichains = std::move(cycle);
  return orbit;
}

Antichain rho_antichain(const RootedTree& tree, const Antichain& a) {
  require_antichain(tree.poset(), a.members);
  std::vector<char> mark(tree.size(), 0);
  return rho_unchecked(tree, a.members, mark);
}

Ideal to_ideal(const RootedTree& tree, const Antichain& a) {
  return Ideal{down_set(tree, a.members)};
}

Antichain to_antichain(const RootedTree& tree, const Ideal& ideal) {
  return Antichain{max_of(tree.poset(), ideal.members)};
}

Ideal rho_ideal(const RootedTree& tree, const Ideal& ideal) {
  require_ideal(tree.poset(), ideal.members);
  std::vector<char> mark(tree.size(), 0);
  const Antichain next = rho_unchecked(tree, max_of(tree.poset(), ideal.members), mark);
  return to_ideal(tree, next);
}

Ideal toggle(const Poset& poset, const Ideal& ideal, NodeId x) {
  if (!poset.contains(x)) throw InvalidInput("unknown node id " + std::to_string(x));
  require_ideal(poset, ideal.members);
  const auto& l = ideal.members;
  const auto it = std::lower_bound(l.begin(), l.end(), x);
  const bool inside = it != l.end() && *it == x;
  auto member = [&](NodeId y) { return std::binary_search(l.begin(), l.end(), y); };
  Ideal out = ideal;
  if (inside) {
    const auto upper = poset.upper_covers(x);
    if (std::none_of(upper.begin(), upper.end(), member)) {
      out.members.erase(out.members.begin() + (it - l.begin()));
    }
  } else {
    const auto lower = poset.lower_covers(x);
    if (std::all_of(lower.begin(), lower.end(), member)) {
      out.members.insert(out.members.begin() + (it - l.begin()), x);
    }
  }
  return out;
}

Ideal rho_via_toggles(const Poset& poset, const Ideal& ideal,
                      std::span<const NodeId> extension) {
  if (!is_linear_extension(poset, extension)) {
    throw InvalidInput("toggle order is not a linear extension");
  }
  Ideal current = ideal;
  for (auto it = extension.rbegin(); it != extension.rend(); ++it) {
    current = toggle(poset, current, *it);
  }
  return current;
}

Orbit orbit_of(const RootedTree& tree, const Antichain& a) {
  require_antichain(tree.poset(), a.members);
  std::vector<char> mark(tree.size(), 0);
  std::vector<Antichain> cycle{a};
  for (Antichain next = rho_unchecked(tree, a.members, mark); next != a;
       next = rho_unchecked(tree, next.members, mark)) {
    cycle.push_back(next);
  }
  return make_orbit(std::move(cycle), tree.root());
}

std::vector<Antichain> all_antichains(const RootedTree& tree, std::uint64_t budget) {
  std::uint64_t total = 0;
  try {
    total = count_antichains(tree);
  } catch (const std::overflow_error&) {
    throw BudgetExceeded("antichain count exceeds 64 bits");
  }
  if (total > budget) {
    throw BudgetExceeded("tree has " + std::to_string(total) +
                         " antichains, above the budget of " + std::to_string(budget));
  }
  // Antichains of the subtree at x: {x} together with every combination of
  // antichains of its children's subtrees.
  std::vector<std::vector<NodeSet>> per_node(tree.size());
  for (NodeId x = static_cast<NodeId>(tree.size()); x-- > 0;) {
    std::vector<NodeSet> combos{NodeSet{}};
    for (NodeId c : tree.children(x)) {
      std::vector<NodeSet> next;
      next.reserve(combos.size() * per_node[c].size());
      for (const auto& left : combos) {
        for (const auto& right : per_node[c]) {
          NodeSet joined = left;
          joined.insert(joined.end(), right.begin(), right.end());
          next.push_back(std::move(joined));
        }
      }
      combos = std::move(next);
      per_node[c].clear();
      per_node[c].shrink_to_fit();
    }
    combos.push_back(NodeSet{x});
    per_node[x] = std::move(combos);
  }
  std::vector<Antichain> out;
  out.reserve(per_node[0].size());
  for (auto& s : per_node[0]) out.push_back(Antichain{std::move(s)});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Orbit> all_orbits(const RootedTree& tree, std::uint64_t budget) {
  const auto antichains = all_antichains(tree, budget);
  std::unordered_set<NodeSet, NodeSetHash> seen;
  seen.reserve(antichains.size());
  std::vector<char> mark(tree.size(), 0);
  std::vector<Orbit> orbits;
  for (const auto& start : antichains) {
    if (seen.contains(start.members)) continue;
    // `start` is the smallest unseen antichain, hence the smallest member of
    // its orbit, so the cycle is already in canonical rotation.
    std::vector<Antichain> cycle{start};
    seen.insert(start.members);
    for (Antichain next = rho_unchecked(tree, start.members, mark); next != start;
         next = rho_unchecked(tree, next.members, mark)) {
      seen.insert(next.members);
      cycle.push_back(next);
    }
    orbits.push_back(make_orbit(std::move(cycle), tree.root()));
  }
  return orbits;
}

nlohmann::ordered_json orbits_to_json(const std::vector<Orbit>& orbits) {
  auto out = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    auto members = nlohmann::ordered_json::array();
    for (const auto& a : orbits[i].antichains) members.push_back(a.members);
    out.push_back({{"index", i},
                   {"size", orbits[i].size()},
                   {"delta", orbits[i].delta()},
                   {"antichains", std::move(members)}});
  }
  return out;
}

}  // namespace rowmotion
