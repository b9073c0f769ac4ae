#pragma once

// Rowmotion on antichains and on lower order ideals, toggles, and orbit
// enumeration.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "rowmotion/poset.hpp"

namespace rowmotion {

struct Antichain {
  NodeSet members;
  friend auto operator<=>(const Antichain&, const Antichain&) = default;
};

/// A lower order ideal.
struct Ideal {
  NodeSet members;
  friend auto operator<=>(const Ideal&, const Ideal&) = default;
};

inline constexpr std::uint64_t kDefaultAntichainBudget = 1'000'000;

/// A rowmotion orbit, rotated so that the lexicographically smallest
/// antichain comes first.  Element i + 1 is rho of element i (cyclically).
struct Orbit {
  std::vector<Antichain> antichains;
  /// True iff {root} (and therefore the empty antichain) lies in the orbit.
  bool contains_root = false;

  std::size_t size() const { return antichains.size(); }
  int delta() const { return contains_root ? 1 : 0; }
  friend bool operator==(const Orbit&, const Orbit&) = default;
};

/// Rotates a rho-cycle into canonical form.
Orbit make_orbit(std::vector<Antichain> cycle, NodeId root);

/// rho(A) = min of the complement of the down-set of A.  Throws
/// InvalidInput if A is not an antichain.
Antichain rho_antichain(const RootedTree& tree, const Antichain& a);

/// rho-hat(L) = down-set of rho(max L).  Throws InvalidInput if L is not
/// downward closed.
Ideal rho_ideal(const RootedTree& tree, const Ideal& ideal);

/// L xor {x} if that is an ideal, else L.
Ideal toggle(const Poset& poset, const Ideal& ideal, NodeId x);

/// t_{x_1} t_{x_2} ... t_{x_p}(L), with t_{x_p} applied first.
Ideal rho_via_toggles(const Poset& poset, const Ideal& ideal,
                      std::span<const NodeId> extension);

Ideal to_ideal(const RootedTree& tree, const Antichain& a);
Antichain to_antichain(const RootedTree& tree, const Ideal& ideal);

/// Iterates rho from A until it returns.
Orbit orbit_of(const RootedTree& tree, const Antichain& a);

/// All antichains in lexicographic order of their sorted id lists.  Throws
/// BudgetExceeded when there are more than `budget`.
std::vector<Antichain> all_antichains(const RootedTree& tree,
                                      std::uint64_t budget = kDefaultAntichainBudget);

/// Partition of all antichains into orbits, ordered by canonical
/// representative.  Throws BudgetExceeded when #A(T) > budget.
std::vector<Orbit> all_orbits(const RootedTree& tree,
                              std::uint64_t budget = kDefaultAntichainBudget);

/// {index, size, delta, antichains} records.
nlohmann::ordered_json orbits_to_json(const std::vector<Orbit>& orbits);

}  // namespace rowmotion
