#pragma once

// The chi statistic family on antichains and ideals, orbit sums, and
// homomesy / homometry detection.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rowmotion/rowmotion.hpp"
#include "rowmotion/scalar.hpp"
#include "rowmotion/tiling.hpp"

namespace rowmotion {

enum class StatKind {
  chi,       // #A
  chi_x,     // [x in A]
  hatchi,    // #L
  hatchi_x,  // [x in L]
};

struct StatTerm {
  std::int64_t coefficient = 1;
  StatKind kind = StatKind::chi;
  NodeId node = 0;  // used by chi_x and hatchi_x only
  friend bool operator==(const StatTerm&, const StatTerm&) = default;
};

enum class StatDomain { antichain, ideal, mixed };

/// Integer linear combination of chi-family statistics.  Terms on ideals
/// are evaluated on an antichain A through its down-set.
class Statistic {
 public:
  Statistic() = default;
  explicit Statistic(std::vector<StatTerm> terms) : terms_(std::move(terms)) {}

  static Statistic chi() { return Statistic({{1, StatKind::chi, 0}}); }
  static Statistic hatchi() { return Statistic({{1, StatKind::hatchi, 0}}); }
  static Statistic chi_x(NodeId x) { return Statistic({{1, StatKind::chi_x, x}}); }
  static Statistic hatchi_x(NodeId x) { return Statistic({{1, StatKind::hatchi_x, x}}); }

  const std::vector<StatTerm>& terms() const { return terms_; }
  StatDomain domain() const;

  friend Statistic operator+(Statistic a, const Statistic& b);
  friend Statistic operator-(Statistic a, const Statistic& b);
  friend Statistic operator*(std::int64_t k, Statistic s);

 private:
  std::vector<StatTerm> terms_;
};

/// Parses `chi`, `hatchi`, `chi_x:NODE`, `hatchi_x:NODE` and integer
/// combinations such as `3*chi_x:4+1*chi_x:0` or `2*hatchi_x:3-hatchi_x:0`.
Statistic parse_statistic(std::string_view text);
std::string to_string(const Statistic& stat);

/// Throws InvalidInput on a domain mismatch or an unknown node.
std::int64_t eval_statistic(const RootedTree& tree, const Statistic& stat, const Antichain& a);
std::int64_t eval_statistic(const RootedTree& tree, const Statistic& stat, const Ideal& ideal);

/// Sum over the orbit; ideal terms use A -> down-set of A.
std::int64_t orbit_sum(const RootedTree& tree, const Statistic& stat, const Orbit& orbit);

/// Orbit sums read off a tiling through the tile counts m_I and c_I.
struct TilingSums {
  std::vector<std::int64_t> chi_by_branch;  // chi_x for x on branch i (indexed as branches())
  std::int64_t chi = 0;
  std::vector<std::int64_t> hatchi_by_node;  // indexed by node id
  std::int64_t hatchi = 0;
};

/// Throws InvalidInput on an invalid tiling.
TilingSums orbit_sums_from_tiling(const RootedTree& tree, const Tiling& tiling);

struct OrbitWitness {
  std::size_t orbit_index = 0;
  Orbit orbit;
  std::int64_t sum = 0;
};

struct HomomesyVerdict {
  bool homomesic = false;
  std::optional<Rational> constant;
  /// Two orbits with different averages when not homomesic.
  std::optional<std::pair<OrbitWitness, OrbitWitness>> witness;
  /// Exact average of every orbit, in all_orbits order.
  std::vector<Rational> averages;
};

struct HomometryVerdict {
  bool homometric = false;
  /// Orbit size -> common sum, filled when homometric.
  std::map<std::size_t, std::int64_t> class_table;
  /// Two equal-size orbits with different sums when not homometric.
  std::optional<std::pair<OrbitWitness, OrbitWitness>> witness;
};

HomomesyVerdict check_homomesy(const RootedTree& tree, const Statistic& stat,
                               std::uint64_t budget = kDefaultAntichainBudget);

/// When not homometric, the default witness is taken from the smallest orbit
/// size with disagreeing sums: the first orbit attaining the largest sum and
/// the first attaining the smallest.  Passing `witness_seeds` asks for the
/// orbits through those two antichains instead, provided they form a valid
/// witness (equal size, different sums).
HomometryVerdict check_homometry(
    const RootedTree& tree, const Statistic& stat,
    std::uint64_t budget = kDefaultAntichainBudget,
    const std::optional<std::pair<Antichain, Antichain>>& witness_seeds = std::nullopt);

/// Same verdicts over precomputed orbits.
HomomesyVerdict check_homomesy(const RootedTree& tree, const Statistic& stat,
                               const std::vector<Orbit>& orbits);
HomometryVerdict check_homometry(
    const RootedTree& tree, const Statistic& stat, const std::vector<Orbit>& orbits,
    const std::optional<std::pair<Antichain, Antichain>>& witness_seeds = std::nullopt);

/// Per-orbit rows {orbit, size, delta, chi, hatchi[, chi_x:i..., hatchi_x:i...]}.
nlohmann::ordered_json statistics_table_json(const RootedTree& tree,
                                             const std::vector<Orbit>& orbits, bool per_node);
std::string statistics_table_csv(const RootedTree& tree, const std::vector<Orbit>& orbits,
                                 bool per_node);

nlohmann::ordered_json to_json(const HomomesyVerdict& verdict);
nlohmann::ordered_json to_json(const HomometryVerdict& verdict);

}  // namespace rowmotion
