#pragma once

// The named tree families, the graft operation, closed-form orbit profiles
// and their verification against enumeration.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rowmotion/poset.hpp"
#include "rowmotion/rowmotion.hpp"
#include "rowmotion/scalar.hpp"

namespace rowmotion {

struct Star {
  std::vector<int> alphas;  // alpha_i = beta_i + 1
};
struct ExtendedStar {
  int b = 1;
  std::vector<int> alphas;
};
/// Intervals {([3],a), ([2],b), ([1,1],c), ([2,2],d), ([3,3],e)}.
struct ThreeLeaf {
  int a = 1, b = 1, c = 1, d = 1, e = 1;
};
struct Tk {
  int k = 2;
};
struct Comb {
  int n = 1;
};
struct ExtendedComb {
  int n = 1;
  int k = 1;
};
struct Zipper {
  int n = 1;
};
struct CompleteBinary {
  int depth = 1;
};

using FamilyDescriptor =
    std::variant<Star, ExtendedStar, ThreeLeaf, Tk, Comb, ExtendedComb, Zipper, CompleteBinary>;

/// `star:3,3,2`, `estar:b=2;3,3,2`, `threeleaf:1,2,1,1,1`, `tk:3`, `comb:4`,
/// `ecomb:n=3,k=2`, `zipper:2`, `cbt:3`.
FamilyDescriptor parse_family(std::string_view text);
std::string to_string(const FamilyDescriptor& desc);

/// Throws InvalidInput when the descriptor's parameters are out of range.
void validate(const FamilyDescriptor& desc);

RootedTree make_family(const FamilyDescriptor& desc);

/// A chain of `length` nodes.  Requires length >= 1.
RootedTree chain_tree(std::size_t length);

/// New root branch of b nodes whose top node has children root(left),
/// root(right) in that order.
RootedTree graft(const RootedTree& left, const RootedTree& right, std::size_t b);

/// One class of orbits sharing size and statistic sums.
struct ProfileClass {
  std::string label;
  std::int64_t orbit_size = 0;
  std::int64_t orbit_count = 0;
  Rational chi_sum;
  Rational hatchi_sum;
  int delta = 0;
  friend bool operator==(const ProfileClass&, const ProfileClass&) = default;
};

struct OrbitProfile {
  std::vector<ProfileClass> classes;
  std::map<std::string, std::int64_t> parameters;

  /// Sum of size * count.
  std::int64_t antichain_total() const;
};

/// Closed forms for every family with a theorem.  Throws InvalidInput for
/// ThreeLeaf and CompleteBinary.
OrbitProfile predicted_profile(const FamilyDescriptor& desc);

/// The profile of a chain: one orbit of size length + 1 through 0-hat.
OrbitProfile chain_profile(std::size_t length);

/// Profile read off an enumeration, one class per distinct
/// (size, delta, chi, hatchi), labels O1, O2, ... in orbit order.
OrbitProfile observed_profile(const RootedTree& tree, const std::vector<Orbit>& orbits);

/// Classes merged by (size, delta, chi, hatchi) and sorted by
/// (size, delta, chi, hatchi).  The label of the first member is kept.
OrbitProfile normalized(const OrbitProfile& profile);

/// Orbits of graft(T', T'', b) from the profiles of T' and T''.  Each side
/// needs exactly one delta = 1 class of count 1.  Throws InvalidInput on
/// malformed profiles.
OrbitProfile combine_profiles(const OrbitProfile& left, const OrbitProfile& right,
                              std::int64_t b);

/// Lengthens the root branch by delta_beta nodes.  Throws InvalidInput when
/// the profile lacks a single delta = 1 orbit.
OrbitProfile extend_root_transfer(const OrbitProfile& profile, std::int64_t delta_beta);

struct VerifyEntry {
  std::string label;
  std::string field;
  std::string predicted;
  std::string observed;
  bool match = false;
};

struct FamilyReport {
  std::string family;
  std::size_t antichains = 0;
  std::size_t orbits = 0;
  std::string method;  // closed form, combine, or homometry check
  std::optional<OrbitProfile> predicted;
  OrbitProfile observed;
  std::vector<VerifyEntry> entries;
  bool all_match = false;
};

/// Enumerates the family instance and diffs it against its prediction.
/// ThreeLeaf is predicted through combine_profiles; CompleteBinary is
/// checked for the failure of homometry for chi and hatchi.  Throws
/// BudgetExceeded.
FamilyReport verify_family(const FamilyDescriptor& desc,
                           std::uint64_t budget = kDefaultAntichainBudget);

nlohmann::ordered_json to_json(const OrbitProfile& profile);
nlohmann::ordered_json to_json(const FamilyReport& report);

}  // namespace rowmotion
