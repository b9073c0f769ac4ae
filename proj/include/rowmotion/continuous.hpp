#pragma once

// Piecewise-linear and birational rowmotion on labelings of a finite poset,
// and first-return order search.
//
// Labelings live on P-hat = P + {0-hat, 1-hat}; only the values on P are
// stored.  Boundary values are fixed: f(0-hat) = 0, f(1-hat) = 1 in PL mode,
// f(0-hat) = f(1-hat) = 1 in birational mode.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "rowmotion/poset.hpp"
#include "rowmotion/rowmotion.hpp"
#include "rowmotion/scalar.hpp"

namespace rowmotion {

enum class ContinuousMode { pl, birational };

std::string to_string(ContinuousMode mode);

template <class Scalar>
struct LabeledPoint {
  ContinuousMode mode = ContinuousMode::pl;
  std::vector<Scalar> values;  // indexed by node id
  friend bool operator==(const LabeledPoint&, const LabeledPoint&) = default;
};

using RationalPoint = LabeledPoint<Rational>;
using ModPPoint = LabeledPoint<ModP>;

/// Order-preserving with values in [0, 1].
bool in_order_polytope(const Poset& poset, const RationalPoint& f);

/// The point of the order polytope attached to an ideal L: 0 on L and 1 on
/// P \ L.
RationalPoint indicator_point(const Poset& poset, const Ideal& ideal);

/// Inverse of indicator_point; nullopt if f is not a 0/1 point of that form.
std::optional<Ideal> ideal_of_indicator(const Poset& poset, const RationalPoint& f);

/// g(x) = M + m - f(x), M the max over lower covers and m the min over upper
/// covers in P-hat.  Throws InvalidInput if f is not in the order polytope.
RationalPoint pl_toggle(const Poset& poset, const RationalPoint& f, NodeId x);

/// sigma_{x_1} ... sigma_{x_p}(f), sigma_{x_p} applied first.  The default
/// extension is linear_extension(poset).
RationalPoint pl_rowmotion(const Poset& poset, const RationalPoint& f,
                           std::span<const NodeId> extension = {});

/// g(x) = (sum of f over lower covers) / (f(x) * sum of 1/f over upper
/// covers) in P-hat.  Throws ArithmeticError on a zero value or a vanishing
/// denominator.
template <class Scalar>
LabeledPoint<Scalar> birational_toggle(const Poset& poset, const LabeledPoint<Scalar>& f,
                                       NodeId x);

template <class Scalar>
LabeledPoint<Scalar> birational_rowmotion(const Poset& poset, const LabeledPoint<Scalar>& f,
                                          std::span<const NodeId> extension = {});

/// Uniformly random linear extension.
std::vector<NodeId> random_linear_extension(const Poset& poset, std::mt19937_64& rng);

/// Distinct rationals with numerator and denominator in [1, 100], sorted and
/// placed along a random linear extension, so the point is interior.
RationalPoint random_pl_point(const Poset& poset, std::mt19937_64& rng);

/// Values n/d with n, d uniform in [1, 100].
RationalPoint random_birational_point(const Poset& poset, std::mt19937_64& rng);

/// Reduction mod p.  Throws ArithmeticError if a denominator or a value
/// vanishes mod p.
ModPPoint reduce_mod(const RationalPoint& f, std::uint64_t p);

struct OrderSearchResult {
  bool finite = false;          // FiniteOrder(order) vs NoRepeatWithin(max_iter)
  std::uint64_t order = 0;
  std::uint64_t max_iter = 0;
  std::uint64_t iterations_used = 0;
  ContinuousMode mode = ContinuousMode::pl;
  std::size_t max_bit_length = 0;  // exact rationals only
};

/// Iterates rowmotion from f0 until the first exact return, at most
/// max_iter steps.  Throws ArithmeticError on a zero denominator.
OrderSearchResult order_search(const Poset& poset, const RationalPoint& f0,
                               std::uint64_t max_iter);
OrderSearchResult order_search(const Poset& poset, const ModPPoint& f0, std::uint64_t max_iter);

inline constexpr std::uint64_t kDefaultMaxIter = 100'000;
inline constexpr int kModPRestarts = 10;

/// Field for an experiment: exact rationals, or a prime field.
struct FieldSpec {
  std::optional<std::uint64_t> prime;  // empty for exact rationals
};

/// `rational` or `modp:P`.  Throws InvalidInput on a non-prime or a modulus
/// outside [3, 2^62).
FieldSpec parse_field(std::string_view text);
std::string to_string(const FieldSpec& field);

struct ExperimentRecord {
  std::string poset;
  ContinuousMode mode = ContinuousMode::birational;
  FieldSpec field;
  std::uint64_t seed = 0;
  std::uint64_t max_iter = 0;
  OrderSearchResult result;
  int restarts = 0;
  std::optional<double> wall_ms;
};

/// Draws a random start from `seed` and runs order_search.  In prime-field
/// mode the start is the reduction of the rational start drawn from the same
/// generator; a zero denominator resamples, up to kModPRestarts times, then
/// throws ArithmeticError.  PL mode requires exact rationals.
ExperimentRecord run_experiment(const Poset& poset, std::string poset_name, ContinuousMode mode,
                                const FieldSpec& field, std::uint64_t seed,
                                std::uint64_t max_iter);

/// {poset, mode, field, seed, maxIter, outcome, order, iterationsUsed,
///  restarts, maxBitLength[, wallTimeMs]}.
nlohmann::ordered_json to_json(const ExperimentRecord& record);

}  // namespace rowmotion
