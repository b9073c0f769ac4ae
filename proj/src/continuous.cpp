#include "rowmotion/continuous.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <set>

#include "rowmotion/errors.hpp"

namespace rowmotion {

namespace {

bool is_zero(const Rational& v) { return sgn(v) == 0; }
bool is_zero(const ModP& v) { return v.is_zero(); }

Rational one_like(const Rational&) { return Rational(1); }
ModP one_like(const ModP& ref) { return ModP(1, ref.modulus()); }

Rational inverse(const Rational& v) { return 1 / v; }
ModP inverse(const ModP& v) { return v.inverse(); }

std::vector<NodeId> resolve_extension(const Poset& poset, std::span<const NodeId> extension) {
  if (extension.empty()) return linear_extension(poset);
  if (!is_linear_extension(poset, extension)) throw InvalidInput("not a linear extension");
  return {extension.begin(), extension.end()};
}

template <class Scalar>
void check_point(const Poset& poset, const LabeledPoint<Scalar>& f) {
  if (f.values.size() != poset.size()) {
    throw InvalidInput("labeling has " + std::to_string(f.values.size()) +
                       " values for a poset of size " + std::to_string(poset.size()));
  }
}

}  // namespace

std::string to_string(ContinuousMode mode) {
  return mode == ContinuousMode::pl ? "pl" : "birational";
}

bool in_order_polytope(const Poset& poset, const RationalPoint& f) {
  if (f.values.size() != poset.size()) return false;
  for (const auto& v : f.values) {
    if (v < 0 || v > 1) return false;
  }
  for (const auto& c : poset.covers()) {
    if (f.values[c.lower] > f.values[c.upper]) return false;
  }
  return true;
}

RationalPoint indicator_point(const Poset& poset, const Ideal& ideal) {
  if (!is_ideal(poset, ideal.members)) throw InvalidInput("not an ideal");
  RationalPoint f{ContinuousMode::pl, std::vector<Rational>(poset.size(), Rational(1))};
  for (NodeId x : ideal.members) f.values[x] = 0;
  return f;
}

std::optional<Ideal> ideal_of_indicator(const Poset& poset, const RationalPoint& f) {
  if (f.values.size() != poset.size()) return std::nullopt;
  Ideal ideal;
  for (NodeId x = 0; x < poset.size(); ++x) {
    if (f.values[x] == 0) {
      ideal.members.push_back(x);
    } else if (f.values[x] != 1) {
      return std::nullopt;
    }
  }
  if (!is_ideal(poset, ideal.members)) return std::nullopt;
  return ideal;
}

RationalPoint pl_toggle(const Poset& poset, const RationalPoint& f, NodeId x) {
  check_point(poset, f);
  if (!poset.contains(x)) throw InvalidInput("unknown node " + std::to_string(x));
  if (!in_order_polytope(poset, f)) throw InvalidInput("labeling is not in the order polytope");
  Rational lo = 0;
  for (NodeId y : poset.lower_covers(x)) lo = std::max(lo, f.values[y]);
  Rational hi = 1;
  for (NodeId z : poset.upper_covers(x)) hi = std::min(hi, f.values[z]);
  RationalPoint g = f;
  g.values[x] = lo + hi - f.values[x];
  return g;
}

RationalPoint pl_rowmotion(const Poset& poset, const RationalPoint& f,
                           std::span<const NodeId> extension) {
  const auto order = resolve_extension(poset, extension);
  RationalPoint g = f;
  for (auto it = order.rbegin(); it != order.rend(); ++it) g = pl_toggle(poset, g, *it);
  return g;
}

template <class Scalar>
LabeledPoint<Scalar> birational_toggle(const Poset& poset, const LabeledPoint<Scalar>& f,
                                       NodeId x) {
  check_point(poset, f);
  if (!poset.contains(x)) throw InvalidInput("unknown node " + std::to_string(x));
  const Scalar& fx = f.values[x];
  if (is_zero(fx)) throw ArithmeticError("zero value at node " + std::to_string(x));
  const Scalar one = one_like(fx);

  Scalar below = one;
  if (!poset.lower_covers(x).empty()) {
    below = f.values[poset.lower_covers(x).front()];
    for (std::size_t i = 1; i < poset.lower_covers(x).size(); ++i) {
      below = below + f.values[poset.lower_covers(x)[i]];
    }
  }
  Scalar above = one;
  if (!poset.upper_covers(x).empty()) {
    bool first = true;
    for (NodeId z : poset.upper_covers(x)) {
      if (is_zero(f.values[z])) throw ArithmeticError("zero value at node " + std::to_string(z));
      const Scalar r = inverse(f.values[z]);
      above = first ? r : above + r;
      first = false;
    }
  }
  const Scalar denominator = fx * above;
  if (is_zero(denominator)) {
    throw ArithmeticError("vanishing denominator toggling node " + std::to_string(x));
  }
  const Scalar value = below / denominator;
  if (is_zero(value)) throw ArithmeticError("toggle at node " + std::to_string(x) + " gives 0");
  LabeledPoint<Scalar> g = f;
  g.values[x] = value;
  return g;
}

template <class Scalar>
LabeledPoint<Scalar> birational_rowmotion(const Poset& poset, const LabeledPoint<Scalar>& f,
                                          std::span<const NodeId> extension) {
  const auto order = resolve_extension(poset, extension);
  LabeledPoint<Scalar> g = f;
  for (auto it = order.rbegin(); it != order.rend(); ++it) g = birational_toggle(poset, g, *it);
  return g;
}

template RationalPoint birational_toggle(const Poset&, const RationalPoint&, NodeId);
template ModPPoint birational_toggle(const Poset&, const ModPPoint&, NodeId);
template RationalPoint birational_rowmotion(const Poset&, const RationalPoint&,
                                            std::span<const NodeId>);
template ModPPoint birational_rowmotion(const Poset&, const ModPPoint&, std::span<const NodeId>);

std::vector<NodeId> random_linear_extension(const Poset& poset, std::mt19937_64& rng) {
  std::vector<std::size_t> pending(poset.size());
  std::vector<NodeId> ready;
  for (NodeId x = 0; x < poset.size(); ++x) {
    pending[x] = poset.lower_covers(x).size();
    if (pending[x] == 0) ready.push_back(x);
  }
  std::vector<NodeId> order;
  while (!ready.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
    const std::size_t i = pick(rng);
    const NodeId x = ready[i];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(i));
    order.push_back(x);
    for (NodeId z : poset.upper_covers(x)) {
      if (--pending[z] == 0) ready.push_back(z);
    }
  }
  return order;
}

RationalPoint random_pl_point(const Poset& poset, std::mt19937_64& rng) {
  // There are over 3000 distinct fractions strictly between 0 and 1 with
  // denominator at most 100.
  if (poset.size() > 1000) throw InvalidInput("poset too large for random PL points");
  std::uniform_int_distribution<int> draw(1, 100);
  std::set<Rational> chosen;
  while (chosen.size() < poset.size()) {
    const int a = draw(rng);
    const int b = draw(rng);
    if (a == b) continue;
    Rational r(std::min(a, b), std::max(a, b));
    r.canonicalize();
    chosen.insert(r);
  }
  const auto order = random_linear_extension(poset, rng);
  RationalPoint f{ContinuousMode::pl, std::vector<Rational>(poset.size())};
  auto it = chosen.begin();
  for (NodeId x : order) f.values[x] = *it++;
  return f;
}

RationalPoint random_birational_point(const Poset& poset, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> draw(1, 100);
  RationalPoint f{ContinuousMode::birational, {}};
  for (std::size_t i = 0; i < poset.size(); ++i) {
    const int num = draw(rng);
    const int den = draw(rng);
    Rational r(num, den);
    r.canonicalize();
    f.values.push_back(r);
  }
  return f;
}

ModPPoint reduce_mod(const RationalPoint& f, std::uint64_t p) {
  ModPPoint g{f.mode, {}};
  for (const auto& v : f.values) {
    mpz_class num = v.get_num() % static_cast<unsigned long>(p);
    mpz_class den = v.get_den() % static_cast<unsigned long>(p);
    if (num < 0) num += static_cast<unsigned long>(p);
    if (den == 0) throw ArithmeticError("denominator vanishes mod " + std::to_string(p));
    const ModP value = ModP(num.get_ui(), p) / ModP(den.get_ui(), p);
    if (value.is_zero() && f.mode == ContinuousMode::birational) {
      throw ArithmeticError("value vanishes mod " + std::to_string(p));
    }
    g.values.push_back(value);
  }
  return g;
}

namespace {

std::size_t max_bits(const RationalPoint& f) {
  std::size_t bits = 0;
  for (const auto& v : f.values) bits = std::max(bits, bit_length(v));
  return bits;
}

std::size_t max_bits(const ModPPoint&) { return 0; }

template <class Scalar>
OrderSearchResult search(const Poset& poset, const LabeledPoint<Scalar>& f0,
                         std::uint64_t max_iter) {
  if (max_iter == 0) throw InvalidInput("max_iter must be positive");
  check_point(poset, f0);
  const auto order = linear_extension(poset);
  OrderSearchResult result;
  result.mode = f0.mode;
  result.max_iter = max_iter;
  result.max_bit_length = max_bits(f0);
  LabeledPoint<Scalar> f = f0;
  for (std::uint64_t k = 1; k <= max_iter; ++k) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      f = f.mode == ContinuousMode::pl ? pl_rowmotion(poset, f, order)
                                       : birational_rowmotion(poset, f, order);
    } else {
      f = birational_rowmotion(poset, f, order);
    }
    result.iterations_used = k;
    result.max_bit_length = std::max(result.max_bit_length, max_bits(f));
    if (f == f0) {
      result.finite = true;
      result.order = k;
      return result;
    }
  }
  return result;
}

}  // namespace

OrderSearchResult order_search(const Poset& poset, const RationalPoint& f0,
                               std::uint64_t max_iter) {
  return search(poset, f0, max_iter);
}

OrderSearchResult order_search(const Poset& poset, const ModPPoint& f0, std::uint64_t max_iter) {
  if (f0.mode != ContinuousMode::birational) {
    throw InvalidInput("prime-field labelings support birational mode only");
  }
  return search(poset, f0, max_iter);
}

FieldSpec parse_field(std::string_view text) {
  if (text == "rational") return {};
  if (!text.starts_with("modp:")) {
    throw InvalidInput("mode must be 'rational' or 'modp:P', got '" + std::string(text) + "'");
  }
  const std::string_view digits = text.substr(5);
  std::uint64_t p = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw InvalidInput("bad modulus '" + std::string(digits) + "'");
  }
  if (p < 3 || p >= (std::uint64_t{1} << 62) || !is_prime(p)) {
    throw InvalidInput("modulus must be a prime in [3, 2^62)");
  }
  return {p};
}

std::string to_string(const FieldSpec& field) {
  return field.prime ? "modp:" + std::to_string(*field.prime) : "rational";
}

ExperimentRecord run_experiment(const Poset& poset, std::string poset_name, ContinuousMode mode,
                                const FieldSpec& field, std::uint64_t seed,
                                std::uint64_t max_iter) {
  if (mode == ContinuousMode::pl && field.prime) {
    throw InvalidInput("PL rowmotion needs exact rationals");
  }
  const auto started = std::chrono::steady_clock::now();
  ExperimentRecord record;
  record.poset = std::move(poset_name);
  record.mode = mode;
  record.field = field;
  record.seed = seed;
  record.max_iter = max_iter;

  std::mt19937_64 rng(seed);
  auto draw = [&] {
    return mode == ContinuousMode::pl ? random_pl_point(poset, rng)
                                      : random_birational_point(poset, rng);
  };
  if (!field.prime) {
    record.result = order_search(poset, draw(), max_iter);
  } else {
    while (true) {
      try {
        record.result = order_search(poset, reduce_mod(draw(), *field.prime), max_iter);
        break;
      } catch (const ArithmeticError&) {
        if (record.restarts == kModPRestarts) {
          throw ArithmeticError("zero denominator after " + std::to_string(kModPRestarts) +
                                " restarts");
        }
        ++record.restarts;
      }
    }
  }
  record.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  return record;
}

nlohmann::ordered_json to_json(const ExperimentRecord& record) {
  nlohmann::ordered_json out;
  out["poset"] = record.poset;
  out["mode"] = to_string(record.mode);
  out["field"] = to_string(record.field);
  out["seed"] = record.seed;
  out["maxIter"] = record.max_iter;
  out["outcome"] = record.result.finite ? "FiniteOrder" : "NoRepeatWithin";
  out["order"] = record.result.finite ? nlohmann::ordered_json(record.result.order)
                                      : nlohmann::ordered_json(nullptr);
  out["iterationsUsed"] = record.result.iterations_used;
  out["restarts"] = record.restarts;
  if (!record.field.prime) out["maxBitLength"] = record.result.max_bit_length;
  if (record.wall_ms) out["wallTimeMs"] = *record.wall_ms;
  return out;
}

}  // namespace rowmotion
