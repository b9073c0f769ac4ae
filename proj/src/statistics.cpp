#include "rowmotion/statistics.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "rowmotion/errors.hpp"

namespace rowmotion {

namespace {

bool is_ideal_kind(StatKind kind) {
  return kind == StatKind::hatchi || kind == StatKind::hatchi_x;
}

bool has_node(StatKind kind) { return kind == StatKind::chi_x || kind == StatKind::hatchi_x; }

void check_nodes(const RootedTree& tree, const Statistic& stat) {
  for (const auto& t : stat.terms()) {
    if (has_node(t.kind) && t.node >= tree.size()) {
      throw InvalidInput("statistic refers to unknown node " + std::to_string(t.node));
    }
  }
}

std::int64_t eval_terms(const Statistic& stat, const NodeSet& antichain, const NodeSet* ideal) {
  std::int64_t total = 0;
  for (const auto& t : stat.terms()) {
    std::int64_t value = 0;
    switch (t.kind) {
      case StatKind::chi:
        value = static_cast<std::int64_t>(antichain.size());
        break;
      case StatKind::chi_x:
        value = std::binary_search(antichain.begin(), antichain.end(), t.node) ? 1 : 0;
        break;
      case StatKind::hatchi:
        value = static_cast<std::int64_t>(ideal->size());
        break;
      case StatKind::hatchi_x:
        value = std::binary_search(ideal->begin(), ideal->end(), t.node) ? 1 : 0;
        break;
    }
    total += t.coefficient * value;
  }
  return total;
}

std::int64_t binomial2(std::int64_t m) { return m * (m - 1) / 2; }

}  // namespace

StatDomain Statistic::domain() const {
  bool antichain = false;
  bool ideal = false;
  for (const auto& t : terms_) (is_ideal_kind(t.kind) ? ideal : antichain) = true;
  if (antichain && ideal) return StatDomain::mixed;
  return ideal ? StatDomain::ideal : StatDomain::antichain;
}

Statistic operator+(Statistic a, const Statistic& b) {
  a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
  return a;
}

Statistic operator-(Statistic a, const Statistic& b) { return a + (-1) * b; }

Statistic operator*(std::int64_t k, Statistic s) {
  for (auto& t : s.terms_) t.coefficient *= k;
  return s;
}

Statistic parse_statistic(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw InvalidInput("empty statistic");

  std::vector<StatTerm> terms;
  std::size_t pos = 0;
  auto read_int = [&](std::size_t& p) -> std::optional<std::int64_t> {
    const std::size_t begin = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (p == begin) return std::nullopt;
    if (p - begin > 15) throw InvalidInput("number too large in statistic");
    return std::stoll(s.substr(begin, p - begin));
  };

  while (pos < s.size()) {
    std::int64_t sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!terms.empty()) {
      throw InvalidInput("expected '+' or '-' in statistic at position " + std::to_string(pos));
    }
    std::int64_t coefficient = 1;
    std::size_t p = pos;
    if (auto k = read_int(p); k && p < s.size() && s[p] == '*') {
      coefficient = *k;
      pos = p + 1;
    }
    std::size_t name_end = pos;
    while (name_end < s.size() &&
           (std::isalpha(static_cast<unsigned char>(s[name_end])) || s[name_end] == '_')) {
      ++name_end;
    }
    const std::string name = s.substr(pos, name_end - pos);
    pos = name_end;
    StatTerm term;
    term.coefficient = sign * coefficient;
    if (name == "chi") {
      term.kind = StatKind::chi;
    } else if (name == "hatchi") {
      term.kind = StatKind::hatchi;
    } else if (name == "chi_x" || name == "hatchi_x") {
      term.kind = name == "chi_x" ? StatKind::chi_x : StatKind::hatchi_x;
      if (pos >= s.size() || s[pos] != ':') throw InvalidInput(name + " needs ':NODE'");
      ++pos;
      const auto node = read_int(pos);
      if (!node) throw InvalidInput(name + " needs a node id");
      term.node = static_cast<NodeId>(*node);
    } else {
      throw InvalidInput("unknown statistic '" + name + "'");
    }
    terms.push_back(term);
  }
  return Statistic(std::move(terms));
}

std::string to_string(const Statistic& stat) {
  std::ostringstream out;
  bool first = true;
  for (const auto& t : stat.terms()) {
    std::int64_t k = t.coefficient;
    if (!first) {
      out << (k < 0 ? '-' : '+');
      k = k < 0 ? -k : k;
    } else if (k == -1) {
      out << '-';
      k = 1;
    }
    if (k != 1) out << k << '*';
    switch (t.kind) {
      case StatKind::chi: out << "chi"; break;
      case StatKind::hatchi: out << "hatchi"; break;
      case StatKind::chi_x: out << "chi_x:" << t.node; break;
      case StatKind::hatchi_x: out << "hatchi_x:" << t.node; break;
    }
    first = false;
  }
  return out.str();
}

std::int64_t eval_statistic(const RootedTree& tree, const Statistic& stat, const Antichain& a) {
  if (stat.domain() != StatDomain::antichain) {
    throw InvalidInput("statistic is not defined on antichains");
  }
  check_nodes(tree, stat);
  if (!is_antichain(tree.poset(), a.members)) throw InvalidInput("not an antichain");
  return eval_terms(stat, a.members, nullptr);
}

std::int64_t eval_statistic(const RootedTree& tree, const Statistic& stat, const Ideal& ideal) {
  if (stat.domain() != StatDomain::ideal) {
    throw InvalidInput("statistic is not defined on ideals");
  }
  check_nodes(tree, stat);
  if (!is_ideal(tree.poset(), ideal.members)) throw InvalidInput("not an ideal");
  return eval_terms(stat, {}, &ideal.members);
}

std::int64_t orbit_sum(const RootedTree& tree, const Statistic& stat, const Orbit& orbit) {
  check_nodes(tree, stat);
  const bool needs_ideal = stat.domain() != StatDomain::antichain;
  std::int64_t total = 0;
  for (const auto& a : orbit.antichains) {
    if (needs_ideal) {
      const NodeSet ideal = down_set(tree, a.members);
      total += eval_terms(stat, a.members, &ideal);
    } else {
      total += eval_terms(stat, a.members, nullptr);
    }
  }
  return total;
}

TilingSums orbit_sums_from_tiling(const RootedTree& tree, const Tiling& tiling) {
  const auto report = validate_tiling(tree, tiling);
  if (!report.ok) throw InvalidInput("invalid tiling: " + report.violation);
  const auto counts = tile_counts(tree, tiling);

  TilingSums sums;
  sums.hatchi_by_node.assign(tree.size(), 0);
  for (const auto& spec : tree.branches()) {
    const auto& count = counts.at(spec.interval);
    const auto m = static_cast<std::int64_t>(count.tiles);
    const auto c = static_cast<std::int64_t>(count.columns);
    const auto beta = static_cast<std::int64_t>(spec.beta);
    sums.chi_by_branch.push_back(m);
    sums.chi += beta * m;
    for (std::size_t j = 1; j <= spec.beta; ++j) {
      sums.hatchi_by_node[spec.nodes[j - 1]] = static_cast<std::int64_t>(j) * m + c;
    }
    sums.hatchi += binomial2(beta + 1) * m + beta * c;
  }
  return sums;
}

// ---------------------------------------------------------------------------
// Verdicts

namespace {

std::size_t orbit_containing(const std::vector<Orbit>& orbits, const Antichain& a) {
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const auto& members = orbits[i].antichains;
    if (std::find(members.begin(), members.end(), a) != members.end()) return i;
  }
  throw InvalidInput("antichain does not lie in any orbit");
}

OrbitWitness make_witness(const std::vector<Orbit>& orbits, const std::vector<std::int64_t>& sums,
                          std::size_t i) {
  return {i, orbits[i], sums[i]};
}

}  // namespace

HomomesyVerdict check_homomesy(const RootedTree& tree, const Statistic& stat,
                               const std::vector<Orbit>& orbits) {
  HomomesyVerdict verdict;
  std::vector<std::int64_t> sums;
  for (const auto& orbit : orbits) {
    sums.push_back(orbit_sum(tree, stat, orbit));
    verdict.averages.push_back(Rational(sums.back(), static_cast<long>(orbit.size())));
    verdict.averages.back().canonicalize();
  }
  verdict.homomesic = true;
  for (std::size_t i = 1; i < orbits.size(); ++i) {
    if (verdict.averages[i] != verdict.averages[0]) {
      verdict.homomesic = false;
      verdict.witness = {make_witness(orbits, sums, 0), make_witness(orbits, sums, i)};
      break;
    }
  }
  if (verdict.homomesic && !orbits.empty()) verdict.constant = verdict.averages[0];
  return verdict;
}

HomometryVerdict check_homometry(const RootedTree& tree, const Statistic& stat,
                                 const std::vector<Orbit>& orbits,
                                 const std::optional<std::pair<Antichain, Antichain>>& seeds) {
  HomometryVerdict verdict;
  std::vector<std::int64_t> sums;
  std::map<std::size_t, std::vector<std::size_t>> by_size;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    sums.push_back(orbit_sum(tree, stat, orbits[i]));
    by_size[orbits[i].size()].push_back(i);
  }
  for (const auto& [size, members] : by_size) {
    const bool agree = std::all_of(members.begin(), members.end(),
                                   [&](std::size_t i) { return sums[i] == sums[members[0]]; });
    if (agree) {
      verdict.class_table[size] = sums[members[0]];
      continue;
    }
    if (!verdict.witness) {
      std::size_t hi = members[0];
      std::size_t lo = members[0];
      for (std::size_t i : members) {
        if (sums[i] > sums[hi]) hi = i;
        if (sums[i] < sums[lo]) lo = i;
      }
      verdict.witness = {make_witness(orbits, sums, hi), make_witness(orbits, sums, lo)};
    }
  }
  verdict.homometric = !verdict.witness.has_value();
  if (!verdict.homometric) {
    verdict.class_table.clear();
    if (seeds) {
      const std::size_t a = orbit_containing(orbits, seeds->first);
      const std::size_t b = orbit_containing(orbits, seeds->second);
      if (orbits[a].size() == orbits[b].size() && sums[a] != sums[b]) {
        verdict.witness = {make_witness(orbits, sums, a), make_witness(orbits, sums, b)};
      }
    }
  }
  return verdict;
}

HomomesyVerdict check_homomesy(const RootedTree& tree, const Statistic& stat,
                               std::uint64_t budget) {
  check_nodes(tree, stat);
  return check_homomesy(tree, stat, all_orbits(tree, budget));
}

HomometryVerdict check_homometry(const RootedTree& tree, const Statistic& stat,
                                 std::uint64_t budget,
                                 const std::optional<std::pair<Antichain, Antichain>>& seeds) {
  check_nodes(tree, stat);
  return check_homometry(tree, stat, all_orbits(tree, budget), seeds);
}

// ---------------------------------------------------------------------------
// Tables

namespace {

struct Row {
  std::size_t size;
  int delta;
  std::int64_t chi;
  std::int64_t hatchi;
  std::vector<std::int64_t> chi_x;
  std::vector<std::int64_t> hatchi_x;
};

std::vector<Row> table_rows(const RootedTree& tree, const std::vector<Orbit>& orbits,
                            bool per_node) {
  std::vector<Row> rows;
  for (const auto& orbit : orbits) {
    Row row{orbit.size(), orbit.delta(), orbit_sum(tree, Statistic::chi(), orbit),
            orbit_sum(tree, Statistic::hatchi(), orbit), {}, {}};
    if (per_node) {
      for (NodeId x = 0; x < tree.size(); ++x) {
        row.chi_x.push_back(orbit_sum(tree, Statistic::chi_x(x), orbit));
        row.hatchi_x.push_back(orbit_sum(tree, Statistic::hatchi_x(x), orbit));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json witness_json(const OrbitWitness& w) {
  auto members = nlohmann::ordered_json::array();
  for (const auto& a : w.orbit.antichains) members.push_back(a.members);
  nlohmann::ordered_json out;
  out["orbit"] = w.orbit_index;
  out["size"] = w.orbit.size();
  out["delta"] = w.orbit.delta();
  out["sum"] = w.sum;
  out["antichains"] = std::move(members);
  return out;
}

}  // namespace

nlohmann::ordered_json statistics_table_json(const RootedTree& tree,
                                             const std::vector<Orbit>& orbits, bool per_node) {
  auto out = nlohmann::ordered_json::array();
  const auto rows = table_rows(tree, orbits, per_node);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    nlohmann::ordered_json row;
    row["orbit"] = i;
    row["size"] = rows[i].size;
    row["delta"] = rows[i].delta;
    row["chi"] = rows[i].chi;
    row["hatchi"] = rows[i].hatchi;
    if (per_node) {
      row["chi_x"] = rows[i].chi_x;
      row["hatchi_x"] = rows[i].hatchi_x;
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string statistics_table_csv(const RootedTree& tree, const std::vector<Orbit>& orbits,
                                 bool per_node) {
  std::ostringstream out;
  out << "orbit,size,delta,chi,hatchi";
  if (per_node) {
    for (NodeId x = 0; x < tree.size(); ++x) out << ",chi_x:" << x;
    for (NodeId x = 0; x < tree.size(); ++x) out << ",hatchi_x:" << x;
  }
  out << '\n';
  const auto rows = table_rows(tree, orbits, per_node);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << i << ',' << r.size << ',' << r.delta << ',' << r.chi << ',' << r.hatchi;
    for (auto v : r.chi_x) out << ',' << v;
    for (auto v : r.hatchi_x) out << ',' << v;
    out << '\n';
  }
  return out.str();
}

nlohmann::ordered_json to_json(const HomomesyVerdict& verdict) {
  nlohmann::ordered_json out;
  out["homomesic"] = verdict.homomesic;
  out["constant"] = verdict.constant ? nlohmann::ordered_json(to_string(*verdict.constant))
                                     : nlohmann::ordered_json(nullptr);
  auto averages = nlohmann::ordered_json::array();
  for (const auto& a : verdict.averages) averages.push_back(to_string(a));
  out["averages"] = std::move(averages);
  if (verdict.witness) {
    out["witness"] = {witness_json(verdict.witness->first), witness_json(verdict.witness->second)};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

nlohmann::ordered_json to_json(const HomometryVerdict& verdict) {
  nlohmann::ordered_json out;
  out["homometric"] = verdict.homometric;
  auto table = nlohmann::ordered_json::array();
  for (const auto& [size, sum] : verdict.class_table) {
    table.push_back({{"size", size}, {"sum", sum}});
  }
  out["classTable"] = std::move(table);
  if (verdict.witness) {
    out["witness"] = {witness_json(verdict.witness->first), witness_json(verdict.witness->second)};
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

}  // namespace rowmotion
