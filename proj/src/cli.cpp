#include "rowmotion/cli.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "rowmotion/continuous.hpp"
#include "rowmotion/errors.hpp"
#include "rowmotion/families.hpp"
#include "rowmotion/poset.hpp"
#include "rowmotion/rowmotion.hpp"
#include "rowmotion/statistics.hpp"
#include "rowmotion/tiling.hpp"

namespace rowmotion::cli {

namespace {

struct Options {
  std::string verb;
  std::optional<std::string> tree;
  std::optional<std::string> family;
  std::optional<std::string> stat;
  std::optional<std::string> format;
  std::uint64_t budget = kDefaultAntichainBudget;
  std::uint64_t seed = 1;
  std::uint64_t max_iter = kDefaultMaxIter;
  std::string mode = "rational";
  std::optional<std::size_t> orbit;
  std::optional<std::string> witness;
  bool per_node = false;
  bool timing = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(std::ostream& out, const nlohmann::ordered_json& json) { out << json.dump(2) << '\n'; }

std::string pick_format(const Options& o, std::string fallback,
                        const std::set<std::string>& allowed) {
  const std::string format = o.format.value_or(std::move(fallback));
  if (!allowed.contains(format)) {
    std::string list;
    for (const auto& f : allowed) list += (list.empty() ? "" : "|") + f;
    throw UsageError(o.verb + " supports --format " + list + ", got '" + format + "'");
  }
  return format;
}

RootedTree input_tree(const Options& o) {
  if (o.tree) return parse_tree(*o.tree);
  if (o.family->starts_with("product:")) {
    throw UsageError("product posets are not rooted trees; use them with pl or birational");
  }
  return make_family(parse_family(*o.family));
}

std::string input_name(const Options& o) { return o.tree ? "tree:" + *o.tree : *o.family; }

Statistic required_stat(const Options& o) {
  if (!o.stat) throw UsageError(o.verb + " needs --stat");
  return parse_statistic(*o.stat);
}

Poset input_poset(const Options& o) {
  if (o.family && o.family->starts_with("product:")) {
    const std::string_view args = std::string_view(*o.family).substr(8);
    const auto comma = args.find(',');
    std::size_t p = 0, q = 0;
    const bool ok =
        comma != std::string_view::npos &&
        std::from_chars(args.data(), args.data() + comma, p).ptr == args.data() + comma &&
        std::from_chars(args.data() + comma + 1, args.data() + args.size(), q).ptr ==
            args.data() + args.size();
    if (!ok || p == 0 || q == 0 || p * q > 64) {
      throw InvalidInput("product needs product:P,Q with 1 <= P*Q <= 64");
    }
    return chain_product(p, q);
  }
  return input_tree(o).poset();
}

std::vector<std::size_t> selected_orbits(const Options& o, std::size_t count) {
  if (o.orbit) {
    if (*o.orbit >= count) {
      throw InvalidInput("orbit index " + std::to_string(*o.orbit) + " out of range (" +
                         std::to_string(count) + " orbits)");
    }
    return {*o.orbit};
  }
  std::vector<std::size_t> all(count);
  for (std::size_t i = 0; i < count; ++i) all[i] = i;
  return all;
}

std::string antichain_text(const Antichain& a) {
  std::string s = "{";
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    s += (i ? " " : "") + std::to_string(a.members[i]);
  }
  return s + "}";
}

int cmd_orbits(const Options& o, std::ostream& out) {
  const std::string format = pick_format(o, "json", {"json", "csv"});
  const RootedTree tree = input_tree(o);
  const auto orbits = all_orbits(tree, o.budget);
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["input"] = input_name(o);
    doc["tree"] = tree_to_json(tree);
    doc["antichainCount"] = count_antichains(tree);
    doc["orbitCount"] = orbits.size();
    doc["orbits"] = orbits_to_json(orbits);
    emit(out, doc);
  } else {
    out << "orbit,size,delta,antichains\n";
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      out << i << ',' << orbits[i].size() << ',' << orbits[i].delta() << ',';
      for (std::size_t j = 0; j < orbits[i].size(); ++j) {
        out << (j ? "|" : "") << antichain_text(orbits[i].antichains[j]);
      }
      out << '\n';
    }
  }
  return kExitOk;
}

int cmd_tiling(const Options& o, std::ostream& out, std::string fallback,
               const std::set<std::string>& allowed) {
  const std::string format = pick_format(o, std::move(fallback), allowed);
  const RootedTree tree = input_tree(o);
  const auto orbits = all_orbits(tree, o.budget);
  const auto chosen = selected_orbits(o, orbits.size());
  if (format == "svg" && chosen.size() != 1) {
    throw UsageError("svg output draws one tiling; pick one with --orbit");
  }
  if (format == "json") {
    auto list = nlohmann::ordered_json::array();
    for (std::size_t i : chosen) {
      const Tiling tiling = tiling_of_orbit(tree, orbits[i]);
      nlohmann::ordered_json row;
      row["orbit"] = i;
      row["size"] = orbits[i].size();
      row["delta"] = orbits[i].delta();
      row["valid"] = validate_tiling(tree, tiling).ok;
      row["tiling"] = tiling_to_json(tiling);
      list.push_back(std::move(row));
    }
    nlohmann::ordered_json doc;
    doc["input"] = input_name(o);
    doc["tilings"] = std::move(list);
    emit(out, doc);
  } else if (format == "svg") {
    out << render_tiling(tiling_of_orbit(tree, orbits[chosen[0]]), RenderFormat::svg);
  } else {
    bool first = true;
    for (std::size_t i : chosen) {
      if (!first) out << '\n';
      first = false;
      out << "orbit " << i << " (size " << orbits[i].size() << ")\n";
      out << render_tiling(tiling_of_orbit(tree, orbits[i]), RenderFormat::ascii);
    }
  }
  return kExitOk;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const std::string format = pick_format(o, "json", {"json", "csv"});
  const RootedTree tree = input_tree(o);
  const auto orbits = all_orbits(tree, o.budget);
  if (o.stat) {
    const Statistic stat = parse_statistic(*o.stat);
    if (format == "csv") {
      out << "orbit,size,delta,sum,average\n";
    }
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      const std::int64_t sum = orbit_sum(tree, stat, orbits[i]);
      Rational average(sum, static_cast<long>(orbits[i].size()));
      average.canonicalize();
      if (format == "csv") {
        out << i << ',' << orbits[i].size() << ',' << orbits[i].delta() << ',' << sum << ','
            << to_string(average) << '\n';
      } else {
        rows.push_back({{"orbit", i},
                        {"size", orbits[i].size()},
                        {"delta", orbits[i].delta()},
                        {"sum", sum},
                        {"average", to_string(average)}});
      }
    }
    if (format == "json") {
      nlohmann::ordered_json doc;
      doc["input"] = input_name(o);
      doc["statistic"] = to_string(stat);
      doc["rows"] = std::move(rows);
      emit(out, doc);
    }
    return kExitOk;
  }
  if (format == "csv") {
    out << statistics_table_csv(tree, orbits, o.per_node);
  } else {
    nlohmann::ordered_json doc;
    doc["input"] = input_name(o);
    doc["rows"] = statistics_table_json(tree, orbits, o.per_node);
    emit(out, doc);
  }
  return kExitOk;
}

int cmd_homomesy(const Options& o, std::ostream& out) {
  pick_format(o, "json", {"json"});
  const Statistic stat = required_stat(o);
  const RootedTree tree = input_tree(o);
  nlohmann::ordered_json doc;
  doc["input"] = input_name(o);
  doc["statistic"] = to_string(stat);
  const auto verdict = to_json(check_homomesy(tree, stat, o.budget));
  for (const auto& [k, v] : verdict.items()) doc[k] = v;
  emit(out, doc);
  return kExitOk;
}

// "4,7;8" -> ({4,7}, {8})
std::pair<Antichain, Antichain> parse_witness(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos || text.find(';', semi + 1) != std::string::npos) {
    throw UsageError("--witness expects two node lists separated by ';', e.g. 4,7;8");
  }
  auto nodes = [](std::string_view part) {
    NodeSet out;
    while (!part.empty()) {
      const auto comma = part.find(',');
      const auto item = part.substr(0, comma);
      NodeId x = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
      if (ec != std::errc{} || ptr != item.data() + item.size()) {
        throw UsageError("bad node id '" + std::string(item) + "' in --witness");
      }
      out.push_back(x);
      part = comma == std::string_view::npos ? std::string_view{} : part.substr(comma + 1);
    }
    return Antichain{make_node_set(out)};
  };
  const std::string_view all(text);
  return {nodes(all.substr(0, semi)), nodes(all.substr(semi + 1))};
}

int cmd_homometry(const Options& o, std::ostream& out) {
  pick_format(o, "json", {"json"});
  const Statistic stat = required_stat(o);
  const RootedTree tree = input_tree(o);
  std::optional<std::pair<Antichain, Antichain>> seeds;
  if (o.witness) {
    seeds = parse_witness(*o.witness);
    for (const auto* a : {&seeds->first, &seeds->second}) {
      for (NodeId x : a->members) {
        if (x >= tree.size()) throw InvalidInput("--witness names unknown node " + std::to_string(x));
      }
      if (!is_antichain(tree.poset(), a->members)) throw InvalidInput("--witness set is not an antichain");
    }
  }
  nlohmann::ordered_json doc;
  doc["input"] = input_name(o);
  doc["statistic"] = to_string(stat);
  const auto verdict = to_json(check_homometry(tree, stat, o.budget, seeds));
  for (const auto& [k, v] : verdict.items()) doc[k] = v;
  emit(out, doc);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  pick_format(o, "json", {"json"});
  if (!o.family) throw UsageError("verify needs --family");
  const FamilyReport report = verify_family(parse_family(*o.family), o.budget);
  emit(out, to_json(report));
  return report.all_match ? kExitOk : kExitMismatch;
}

int cmd_continuous(const Options& o, std::ostream& out, ContinuousMode mode) {
  pick_format(o, "json", {"json"});
  if (o.max_iter == 0) throw UsageError("--max-iter must be positive");
  const FieldSpec field = parse_field(o.mode);
  const Poset poset = input_poset(o);
  if (poset.size() == 0) throw InvalidInput("empty poset");
  ExperimentRecord record = run_experiment(poset, input_name(o), mode, field, o.seed, o.max_iter);
  if (!o.timing) record.wall_ms.reset();
  emit(out, to_json(record));
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
  auto* tree = sub->add_option("--tree", o.tree, "tree in parenthesis notation, e.g. \"(()())\"");
  auto* family = sub->add_option("--family", o.family, "family descriptor, e.g. star:3,3,2");
  tree->excludes(family);
  sub->add_option("--stat", o.stat, "statistic, e.g. chi, hatchi_x:3, 3*chi_x:4+chi_x:0");
  sub->add_option("--format", o.format, "json|csv|ascii|svg (verb dependent)");
  sub->add_option("--budget", o.budget, "maximum number of antichains")->capture_default_str();
  sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
  sub->add_option("--max-iter", o.max_iter, "maximum rowmotion iterations")
      ->capture_default_str();
  sub->add_option("--mode", o.mode, "rational or modp:P")->capture_default_str();
  sub->add_option("--orbit", o.orbit, "orbit index (tiling, render)");
  sub->add_option("--witness", o.witness,
                  "homometry: antichains whose orbits to report, e.g. 4,7;8");
  sub->add_flag("--per-node", o.per_node, "per-node columns in stats tables");
  sub->add_flag("--timing", o.timing, "include wall time in experiment records");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rowmotion orbits, tilings and statistics on rooted trees", "rowmotion"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> verbs = {
      {"orbits", "enumerate rowmotion orbits"},
      {"tiling", "tilings of orbits"},
      {"stats", "orbit statistic tables"},
      {"homomesy", "test a statistic for homomesy"},
      {"homometry", "test a statistic for homometry"},
      {"verify", "compare a family against its closed forms"},
      {"birational", "birational rowmotion order search"},
      {"pl", "piecewise-linear rowmotion order search"},
      {"render", "draw tilings as ASCII or SVG"},
  };
  for (const auto& [name, description] : verbs) {
    auto* sub = app.add_subcommand(name, description);
    add_common(sub, o);
    sub->callback([&o, verb = name] { o.verb = verb; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const bool needs_input = o.verb != "verify";
    if (needs_input && !o.tree && !o.family) throw UsageError(o.verb + " needs --tree or --family");
    if (o.witness && o.verb != "homometry") throw UsageError("--witness applies to homometry only");
    if (o.verb == "orbits") return cmd_orbits(o, out);
    if (o.verb == "tiling") return cmd_tiling(o, out, "json", {"json", "ascii", "svg"});
    if (o.verb == "render") return cmd_tiling(o, out, "ascii", {"ascii", "svg"});
    if (o.verb == "stats") return cmd_stats(o, out);
    if (o.verb == "homomesy") return cmd_homomesy(o, out);
    if (o.verb == "homometry") return cmd_homometry(o, out);
    if (o.verb == "verify") return cmd_verify(o, out);
    if (o.verb == "birational") return cmd_continuous(o, out, ContinuousMode::birational);
    if (o.verb == "pl") return cmd_continuous(o, out, ContinuousMode::pl);
    throw UsageError("unknown verb");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const ArithmeticError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  }
}

}  // namespace rowmotion::cli
