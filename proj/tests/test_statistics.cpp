#include "doctest.h"

#include <random>

#include "oracle.hpp"
#include "rowmotion/errors.hpp"
#include "rowmotion/statistics.hpp"
#include "test_trees.hpp"

using namespace rowmotion;

namespace {

// orbit sums of chi, hatchi and the per-node indicators, straight from sets
struct OracleSums {
  std::int64_t chi = 0, hatchi = 0;
  std::vector<std::int64_t> chi_x, hatchi_x;
};

OracleSums oracle_sums(const oracle::Tree& o, const std::vector<oracle::Set>& orbit) {
  OracleSums s;
  s.chi_x.assign(o.n, 0);
  s.hatchi_x.assign(o.n, 0);
  for (const auto& a : orbit) {
    const auto l = oracle::down(o, a);
    s.chi += static_cast<std::int64_t>(a.size());
    s.hatchi += static_cast<std::int64_t>(l.size());
    for (int x : a) ++s.chi_x[x];
    for (int x : l) ++s.hatchi_x[x];
  }
  return s;
}

std::int64_t oracle_value(const Statistic& stat, const OracleSums& s) {
  std::int64_t total = 0;
  for (const auto& term : stat.terms()) {
    switch (term.kind) {
      case StatKind::chi: total += term.coefficient * s.chi; break;
      case StatKind::hatchi: total += term.coefficient * s.hatchi; break;
      case StatKind::chi_x: total += term.coefficient * s.chi_x[term.node]; break;
      case StatKind::hatchi_x: total += term.coefficient * s.hatchi_x[term.node]; break;
    }
  }
  return total;
}

Antichain ac(std::initializer_list<NodeId> nodes) { return Antichain{make_node_set(nodes)}; }

}  // namespace

TEST_CASE("eval_statistic") {
  const auto t = parse_tree(test_trees::kFiveLeaf);
  CHECK(eval_statistic(t, Statistic::chi(), Antichain{}) == 0);
  CHECK(eval_statistic(t, Statistic::chi(), ac({test_trees::kU, test_trees::kX})) == 2);
  CHECK(eval_statistic(t, Statistic::chi_x(test_trees::kU), ac({test_trees::kU})) == 1);
  CHECK(eval_statistic(t, Statistic::chi_x(test_trees::kV), ac({test_trees::kU})) == 0);
  NodeSet all(t.size());
  for (NodeId i = 0; i < t.size(); ++i) all[i] = i;
  CHECK(eval_statistic(t, Statistic::hatchi(), Ideal{all}) == 15);
  CHECK(eval_statistic(t, Statistic::hatchi_x(3), Ideal{all}) == 1);
  CHECK(eval_statistic(t, Statistic::hatchi_x(3), Ideal{{0}}) == 0);
  const auto combo = parse_statistic("2*hatchi_x:1-hatchi_x:0");
  CHECK(eval_statistic(t, combo, Ideal{{0, 1}}) == 1);

  CHECK_THROWS_AS(eval_statistic(t, Statistic::hatchi(), Antichain{}), InvalidInput);
  CHECK_THROWS_AS(eval_statistic(t, Statistic::chi(), Ideal{}), InvalidInput);
  CHECK_THROWS_AS(eval_statistic(t, Statistic::chi_x(99), Antichain{}), InvalidInput);
  CHECK_THROWS_AS(eval_statistic(t, Statistic::chi(), Antichain{{0, 1}}), InvalidInput);
  CHECK_THROWS_AS(eval_statistic(t, Statistic::hatchi(), Ideal{{1}}), InvalidInput);
  // mixed statistics only make sense over orbits
  CHECK(parse_statistic("chi+hatchi").domain() == StatDomain::mixed);
  CHECK_THROWS_AS(eval_statistic(t, parse_statistic("chi+hatchi"), Antichain{}), InvalidInput);
}

TEST_CASE("parse_statistic and to_string") {
  CHECK(parse_statistic("chi").terms() == Statistic::chi().terms());
  CHECK(parse_statistic(" hatchi_x : 4 ").terms() == Statistic::hatchi_x(4).terms());
  const auto s = parse_statistic("3*chi_x:4+1*chi_x:0");
  CHECK(s.terms() == std::vector<StatTerm>{{3, StatKind::chi_x, 4}, {1, StatKind::chi_x, 0}});
  CHECK(to_string(s) == "3*chi_x:4+chi_x:0");
  CHECK(to_string(parse_statistic("-chi+2*hatchi")) == "-chi+2*hatchi");
  CHECK(to_string(parse_statistic(to_string(s))) == to_string(s));
  CHECK(to_string(parse_statistic("-3*chi")) == "-3*chi");
  CHECK((3 * Statistic::chi_x(4) + Statistic::chi_x(0)).terms() == s.terms());
  CHECK(to_string(Statistic::chi_x(2) - Statistic::chi_x(1)) == "chi_x:2-chi_x:1");
  for (const char* bad : {"", "chi_x", "chi_x:", "foo", "chi++chi", "2chi", "chi 3",
                          "99999999999999999999*chi"}) {
    CHECK_THROWS_AS(parse_statistic(bad), InvalidInput);
  }
}

TEST_CASE("orbit sums on small examples") {
  const auto one = parse_tree("()");
  CHECK(orbit_sum(one, Statistic::chi(), all_orbits(one).at(0)) == 1);

  const auto s = parse_tree(test_trees::kS332);
  for (const auto& orbit : all_orbits(s)) {
    const auto chi = orbit_sum(s, Statistic::chi(), orbit);
    CHECK(chi == (orbit.contains_root ? 12 : 11));
    CHECK(orbit_sum(s, Statistic::hatchi(), orbit) == 21);
    const auto sums = orbit_sums_from_tiling(s, tiling_of_orbit(s, orbit));
    CHECK(sums.chi == chi);
    CHECK(sums.hatchi == 21);
    // same-branch indicators agree
    CHECK(orbit_sum(s, Statistic::chi_x(1) - Statistic::chi_x(2), orbit) == 0);
  }
}

TEST_CASE("homomesy") {
  const auto s = parse_tree(test_trees::kS332);

  const auto star = check_homomesy(s, parse_statistic("3*chi_x:1+chi_x:0"));
  CHECK(star.homomesic);
  REQUIRE(star.constant);
  CHECK(*star.constant == Rational(1));
  CHECK_FALSE(star.witness);

  const auto chi = check_homomesy(s, Statistic::chi());
  CHECK_FALSE(chi.homomesic);
  CHECK_FALSE(chi.constant);
  REQUIRE(chi.witness);
  CHECK(chi.witness->first.orbit.size() == 7);
  CHECK(chi.witness->first.sum == 12);
  CHECK(chi.witness->second.sum == 11);
  std::vector<Rational> averages = chi.averages;
  std::sort(averages.begin(), averages.end());
  CHECK(averages == std::vector<Rational>{Rational(12, 7), Rational(11, 6), Rational(11, 6)});

  const auto json = to_json(chi);
  CHECK(json["homomesic"] == false);
  CHECK(json["constant"].is_null());
  CHECK(json["averages"][0] == "12/7");
  CHECK(json["witness"].size() == 2);
  CHECK(json["witness"][0]["antichains"].size() == 7);

  // same branch, any tree
  const auto t = parse_tree(test_trees::kFiveLeaf);
  const auto zero = check_homomesy(t, Statistic::chi_x(test_trees::kX) -
                                          Statistic::chi_x(test_trees::kY));
  CHECK(zero.homomesic);
  CHECK(*zero.constant == Rational(0));
  CHECK(to_json(zero)["constant"] == "0");
}

TEST_CASE("homometry") {
  const auto s = parse_tree(test_trees::kS332);
  const auto chi = check_homometry(s, Statistic::chi());
  CHECK(chi.homometric);
  CHECK(chi.class_table == std::map<std::size_t, std::int64_t>{{6, 11}, {7, 12}});
  CHECK_FALSE(chi.witness);

  const auto c3 = parse_tree("((()())())");
  const auto comb = check_homometry(parse_tree("(((()())())())"), Statistic::hatchi());
  CHECK(comb.homometric);
  CHECK(comb.class_table == std::map<std::size_t, std::int64_t>{{2, 10}, {15, 55}});
  CHECK(check_homometry(c3, Statistic::hatchi()).homometric);

  const auto json = to_json(chi);
  CHECK(json.dump() ==
        R"({"homometric":true,"classTable":[{"size":6,"sum":11},{"size":7,"sum":12}],)"
        R"("witness":null})");
}

TEST_CASE("the depth-3 binary tree is not homometric") {
  const auto t = parse_tree(test_trees::kBinary3);
  const std::pair<Antichain, Antichain> seeds{ac({test_trees::kBinX, test_trees::kBinY}),
                                              ac({test_trees::kBinZ})};
  for (const auto& [stat, hi, lo] : {std::tuple{Statistic::chi(), 15, 14},
                                     std::tuple{Statistic::hatchi(), 35, 26}}) {
    const auto verdict = check_homometry(t, stat, kDefaultAntichainBudget, seeds);
    CHECK_FALSE(verdict.homometric);
    CHECK(verdict.class_table.empty());
    REQUIRE(verdict.witness);
    const auto& [a, b] = *verdict.witness;
    CHECK(a.orbit.size() == 4);
    CHECK(b.orbit.size() == 4);
    CHECK(a.sum == hi);
    CHECK(b.sum == lo);
    CHECK(std::find(a.orbit.antichains.begin(), a.orbit.antichains.end(), seeds.first) !=
          a.orbit.antichains.end());
    CHECK(std::find(b.orbit.antichains.begin(), b.orbit.antichains.end(), seeds.second) !=
          b.orbit.antichains.end());
    // without seeds there is still a valid size-4 witness
    const auto plain = check_homometry(t, stat);
    REQUIRE(plain.witness);
    CHECK(plain.witness->first.orbit.size() == plain.witness->second.orbit.size());
    CHECK(plain.witness->first.sum != plain.witness->second.sum);
  }
  // seeds in orbits of different sizes are ignored
  const auto bad = check_homometry(t, Statistic::chi(), kDefaultAntichainBudget,
                                   std::pair{Antichain{}, ac({test_trees::kBinZ})});
  REQUIRE(bad.witness);
  CHECK(bad.witness->first.orbit.size() == bad.witness->second.orbit.size());
  CHECK_THROWS_AS(check_homometry(t, Statistic::chi(), 100), BudgetExceeded);
  CHECK_THROWS_AS(check_homomesy(t, Statistic::chi(), 100), BudgetExceeded);
}

TEST_CASE("statistics tables") {
  const auto s = parse_tree(test_trees::kS332);
  const auto orbits = all_orbits(s);
  CHECK(statistics_table_csv(s, orbits, false) ==
        "orbit,size,delta,chi,hatchi\n0,7,1,12,21\n1,6,0,11,21\n2,6,0,11,21\n");
  const auto csv = statistics_table_csv(parse_tree("(())"), all_orbits(parse_tree("(())")), true);
  CHECK(csv == "orbit,size,delta,chi,hatchi,chi_x:0,chi_x:1,hatchi_x:0,hatchi_x:1\n"
               "0,3,1,2,3,1,1,2,1\n");
  const auto json = statistics_table_json(s, orbits, true);
  REQUIRE(json.size() == 3);
  CHECK(json[0]["delta"] == 1);
  CHECK(json[1]["chi_x"].size() == 6);
  CHECK(json[1]["hatchi_x"][0] == 6);
}

TEST_CASE("exhaustive: orbit sums and tiling identities against the oracle") {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& notation : oracle::all_trees(n)) {
      const auto t = parse_tree(notation);
      const auto o = oracle::parse(notation);
      const auto orbits = all_orbits(t);
      const auto expected = oracle::orbits(o);
      REQUIRE(orbits.size() == expected.size());
      for (std::size_t i = 0; i < orbits.size(); ++i) {
        const auto want = oracle_sums(o, expected[i].members);
        const auto& orbit = orbits[i];
        CHECK(orbit_sum(t, Statistic::chi(), orbit) == want.chi);
        CHECK(orbit_sum(t, Statistic::hatchi(), orbit) == want.hatchi);
        const auto sums = orbit_sums_from_tiling(t, tiling_of_orbit(t, orbit));
        CHECK(sums.chi == want.chi);
        CHECK(sums.hatchi == want.hatchi);
        for (NodeId x = 0; x < t.size(); ++x) {
          CHECK(orbit_sum(t, Statistic::chi_x(x), orbit) == want.chi_x[x]);
          CHECK(orbit_sum(t, Statistic::hatchi_x(x), orbit) == want.hatchi_x[x]);
          CHECK(sums.chi_by_branch[t.branch_index(x)] == want.chi_x[x]);
          CHECK(sums.hatchi_by_node[x] == want.hatchi_x[x]);
        }
      }
    }
  }
}

TEST_CASE("homomesy implies homometry, and verdicts match brute force") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 7; ++n) {
    for (const auto& notation : oracle::all_trees(n)) {
      const auto t = parse_tree(notation);
      const auto o = oracle::parse(notation);
      const auto orbits = all_orbits(t);
      const auto expected = oracle::orbits(o);
      // a random small combination of chi_x terms, plus the four basics
      std::uniform_int_distribution<int> coef(-3, 3), node(0, n - 1);
      std::vector<std::pair<int, int>> combo{{coef(rng), node(rng)}, {coef(rng), node(rng)}};
      Statistic random;
      for (auto [k, x] : combo) random = random + k * Statistic::chi_x(static_cast<NodeId>(x));
      for (const auto& stat : {Statistic::chi(), Statistic::hatchi(), random,
                               Statistic::chi_x(static_cast<NodeId>(n - 1))}) {
        const auto mesy = check_homomesy(t, stat, orbits);
        const auto metry = check_homometry(t, stat, orbits);
        if (mesy.homomesic) CHECK(metry.homometric);

        // brute-force verdicts with integer cross-multiplication
        std::vector<std::pair<std::int64_t, std::int64_t>> sums;  // (sum, size)
        for (std::size_t i = 0; i < expected.size(); ++i) {
          const auto total = oracle_value(stat, oracle_sums(o, expected[i].members));
          sums.emplace_back(total, static_cast<std::int64_t>(expected[i].members.size()));
        }
        bool same_avg = true, same_size_sum = true;
        for (const auto& [s1, c1] : sums) {
          for (const auto& [s2, c2] : sums) {
            same_avg = same_avg && s1 * c2 == s2 * c1;
            if (c1 == c2) same_size_sum = same_size_sum && s1 == s2;
          }
        }
        CHECK(mesy.homomesic == same_avg);
        CHECK(metry.homometric == same_size_sum);
      }
    }
  }
}
