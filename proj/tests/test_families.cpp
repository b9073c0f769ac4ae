#include "doctest.h"

#include <numeric>
#include <tuple>

#include "oracle.hpp"
#include "rowmotion/errors.hpp"
#include "rowmotion/families.hpp"
#include "test_trees.hpp"

using namespace rowmotion;

namespace {

// (size, delta, chi, hatchi) -> count; labels dropped
using Shape = std::map<std::tuple<std::int64_t, int, Rational, Rational>, std::int64_t>;

Shape shape(const OrbitProfile& p) {
  Shape out;
  for (const auto& c : p.classes) {
    out[{c.orbit_size, c.delta, c.chi_sum, c.hatchi_sum}] += c.orbit_count;
  }
  return out;
}

// Brute force from the oracle alone.
Shape oracle_shape(const std::string& notation) {
  const auto o = oracle::parse(notation);
  Shape out;
  for (const auto& orbit : oracle::orbits(o)) {
    std::int64_t chi = 0, hatchi = 0;
    for (const auto& a : orbit.members) {
      chi += static_cast<std::int64_t>(a.size());
      hatchi += static_cast<std::int64_t>(oracle::down(o, a).size());
    }
    out[{static_cast<std::int64_t>(orbit.members.size()), orbit.has_root ? 1 : 0, Rational(chi),
         Rational(hatchi)}] += 1;
  }
  return out;
}

Shape oracle_shape(const FamilyDescriptor& d) { return oracle_shape(to_notation(make_family(d))); }

std::vector<std::pair<Interval, std::size_t>> family_of(const RootedTree& t) {
  std::vector<std::pair<Interval, std::size_t>> out;
  for (const auto& spec : intervals(t)) out.emplace_back(spec.interval, spec.beta);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Interval, std::size_t>> sorted(
    std::vector<std::pair<Interval, std::size_t>> v) {
  std::sort(v.begin(), v.end());
  return v;
}

OrbitProfile observed(const RootedTree& t) { return observed_profile(t, all_orbits(t)); }

std::int64_t orbit_count(const OrbitProfile& p) {
  std::int64_t n = 0;
  for (const auto& c : p.classes) n += c.orbit_count;
  return n;
}

}  // namespace

TEST_CASE("parse_family round trip") {
  for (const char* text : {"star:3,3,2", "estar:b=2;3,3,2", "threeleaf:1,2,1,1,1", "tk:3",
                           "comb:4", "ecomb:n=3,k=2", "zipper:2", "cbt:3"}) {
    CHECK(to_string(parse_family(text)) == text);
  }
  CHECK(std::holds_alternative<Star>(parse_family("star:3,3,2")));
  CHECK(std::get<ExtendedComb>(parse_family("ecomb:n=3,k=2")).k == 2);
  for (const char* bad : {"", "star:", "star:1", "star:3,x", "tk:1", "comb:0", "ecomb:n=3",
                          "estar:3,3", "estar:b=0;2", "threeleaf:1,1,1,1", "cbt:0", "nope:3",
                          "zipper:-1"}) {
    CHECK_THROWS_AS(validate(parse_family(bad)), InvalidInput);
  }
}

TEST_CASE("interval families of the constructors") {
  CHECK(family_of(make_family(Star{{3, 3, 2}})) ==
        sorted({{{1, 1}, 2}, {{2, 2}, 2}, {{3, 3}, 1}, {{1, 3}, 1}}));
  CHECK(to_notation(make_family(Star{{3, 3, 2}})) == test_trees::kS332);
  CHECK(family_of(make_family(ExtendedStar{2, {3, 3, 2}})) ==
        sorted({{{1, 1}, 2}, {{2, 2}, 2}, {{3, 3}, 1}, {{1, 3}, 2}}));
  CHECK(family_of(make_family(Comb{3})) == sorted({{{1, 4}, 1},
                                                   {{1, 3}, 1},
                                                   {{1, 2}, 1},
                                                   {{1, 1}, 1},
                                                   {{2, 2}, 1},
                                                   {{3, 3}, 1},
                                                   {{4, 4}, 1}}));
  CHECK(make_family(CompleteBinary{3}).size() == 15);
  CHECK(to_notation(make_family(CompleteBinary{3})) == test_trees::kBinary3);
  CHECK(family_of(make_family(ThreeLeaf{2, 3, 1, 2, 4})) ==
        sorted({{{1, 3}, 2}, {{1, 2}, 3}, {{1, 1}, 1}, {{2, 2}, 2}, {{3, 3}, 4}}));
  CHECK(chain_tree(3).size() == 3);
  CHECK_THROWS_AS(chain_tree(0), InvalidInput);
}

TEST_CASE("graft") {
  const auto point = chain_tree(1);
  CHECK(family_of(graft(point, point, 1)) == family_of(make_family(Star{{2, 2}})));
  for (int n = 1; n <= 4; ++n) {
    const auto c = make_family(Comb{n});
    CHECK(to_notation(graft(c, c, 1)) == to_notation(make_family(Zipper{n})));
  }
  for (int k = 2; k <= 4; ++k) {
    const auto g = graft(make_family(ExtendedStar{k, {k, k}}),
                         chain_tree(static_cast<std::size_t>(k - 1)), static_cast<std::size_t>(k));
    CHECK(family_of(g) == family_of(make_family(Tk{k})));
  }
  // left operand takes the small labels
  const auto g = graft(chain_tree(2), make_family(Star{{2, 2}}), 3);
  CHECK(family_of(g) ==
        sorted({{{1, 1}, 2}, {{2, 2}, 1}, {{3, 3}, 1}, {{2, 3}, 1}, {{1, 3}, 3}}));
}

TEST_CASE("predicted profiles: frozen examples") {
  const auto star = predicted_profile(Star{{3, 3, 2}});
  CHECK(shape(star) == Shape{{{7, 1, Rational(12), Rational(21)}, 1},
                             {{6, 0, Rational(11), Rational(21)}, 2}});

  const auto tk = predicted_profile(Tk{2});
  CHECK(shape(tk) == Shape{{{2, 0, Rational(3), Rational(11)}, 2},
                           {{4, 0, Rational(6), Rational(17)}, 1},
                           {{6, 1, Rational(8), Rational(18)}, 1}});

  const auto z = predicted_profile(Zipper{1});
  CHECK(shape(z) == Shape{{{2, 0, Rational(4), Rational(10)}, 2},
                          {{3, 0, Rational(6), Rational(11)}, 2},
                          {{4, 1, Rational(7), Rational(11)}, 1},
                          {{6, 0, Rational(12), Rational(26)}, 2}});
  CHECK(z.antichain_total() == 26);
  CHECK(count_antichains(make_family(Zipper{1})) == 26);

  CHECK_THROWS_AS(predicted_profile(ThreeLeaf{}), InvalidInput);
  CHECK_THROWS_AS(predicted_profile(CompleteBinary{3}), InvalidInput);
}

TEST_CASE("predicted profiles agree with brute force") {
  std::vector<FamilyDescriptor> cases{
      Star{{2}},         Star{{3, 3, 2}},     Star{{2, 3, 4}},    Star{{4, 6}},
      Star{{2, 2, 2, 2}}, ExtendedStar{2, {3, 3, 2}}, ExtendedStar{3, {2, 3}},
      Tk{2},             Tk{3},               Comb{1},            Comb{2},
      Comb{3},           Comb{4},             Comb{5},            ExtendedComb{2, 1},
      ExtendedComb{3, 1}, ExtendedComb{2, 2}, ExtendedComb{3, 2}, ExtendedComb{2, 3},
      ExtendedComb{2, 4}, Zipper{1},          Zipper{2},          Zipper{3}};
  for (const auto& d : cases) {
    CAPTURE(to_string(d));
    const auto p = predicted_profile(d);
    CHECK(shape(p) == oracle_shape(d));
    CHECK(p.antichain_total() == static_cast<std::int64_t>(count_antichains(make_family(d))));
  }
}

TEST_CASE("star orbit count is the product over the lcm") {
  for (const auto& alphas : std::vector<std::vector<int>>{{2, 3}, {3, 3, 2}, {2, 4, 6}, {5, 3}}) {
    std::int64_t prod = 1, l = 1;
    for (int a : alphas) {
      prod *= a;
      l = std::lcm(l, static_cast<std::int64_t>(a));
    }
    CHECK(orbit_count(predicted_profile(Star{alphas})) == prod / l);
    CHECK(orbit_count(observed(make_family(Star{alphas}))) == prod / l);
  }
}

TEST_CASE("combine_profiles") {
  // two points under a one-node root: S(2,2)
  const auto s22 = combine_profiles(chain_profile(1), chain_profile(1), 1);
  CHECK(shape(s22) == oracle_shape(Star{{2, 2}}));
  CHECK(shape(s22) == Shape{{{2, 0, Rational(2), Rational(4)}, 1},
                            {{3, 1, Rational(3), Rational(4)}, 1}});

  for (int k = 2; k <= 3; ++k) {
    const auto t = combine_profiles(predicted_profile(ExtendedStar{k, {k, k}}),
                                    chain_profile(static_cast<std::size_t>(k - 1)), k);
    CHECK(shape(t) == shape(predicted_profile(Tk{k})));
  }
  // the comb induction
  for (int n = 1; n <= 4; ++n) {
    const auto next = combine_profiles(predicted_profile(Comb{n}), chain_profile(1), 1);
    CHECK(shape(next) == oracle_shape(Comb{n + 1}));
  }
  // the spine orbit of C_n with itself: gcd(c, c) = c orbits
  for (int n = 1; n <= 4; ++n) {
    auto spine = predicted_profile(Comb{n});
    std::erase_if(spine.classes, [](const ProfileClass& c) { return c.delta == 0; });
    const std::int64_t c = (std::int64_t{1} << (n + 1)) - 1;
    const auto both = combine_profiles(spine, spine, 1);
    CHECK(orbit_count(both) == c);
    CHECK(both.antichain_total() == c * c + 1);
    CHECK(both.parameters.at("g_{1,1}") == c);
  }
  // malformed: no 0-hat class
  OrbitProfile bad;
  bad.classes.push_back({"X", 2, 1, Rational(1), Rational(1), 0});
  CHECK_THROWS_AS(combine_profiles(bad, chain_profile(1), 1), InvalidInput);
  CHECK_THROWS_AS(combine_profiles(chain_profile(1), chain_profile(1), 0), InvalidInput);
}

TEST_CASE("extend_root_transfer") {
  const auto s = observed(make_family(Star{{3, 3, 2}}));
  const auto s2 = extend_root_transfer(s, 1);
  CHECK(shape(s2) == oracle_shape(ExtendedStar{2, {3, 3, 2}}));
  std::vector<std::int64_t> sizes;
  for (const auto& c : s2.classes) {
    for (std::int64_t i = 0; i < c.orbit_count; ++i) sizes.push_back(c.orbit_size);
  }
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::int64_t>{6, 6, 8});
  CHECK(shape(extend_root_transfer(s, 0)) == shape(s));

  // orbit count l + delta*b from the plain star
  auto p = observed(make_family(Star{{2, 3}}));
  for (int b = 2; b <= 3; ++b) {
    p = extend_root_transfer(p, 1);
    CHECK(shape(p) == oracle_shape(ExtendedStar{b, {2, 3}}));
  }
  OrbitProfile bad;
  bad.classes.push_back({"X", 2, 1, Rational(1), Rational(1), 0});
  CHECK_THROWS_AS(extend_root_transfer(bad, 1), InvalidInput);
}

TEST_CASE("verify_family") {
  for (const char* text : {"star:3,3,2", "comb:1", "comb:2", "comb:3", "comb:4", "comb:5",
                           "ecomb:n=3,k=2", "ecomb:n=2,k=2", "ecomb:n=3,k=3", "tk:2", "tk:3",
                           "zipper:2", "estar:b=2;3,3,2", "threeleaf:2,1,1,2,1",
                           "threeleaf:1,2,3,1,2"}) {
    CAPTURE(text);
    const auto report = verify_family(parse_family(text));
    CHECK(report.all_match);
    for (const auto& e : report.entries) CHECK(e.match);
    CHECK(report.observed.antichain_total() == static_cast<std::int64_t>(report.antichains));
  }
  const auto ecomb = verify_family(ExtendedComb{3, 2});
  bool saw_s2 = false;
  for (const auto& c : ecomb.predicted->classes) saw_s2 = saw_s2 || c.label == "S2";
  CHECK(saw_s2);

  const auto cbt = verify_family(CompleteBinary{3});
  CHECK(cbt.method == "homometry check");
  CHECK(cbt.all_match);
  CHECK_FALSE(cbt.predicted);
  CHECK_THROWS_AS(verify_family(CompleteBinary{3}, 100), BudgetExceeded);

  const auto json = to_json(verify_family(Star{{3, 3, 2}}));
  CHECK(json["allMatch"] == true);
  CHECK(json["summary"] == "all classes match");
  CHECK(json["antichains"] == 19);
}
