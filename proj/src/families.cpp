#include "rowmotion/families.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <tuple>

#include "rowmotion/errors.hpp"
#include "rowmotion/statistics.hpp"

namespace rowmotion {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = s.find(sep, begin);
    out.push_back(s.substr(begin, end == std::string_view::npos ? end : end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return out;
}

int parse_int(std::string_view s, std::string_view context) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw InvalidInput("bad integer '" + std::string(s) + "' in " + std::string(context));
  }
  return value;
}

std::vector<int> parse_list(std::string_view s, std::string_view context) {
  std::vector<int> out;
  for (auto part : split(s, ',')) out.push_back(parse_int(part, context));
  return out;
}

// "n=3,k=2" -> values in the order of `keys`.
std::vector<int> parse_keyed(std::string_view s, const std::vector<std::string>& keys,
                             std::string_view context) {
  std::map<std::string, int> found;
  for (auto part : split(s, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidInput("expected key=value in " + std::string(context));
    }
    found[std::string(part.substr(0, eq))] = parse_int(part.substr(eq + 1), context);
  }
  std::vector<int> out;
  for (const auto& key : keys) {
    auto it = found.find(key);
    if (it == found.end()) throw InvalidInput("missing " + key + " in " + std::string(context));
    out.push_back(it->second);
    found.erase(it);
  }
  if (!found.empty()) {
    throw InvalidInput("unknown key " + found.begin()->first + " in " + std::string(context));
  }
  return out;
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::string repeat(char c, std::size_t n) { return std::string(n, c); }

std::string chain_notation(std::size_t length) {
  return repeat('(', length) + repeat(')', length);
}

std::string comb_notation(int n) {
  if (n == 0) return "()";
  return "(" + comb_notation(n - 1) + "())";
}

std::string ecomb_spine(int m, int k) {
  if (m == 0) return "()";
  const auto kk = static_cast<std::size_t>(k);
  return repeat('(', kk) + ecomb_spine(m - 1, k) + "()" + repeat(')', kk);
}

std::string cbt_notation(int depth) {
  if (depth == 0) return "()";
  const std::string sub = cbt_notation(depth - 1);
  return "(" + sub + sub + ")";
}

std::string estar_notation(std::size_t b, const std::vector<int>& alphas) {
  std::string s = repeat('(', b);
  for (int a : alphas) s += chain_notation(static_cast<std::size_t>(a - 1));
  return s + repeat(')', b);
}

std::string three_leaf_notation(const ThreeLeaf& t) {
  const auto a = static_cast<std::size_t>(t.a);
  const auto b = static_cast<std::size_t>(t.b);
  return repeat('(', a) + repeat('(', b) + chain_notation(static_cast<std::size_t>(t.c)) +
         chain_notation(static_cast<std::size_t>(t.d)) + repeat(')', b) +
         chain_notation(static_cast<std::size_t>(t.e)) + repeat(')', a);
}

std::string graft_notation(const std::string& left, const std::string& right, std::size_t b) {
  return repeat('(', b) + left + right + repeat(')', b);
}

std::int64_t lcm_of(const std::vector<int>& values) {
  std::int64_t l = 1;
  for (int v : values) l = std::lcm(l, static_cast<std::int64_t>(v));
  return l;
}

std::int64_t product_of(const std::vector<int>& values) {
  std::int64_t p = 1;
  for (int v : values) p *= v;
  return p;
}

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

Rational binom2(const Rational& m) { return m * (m - 1) / 2; }

Rational q(std::int64_t v) { return Rational(static_cast<long>(v)); }

ProfileClass make_class(std::string label, std::int64_t size, std::int64_t count,
                        Rational chi, Rational hatchi, int delta) {
  chi.canonicalize();
  hatchi.canonicalize();
  return {std::move(label), size, count, std::move(chi), std::move(hatchi), delta};
}

OrbitProfile star_like(std::int64_t b, const std::vector<int>& alphas) {
  const std::int64_t l = lcm_of(alphas);
  Rational chi_base = 0;
  Rational hatchi_base = 0;
  for (int a : alphas) {
    chi_base += q(l / a) * (a - 1);
    hatchi_base += q(l / a) * binom2(q(a));
  }
  OrbitProfile p;
  p.parameters["l"] = l;
  p.parameters["b"] = b;
  p.classes.push_back(make_class("root", l + b, 1, q(b) + chi_base,
                                 q(l * b) + binom2(q(b)) + hatchi_base, 1));
  const std::int64_t others = product_of(alphas) / l - 1;
  if (others > 0) {
    p.classes.push_back(make_class("other", l, others, chi_base, q(l * b) + hatchi_base, 0));
  }
  return p;
}

OrbitProfile tk_profile(int k) {
  const std::int64_t kk = k;
  OrbitProfile p;
  p.parameters["k"] = kk;
  p.classes.push_back(make_class("S", kk, kk * (kk - 1), q(3 * kk - 3),
                                 Rational(7 * kk * kk - 3 * kk, 2), 0));
  p.classes.push_back(make_class("M", 2 * kk, kk - 1, q(5 * kk - 4),
                                 Rational(11 * kk * kk - 5 * kk, 2), 0));
  p.classes.push_back(make_class("L", 3 * kk, 1, q(6 * kk - 4), q(6 * kk * kk - 3 * kk), 1));
  return p;
}

OrbitProfile comb_profile(int n) {
  OrbitProfile p;
  p.parameters["n"] = n;
  p.classes.push_back(make_class("S", 2, pow2(n - 1), q(n + 1), q(3 * n + 1), 0));
  p.classes.push_back(make_class("L", pow2(n + 1) - 1, 1, q((2 * n + 1) * pow2(n - 1)),
                                 q(pow2(n - 1) * (6 * n - 5) + 3), 1));
  return p;
}

OrbitProfile ecomb_profile(int n_, int k_) {
  const Rational n = n_;
  const Rational k = k_;
  OrbitProfile p;
  p.parameters["n"] = n_;
  p.parameters["k"] = k_;
  if (k_ % 2 == 1) {
    p.classes.push_back(
        make_class("S", 2, pow2(n_ - 1), n + 1, (2 * k + 1) * n - 2 * k + 3, 0));
    const Rational half = q(pow2(n_ - 1));
    p.classes.push_back(make_class(
        "L", (k_ + 1) * pow2(n_) - 2 * k_ + 1, 1, ((k + 1) * n + 1) * half - k + 1,
        (2 * k + 1) * (k + 1) * n * half - (5 * k * k + 3 * k - 3) * half + 3 * k * k, 1));
    return p;
  }
  // C(k-2, 2) evaluated as (k-2)(k-3)/2, which is 0 at k = 2.
  const Rational c = binom2(k - 2);
  for (int i_ = 1; i_ <= n_; ++i_) {
    const Rational i = i_;
    const Rational size = k * (i - 1) + 2;
    p.classes.push_back(make_class(
        "S" + std::to_string(i_), k_ * (i_ - 1) + 2, pow2(n_ - i_),
        size / 2 * n - k / 4 * (i * i - 5 * i + 4) + 1,
        (2 * k + 1) * size / 2 * n - k * (2 * k + 1) / 4 * i * i + 3 * k / 4 * i + c, 0));
  }
  p.classes.push_back(make_class("L", k_ * (n_ - 1) + 3, 1,
                                 k / 4 * n * n + (3 * k + 4) / 4 * n - k + 2,
                                 k * (2 * k + 1) / 4 * n * n - (4 * k * k - 9 * k - 4) / 4 * n + c,
                                 1));
  return p;
}

OrbitProfile zipper_profile(int n) {
  const std::int64_t t = pow2(n);
  OrbitProfile p;
  p.parameters["n"] = n;
  p.classes.push_back(make_class("S", 2, pow2(2 * n - 1), q(2 * n + 2), q(6 * n + 4), 0));
  p.classes.push_back(make_class("M", 2 * t - 1, 2 * t - 2, q(t * (2 * n + 1)),
                                 q(3 * t * (2 * n - 1) + 5), 0));
  p.classes.push_back(make_class("L", 2 * t, 1, q(t * (2 * n + 1) + 1),
                                 q(3 * t * (2 * n - 1) + 5), 1));
  // hatchi from combining the comb profiles
  p.classes.push_back(make_class("G", 4 * t - 2, t, q(t * (4 * n + 3) - n - 1),
                                 q(t * (12 * n + 1) - 3 * n + 3), 0));
  return p;
}

const ProfileClass& root_class(const OrbitProfile& p, const char* side) {
  const ProfileClass* found = nullptr;
  for (const auto& c : p.classes) {
    if (c.delta == 1) {
      if (found != nullptr || c.orbit_count != 1) {
        throw InvalidInput(std::string(side) + " profile needs exactly one delta = 1 orbit");
      }
      found = &c;
    }
  }
  if (found == nullptr) {
    throw InvalidInput(std::string(side) + " profile has no delta = 1 orbit");
  }
  return *found;
}

void check_profile(const OrbitProfile& p, const char* side) {
  for (const auto& c : p.classes) {
    if (c.orbit_size <= 0 || c.orbit_count <= 0) {
      throw InvalidInput(std::string(side) + " profile has an empty class");
    }
  }
  root_class(p, side);
}

std::string rational_text(const Rational& r) { return to_string(r); }

nlohmann::ordered_json rational_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) {
    return nlohmann::ordered_json(r.get_num().get_si());
  }
  return nlohmann::ordered_json(to_string(r));
}

}  // namespace

FamilyDescriptor parse_family(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidInput("family descriptor needs NAME:PARAMS, got '" + std::string(text) + "'");
  }
  const std::string_view name = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);
  FamilyDescriptor desc;
  if (name == "star") {
    desc = Star{parse_list(args, "star")};
  } else if (name == "estar") {
    const auto semi = args.find(';');
    if (semi == std::string_view::npos) throw InvalidInput("estar needs b=B;ALPHAS");
    const auto b = parse_keyed(args.substr(0, semi), {"b"}, "estar");
    desc = ExtendedStar{b[0], parse_list(args.substr(semi + 1), "estar")};
  } else if (name == "threeleaf") {
    const auto v = parse_list(args, "threeleaf");
    if (v.size() != 5) throw InvalidInput("threeleaf needs five parameters a,b,c,d,e");
    desc = ThreeLeaf{v[0], v[1], v[2], v[3], v[4]};
  } else if (name == "tk") {
    desc = Tk{parse_int(args, "tk")};
  } else if (name == "comb") {
    desc = Comb{parse_int(args, "comb")};
  } else if (name == "ecomb") {
    const auto v = parse_keyed(args, {"n", "k"}, "ecomb");
    desc = ExtendedComb{v[0], v[1]};
  } else if (name == "zipper") {
    desc = Zipper{parse_int(args, "zipper")};
  } else if (name == "cbt") {
    desc = CompleteBinary{parse_int(args, "cbt")};
  } else {
    throw InvalidInput("unknown family '" + std::string(name) + "'");
  }
  validate(desc);
  return desc;
}

std::string to_string(const FamilyDescriptor& desc) {
  return std::visit(
      overloaded{
          [](const Star& s) { return "star:" + join(s.alphas); },
          [](const ExtendedStar& s) {
            return "estar:b=" + std::to_string(s.b) + ";" + join(s.alphas);
          },
          [](const ThreeLeaf& t) { return "threeleaf:" + join({t.a, t.b, t.c, t.d, t.e}); },
          [](const Tk& t) { return "tk:" + std::to_string(t.k); },
          [](const Comb& c) { return "comb:" + std::to_string(c.n); },
          [](const ExtendedComb& c) {
            return "ecomb:n=" + std::to_string(c.n) + ",k=" + std::to_string(c.k);
          },
          [](const Zipper& z) { return "zipper:" + std::to_string(z.n); },
          [](const CompleteBinary& c) { return "cbt:" + std::to_string(c.depth); },
      },
      desc);
}

void validate(const FamilyDescriptor& desc) {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw InvalidInput(message);
  };
  auto check_alphas = [&](const std::vector<int>& alphas) {
    require(!alphas.empty(), "a star needs at least one alpha");
    for (int a : alphas) require(a >= 2, "every alpha must be at least 2");
  };
  std::visit(overloaded{
                 [&](const Star& s) { check_alphas(s.alphas); },
                 [&](const ExtendedStar& s) {
                   check_alphas(s.alphas);
                   require(s.b >= 1, "extended star needs b >= 1");
                 },
                 [&](const ThreeLeaf& t) {
                   require(t.a >= 1 && t.b >= 1 && t.c >= 1 && t.d >= 1 && t.e >= 1,
                           "threeleaf parameters must be positive");
                 },
                 [&](const Tk& t) { require(t.k >= 2, "tk needs k >= 2"); },
                 [&](const Comb& c) { require(c.n >= 1 && c.n <= 30, "comb needs 1 <= n <= 30"); },
                 [&](const ExtendedComb& c) {
                   require(c.n >= 1 && c.n <= 30, "ecomb needs 1 <= n <= 30");
                   require(c.k >= 1, "ecomb needs k >= 1");
                 },
                 [&](const Zipper& z) {
                   require(z.n >= 1 && z.n <= 30, "zipper needs 1 <= n <= 30");
                 },
                 [&](const CompleteBinary& c) {
                   require(c.depth >= 1 && c.depth <= 20, "cbt needs 1 <= depth <= 20");
                 },
             },
             desc);
}

RootedTree chain_tree(std::size_t length) {
  if (length == 0) throw InvalidInput("a chain needs at least one node");
  return parse_tree(chain_notation(length));
}

RootedTree graft(const RootedTree& left, const RootedTree& right, std::size_t b) {
  if (b == 0) throw InvalidInput("graft needs b >= 1");
  return parse_tree(graft_notation(to_notation(left), to_notation(right), b));
}

RootedTree make_family(const FamilyDescriptor& desc) {
  validate(desc);
  const std::string notation = std::visit(
      overloaded{
          [](const Star& s) { return estar_notation(1, s.alphas); },
          [](const ExtendedStar& s) {
            return estar_notation(static_cast<std::size_t>(s.b), s.alphas);
          },
          [](const ThreeLeaf& t) { return three_leaf_notation(t); },
          [](const Tk& t) {
            const auto k = static_cast<std::size_t>(t.k);
            return graft_notation(estar_notation(k, {t.k, t.k}), chain_notation(k - 1), k);
          },
          [](const Comb& c) { return comb_notation(c.n); },
          [](const ExtendedComb& c) {
            return "(" + ecomb_spine(c.n - 1, c.k) + "())";
          },
          [](const Zipper& z) {
            return graft_notation(comb_notation(z.n), comb_notation(z.n), 1);
          },
          [](const CompleteBinary& c) { return cbt_notation(c.depth); },
      },
      desc);
  return parse_tree(notation);
}

std::int64_t OrbitProfile::antichain_total() const {
  std::int64_t total = 0;
  for (const auto& c : classes) total += c.orbit_size * c.orbit_count;
  return total;
}

OrbitProfile predicted_profile(const FamilyDescriptor& desc) {
  validate(desc);
  return std::visit(
      overloaded{
          [](const Star& s) { return star_like(1, s.alphas); },
          [](const ExtendedStar& s) { return star_like(s.b, s.alphas); },
          [](const ThreeLeaf&) -> OrbitProfile {
            throw InvalidInput("no closed form for threeleaf; use combine_profiles");
          },
          [](const Tk& t) { return tk_profile(t.k); },
          [](const Comb& c) { return comb_profile(c.n); },
          [](const ExtendedComb& c) { return ecomb_profile(c.n, c.k); },
          [](const Zipper& z) { return zipper_profile(z.n); },
          [](const CompleteBinary&) -> OrbitProfile {
            throw InvalidInput("complete binary trees are not homometric; no profile exists");
          },
      },
      desc);
}

OrbitProfile chain_profile(std::size_t length) {
  if (length == 0) throw InvalidInput("a chain needs at least one node");
  const auto e = static_cast<std::int64_t>(length);
  OrbitProfile p;
  p.parameters["length"] = e;
  p.classes.push_back(make_class("chain", e + 1, 1, q(e), Rational(e * (e + 1), 2), 1));
  return p;
}

OrbitProfile observed_profile(const RootedTree& tree, const std::vector<Orbit>& orbits) {
  OrbitProfile p;
  for (const auto& orbit : orbits) {
    p.classes.push_back(make_class("O" + std::to_string(p.classes.size() + 1),
                                   static_cast<std::int64_t>(orbit.size()), 1,
                                   q(orbit_sum(tree, Statistic::chi(), orbit)),
                                   q(orbit_sum(tree, Statistic::hatchi(), orbit)),
                                   orbit.delta()));
  }
  p = normalized(p);
  for (std::size_t i = 0; i < p.classes.size(); ++i) {
    p.classes[i].label = "O" + std::to_string(i + 1);
  }
  return p;
}

OrbitProfile normalized(const OrbitProfile& profile) {
  auto key = [](const ProfileClass& c) {
    return std::tie(c.orbit_size, c.delta, c.chi_sum, c.hatchi_sum);
  };
  OrbitProfile out;
  out.parameters = profile.parameters;
  for (const auto& c : profile.classes) {
    auto it = std::find_if(out.classes.begin(), out.classes.end(),
                           [&](const ProfileClass& d) { return key(d) == key(c); });
    if (it == out.classes.end()) {
      out.classes.push_back(c);
    } else {
      it->orbit_count += c.orbit_count;
    }
  }
  std::stable_sort(out.classes.begin(), out.classes.end(),
                   [&](const ProfileClass& a, const ProfileClass& b) { return key(a) < key(b); });
  return out;
}

OrbitProfile combine_profiles(const OrbitProfile& left, const OrbitProfile& right,
                              std::int64_t b) {
  if (b < 1) throw InvalidInput("combine_profiles needs b >= 1");
  check_profile(left, "left");
  check_profile(right, "right");
  OrbitProfile out;
  out.parameters["b"] = b;
  for (std::size_t i = 0; i < left.classes.size(); ++i) {
    for (std::size_t j = 0; j < right.classes.size(); ++j) {
      const auto& a = left.classes[i];
      const auto& c = right.classes[j];
      const std::int64_t g = std::gcd(a.orbit_size, c.orbit_size);
      const std::int64_t l = std::lcm(a.orbit_size, c.orbit_size);
      const std::string tag = std::to_string(i + 1) + "," + std::to_string(j + 1);
      out.parameters["g_{" + tag + "}"] = g;
      out.parameters["l_{" + tag + "}"] = l;
      const Rational chi = q(l) * a.chi_sum / q(a.orbit_size) + q(l) * c.chi_sum / q(c.orbit_size);
      const Rational hatchi =
          q(l) * a.hatchi_sum / q(a.orbit_size) + q(l) * c.hatchi_sum / q(c.orbit_size);
      const std::string label = a.label + "+" + c.label;
      std::int64_t plain = a.orbit_count * c.orbit_count * g;
      if (a.delta == 1 && c.delta == 1) {
        out.classes.push_back(
            make_class(label + "*", l + b, 1, q(b) + chi, q(l * b) + binom2(q(b)) + hatchi, 1));
        plain -= 1;
      }
      if (plain > 0) {
        out.classes.push_back(make_class(label, l, plain, chi, q(l * b) + hatchi, 0));
      }
    }
  }
  return normalized(out);
}

OrbitProfile extend_root_transfer(const OrbitProfile& profile, std::int64_t delta_beta) {
  if (delta_beta < 0) throw InvalidInput("extend_root_transfer needs delta_beta >= 0");
  root_class(profile, "input");
  OrbitProfile out = profile;
  const Rational d = delta_beta;
  for (auto& c : out.classes) {
    const Rational s = c.orbit_size;
    if (c.delta == 1) {
      c.hatchi_sum += binom2(d + 1) + d * (s - 1);
      c.chi_sum += d;
      c.orbit_size += delta_beta;
    } else {
      c.hatchi_sum += d * s;
    }
  }
  if (out.parameters.contains("b")) out.parameters["b"] += delta_beta;
  return out;
}

namespace {

struct Bucket {
  std::int64_t count = 0;
  std::vector<Rational> chi;
  std::vector<Rational> hatchi;
};

std::string values_text(const std::vector<Rational>& values) {
  std::vector<Rational> distinct = values;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() == 1) return rational_text(distinct[0]);
  std::string out = "varies:";
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    out += (i ? "/" : "") + rational_text(distinct[i]);
  }
  return out;
}

void diff_profiles(FamilyReport& report, const OrbitProfile& predicted,
                   const OrbitProfile& observed) {
  // Observed classes bucketed by (size, delta).
  std::map<std::pair<std::int64_t, int>, Bucket> buckets;
  for (const auto& c : observed.classes) {
    auto& bucket = buckets[{c.orbit_size, c.delta}];
    bucket.count += c.orbit_count;
    bucket.chi.push_back(c.chi_sum);
    bucket.hatchi.push_back(c.hatchi_sum);
  }
  std::map<std::pair<std::int64_t, int>, std::int64_t> predicted_counts;
  for (const auto& c : normalized(predicted).classes) {
    predicted_counts[{c.orbit_size, c.delta}] += c.orbit_count;
  }
  for (const auto& c : predicted.classes) {
    auto add = [&](std::string field, std::string want, std::string got) {
      const bool match = want == got;
      report.entries.push_back({c.label, std::move(field), std::move(want), std::move(got), match});
    };
    const auto it = buckets.find({c.orbit_size, c.delta});
    const std::string size = std::to_string(c.orbit_size);
    if (it == buckets.end()) {
      add("orbitSize", size, "absent");
      continue;
    }
    add("orbitSize", size, size);
    add("orbitCount", std::to_string(predicted_counts[{c.orbit_size, c.delta}]),
        std::to_string(it->second.count));
    add("chiSum", rational_text(c.chi_sum), values_text(it->second.chi));
    add("hatchiSum", rational_text(c.hatchi_sum), values_text(it->second.hatchi));
  }
  for (const auto& [key, bucket] : buckets) {
    if (!predicted_counts.contains(key)) {
      report.entries.push_back({"unpredicted", "orbitSize", "absent",
                                std::to_string(key.first), false});
    }
  }
  report.entries.push_back({"total", "antichains", std::to_string(predicted.antichain_total()),
                            std::to_string(report.antichains),
                            predicted.antichain_total() ==
                                static_cast<std::int64_t>(report.antichains)});
}

}  // namespace

FamilyReport verify_family(const FamilyDescriptor& desc, std::uint64_t budget) {
  const RootedTree tree = make_family(desc);
  const auto orbits = all_orbits(tree, budget);
  FamilyReport report;
  report.family = to_string(desc);
  for (const auto& o : orbits) report.antichains += o.size();
  report.orbits = orbits.size();
  report.observed = observed_profile(tree, orbits);

  if (std::holds_alternative<CompleteBinary>(desc)) {
    report.method = "homometry check";
    for (const auto& [name, stat] :
         {std::pair{"chi", Statistic::chi()}, std::pair{"hatchi", Statistic::hatchi()}}) {
      const auto verdict = check_homometry(tree, stat, orbits);
      VerifyEntry entry{"all", std::string("homometric(") + name + ")", "false",
                        verdict.homometric ? "true" : "false", !verdict.homometric};
      if (verdict.witness) {
        entry.observed += " (" + std::to_string(verdict.witness->first.sum) + " vs " +
                          std::to_string(verdict.witness->second.sum) + ")";
      }
      report.entries.push_back(std::move(entry));
    }
  } else {
    OrbitProfile predicted;
    if (const auto* t = std::get_if<ThreeLeaf>(&desc)) {
      report.method = "combine";
      predicted = combine_profiles(predicted_profile(ExtendedStar{t->b, {t->c + 1, t->d + 1}}),
                                   chain_profile(static_cast<std::size_t>(t->e)), t->a);
    } else {
      report.method = "closed form";
      predicted = predicted_profile(desc);
    }
    diff_profiles(report, predicted, report.observed);
    report.predicted = std::move(predicted);
  }
  report.all_match = std::all_of(report.entries.begin(), report.entries.end(),
                                 [](const VerifyEntry& e) { return e.match; });
  return report;
}

nlohmann::ordered_json to_json(const OrbitProfile& profile) {
  nlohmann::ordered_json out;
  auto classes = nlohmann::ordered_json::array();
  for (const auto& c : profile.classes) {
    nlohmann::ordered_json row;
    row["label"] = c.label;
    row["orbitSize"] = c.orbit_size;
    row["orbitCount"] = c.orbit_count;
    row["chiSum"] = rational_json(c.chi_sum);
    row["hatchiSum"] = rational_json(c.hatchi_sum);
    row["delta"] = c.delta;
    classes.push_back(std::move(row));
  }
  out["classes"] = std::move(classes);
  out["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : profile.parameters) out["parameters"][k] = v;
  return out;
}

nlohmann::ordered_json to_json(const FamilyReport& report) {
  nlohmann::ordered_json out;
  out["family"] = report.family;
  out["method"] = report.method;
  out["antichains"] = report.antichains;
  out["orbits"] = report.orbits;
  out["allMatch"] = report.all_match;
  out["summary"] = report.all_match ? "all classes match" : "mismatch";
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"class", e.label},
                       {"field", e.field},
                       {"predicted", e.predicted},
                       {"observed", e.observed},
                       {"match", e.match}});
  }
  out["entries"] = std::move(entries);
  out["predicted"] = report.predicted ? to_json(*report.predicted) : nlohmann::ordered_json(nullptr);
  out["observed"] = to_json(report.observed);
  return out;
}

}  // namespace rowmotion
