#pragma once

// Brute-force reference implementations for tests.  Nothing here calls the
// library: trees are re-parsed, the order is a closure of the parent map,
// and antichains, ideals and rowmotion come from subset enumeration and the
// textbook definitions.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Set = std::vector<int>;  // sorted

struct Tree {
  int n = 0;
  std::vector<int> parent;  // -1 for the root
  std::vector<std::vector<int>> children;
  std::vector<std::vector<char>> leq;  // leq[x][y]: x <= y
  std::vector<int> depth;
};

inline Tree parse(const std::string& s) {
  Tree t;
  std::vector<int> stack;
  for (char c : s) {
    if (c == '(') {
      const int id = t.n++;
      t.parent.push_back(stack.empty() ? -1 : stack.back());
      t.children.emplace_back();
      t.depth.push_back(static_cast<int>(stack.size()));
      if (!stack.empty()) t.children[stack.back()].push_back(id);
      stack.push_back(id);
    } else if (c == ')') {
      stack.pop_back();
    }
  }
  t.leq.assign(t.n, std::vector<char>(t.n, 0));
  for (int y = 0; y < t.n; ++y) {
    for (int x = y; x != -1; x = t.parent[x]) t.leq[x][y] = 1;
  }
  return t;
}

inline bool comparable(const Tree& t, int x, int y) { return t.leq[x][y] || t.leq[y][x]; }

inline std::vector<Set> subsets(int n) {
  std::vector<Set> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Set s;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline bool is_antichain(const Tree& t, const Set& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (comparable(t, s[i], s[j])) return false;
    }
  }
  return true;
}

inline bool is_ideal(const Tree& t, const Set& s) {
  for (int y : s) {
    for (int x = 0; x < t.n; ++x) {
      if (t.leq[x][y] && !std::binary_search(s.begin(), s.end(), x)) return false;
    }
  }
  return true;
}

inline std::vector<Set> antichains(const Tree& t) {
  std::vector<Set> out;
  for (auto& s : subsets(t.n)) {
    if (is_antichain(t, s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Set> ideals(const Tree& t) {
  std::vector<Set> out;
  for (auto& s : subsets(t.n)) {
    if (is_ideal(t, s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Set down(const Tree& t, const Set& a) {
  Set out;
  for (int x = 0; x < t.n; ++x) {
    for (int y : a) {
      if (t.leq[x][y]) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

inline Set maximal(const Tree& t, const Set& s) {
  Set out;
  for (int x : s) {
    bool top = true;
    for (int y : s) top = top && !(x != y && t.leq[x][y]);
    if (top) out.push_back(x);
  }
  return out;
}

inline Set rho(const Tree& t, const Set& a) {
  const Set d = down(t, a);
  Set complement;
  for (int x = 0; x < t.n; ++x) {
    if (!std::binary_search(d.begin(), d.end(), x)) complement.push_back(x);
  }
  Set out;
  for (int x : complement) {
    bool bottom = true;
    for (int y : complement) bottom = bottom && !(x != y && t.leq[y][x]);
    if (bottom) out.push_back(x);
  }
  return out;
}

inline Set rho_hat(const Tree& t, const Set& ideal) { return down(t, rho(t, maximal(t, ideal))); }

struct Orbit {
  std::vector<Set> members;  // rotated to the smallest member
  bool has_root = false;
};

inline std::vector<Orbit> orbits(const Tree& t) {
  std::set<Set> seen;
  std::vector<Orbit> out;
  for (const auto& a : antichains(t)) {
    if (seen.contains(a)) continue;
    Orbit o;
    Set cur = a;
    do {
      seen.insert(cur);
      o.members.push_back(cur);
      cur = rho(t, cur);
    } while (cur != a);
    o.has_root = std::find(o.members.begin(), o.members.end(), Set{0}) != o.members.end();
    out.push_back(std::move(o));
  }
  return out;
}

// Leaves are labelled 1..n in written (preorder) order.
inline std::vector<int> leaf_labels(const Tree& t) {
  std::vector<int> label(t.n, 0);
  int next = 1;
  for (int x = 0; x < t.n; ++x) {
    if (t.children[x].empty()) label[x] = next++;
  }
  return label;
}

inline std::pair<int, int> interval(const Tree& t, int x) {
  const auto label = leaf_labels(t);
  int lo = 1 << 30, hi = 0;
  for (int y = 0; y < t.n; ++y) {
    if (label[y] && t.leq[x][y]) {
      lo = std::min(lo, label[y]);
      hi = std::max(hi, label[y]);
    }
  }
  return {lo, hi};
}

struct Branch {
  std::pair<int, int> interval;
  std::vector<int> nodes;  // top first
};

inline std::map<std::pair<int, int>, Branch> branches(const Tree& t) {
  std::map<std::pair<int, int>, Branch> out;
  for (int x = 0; x < t.n; ++x) {
    auto& b = out[interval(t, x)];
    b.interval = interval(t, x);
    b.nodes.push_back(x);
  }
  for (auto& [key, b] : out) {
    std::sort(b.nodes.begin(), b.nodes.end(),
              [&](int x, int y) { return t.depth[x] > t.depth[y]; });
  }
  return out;
}

inline bool contains(const Set& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

// Every plane rooted tree with `nodes` nodes, in notation.
inline std::vector<std::string> all_trees(int nodes) {
  static std::map<int, std::vector<std::string>> tree_memo;
  static std::map<int, std::vector<std::string>> forest_memo;
  struct Gen {
    static const std::vector<std::string>& forests(int m) {
      auto it = forest_memo.find(m);
      if (it != forest_memo.end()) return it->second;
      std::vector<std::string> out;
      if (m == 0) {
        out.push_back("");
      } else {
        for (int k = 1; k <= m; ++k) {
          for (const auto& a : trees(k)) {
            for (const auto& b : forests(m - k)) out.push_back(a + b);
          }
        }
      }
      return forest_memo[m] = out;
    }
    static const std::vector<std::string>& trees(int n) {
      auto it = tree_memo.find(n);
      if (it != tree_memo.end()) return it->second;
      std::vector<std::string> out;
      for (const auto& f : forests(n - 1)) out.push_back("(" + f + ")");
      return tree_memo[n] = out;
    }
  };
  return Gen::trees(nodes);
}

// Random plane tree with `nodes` nodes: node i attaches below a uniformly
// chosen earlier node.
inline std::string random_tree(int nodes, std::mt19937_64& rng) {
  std::vector<std::vector<int>> kids(nodes);
  for (int i = 1; i < nodes; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    kids[pick(rng)].push_back(i);
  }
  std::string out;
  auto emit = [&](auto&& self, int x) -> void {
    out += '(';
    for (int c : kids[x]) self(self, c);
    out += ')';
  };
  emit(emit, 0);
  return out;
}

inline std::uint64_t binomial2(std::uint64_t m) { return m * (m - 1) / 2; }

}  // namespace oracle
