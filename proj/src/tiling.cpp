#include "rowmotion/tiling.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "rowmotion/errors.hpp"

namespace rowmotion {

namespace {

constexpr std::size_t kUnowned = static_cast<std::size_t>(-1);

// owner[(row - 1) * columns + column] = index of the tile covering the cell.
class CellGrid {
 public:
  CellGrid(std::size_t rows, std::size_t columns)
      : columns_(columns), owner_(rows * columns, kUnowned) {}

  std::size_t& at(int row, std::size_t column) {
    return owner_[static_cast<std::size_t>(row - 1) * columns_ + column];
  }
  std::size_t at(int row, std::size_t column) const {
    return owner_[static_cast<std::size_t>(row - 1) * columns_ + column];
  }

 private:
  std::size_t columns_;
  std::vector<std::size_t> owner_;
};

std::string describe(const Tile& t) {
  return std::string(t.color == TileColor::black ? "black " : "yellow ") +
         to_string(t.interval) + " tile at column " + std::to_string(t.start);
}

void sort_tiles(std::vector<Tile>& tiles) {
  std::sort(tiles.begin(), tiles.end(), [](const Tile& a, const Tile& b) {
    return std::tie(a.start, a.interval) < std::tie(b.start, b.interval);
  });
}

}  // namespace

Tiling tiling_of_orbit(const RootedTree& tree, const Orbit& orbit) {
  const std::size_t c = orbit.size();
  const std::size_t n = tree.leaf_count();
  if (c == 0) throw InvalidInput("empty orbit");
  for (std::size_t k = 0; k < c; ++k) {
    const Antichain next = rho_antichain(tree, orbit.antichains[k]);
    if (next != orbit.antichains[(k + 1) % c]) {
      throw InvalidInput("orbit is not a rowmotion orbit of this tree (column " +
                         std::to_string(k) + ")");
    }
  }

  Tiling tiling{n, c, {}};
  for (std::size_t k = 0; k < c; ++k) {
    for (NodeId a : orbit.antichains[k].members) {
      const auto& spec = tree.branches()[tree.branch_index(a)];
      if (tree.branch_position(a) != spec.beta) continue;  // not a tile start
      if (spec.beta > c) throw InvalidInput("branch longer than the orbit");
      // The tile climbs its branch one node per column.
      for (std::size_t t = 1; t < spec.beta; ++t) {
        const auto& col = orbit.antichains[(k + t) % c].members;
        if (!std::binary_search(col.begin(), col.end(), spec.nodes[spec.beta - 1 - t])) {
          throw InvalidInput("orbit does not climb branch " + to_string(spec.interval));
        }
      }
      tiling.tiles.push_back({TileColor::black, spec.interval, k, spec.beta});
    }
  }

  CellGrid grid(n, c);
  for (std::size_t i = 0; i < tiling.tiles.size(); ++i) {
    const Tile& t = tiling.tiles[i];
    for (int row = t.interval.lo; row <= t.interval.hi; ++row) {
      for (std::size_t w = 0; w < t.width; ++w) {
        auto& cell = grid.at(row, (t.start + w) % c);
        if (cell != kUnowned) throw InvalidInput("overlapping black tiles in orbit");
        cell = i;
      }
    }
  }
  // Every member must lie in some black tile of its own interval.
  for (std::size_t k = 0; k < c; ++k) {
    for (NodeId a : orbit.antichains[k].members) {
      const std::size_t owner = grid.at(tree.interval_of(a).lo, k);
      if (owner == kUnowned || tiling.tiles[owner].interval != tree.interval_of(a)) {
        throw InvalidInput("orbit column " + std::to_string(k) +
                           " has a node outside any tile");
      }
    }
  }
  for (int row = 1; row <= static_cast<int>(n); ++row) {
    for (std::size_t k = 0; k < c; ++k) {
      if (grid.at(row, k) == kUnowned) {
        tiling.tiles.push_back({TileColor::yellow, {row, row}, k, 1});
      }
    }
  }
  sort_tiles(tiling.tiles);
  return tiling;
}

TilingValidation validate_tiling(const RootedTree& tree, const Tiling& tiling) {
  auto fail = [](std::string message) { return TilingValidation{false, std::move(message)}; };
  const int n = static_cast<int>(tree.leaf_count());
  const std::size_t c = tiling.columns;
  if (tiling.rows != tree.leaf_count()) {
    return fail("tiling has " + std::to_string(tiling.rows) + " rows, tree has " +
                std::to_string(n) + " leaves");
  }
  if (c == 0) return fail("tiling has no columns");

  for (const Tile& t : tiling.tiles) {
    if (t.interval.lo < 1 || t.interval.hi > n || t.interval.lo > t.interval.hi) {
      return fail(describe(t) + " lies outside the rows");
    }
    if (t.start >= c || t.width == 0 || t.width > c) {
      return fail(describe(t) + " has an invalid column span");
    }
    if (t.color == TileColor::yellow) {
      if (t.interval.length() != 1 || t.width != 1) {
        return fail(describe(t) + " is not 1x1");
      }
    } else {
      const IntervalSpec* spec = tree.find_branch(t.interval);
      if (spec == nullptr) return fail(describe(t) + " has an interval outside the family");
      if (t.width != spec->beta) {
        return fail(describe(t) + " has width " + std::to_string(t.width) +
                    ", expected beta = " + std::to_string(spec->beta));
      }
    }
  }

  CellGrid grid(tiling.rows, c);
  for (std::size_t i = 0; i < tiling.tiles.size(); ++i) {
    const Tile& t = tiling.tiles[i];
    for (int row = t.interval.lo; row <= t.interval.hi; ++row) {
      for (std::size_t w = 0; w < t.width; ++w) {
        auto& cell = grid.at(row, (t.start + w) % c);
        if (cell != kUnowned) {
          return fail("cell (" + std::to_string(row) + "," +
                      std::to_string((t.start + w) % c) + ") is covered twice");
        }
        cell = i;
      }
    }
  }
  for (int row = 1; row <= n; ++row) {
    for (std::size_t k = 0; k < c; ++k) {
      if (grid.at(row, k) == kUnowned) {
        return fail("cell (" + std::to_string(row) + "," + std::to_string(k) +
                    ") is not covered");
      }
    }
  }

  // The blocks must be black tiles that begin exactly in column `column`.
  auto starts_blocks = [&](const std::vector<Interval>& blocks, std::size_t column) {
    for (const Interval& block : blocks) {
      const Tile& t = tiling.tiles[grid.at(block.lo, column)];
      if (t.color != TileColor::black || t.interval != block || t.start != column) {
        return false;
      }
    }
    return true;
  };

  for (const Tile& t : tiling.tiles) {
    if (t.color != TileColor::black) continue;
    const std::size_t next = (t.start + t.width) % c;
    if (t.interval.length() == 1) {
      if (tiling.tiles[grid.at(t.interval.lo, next)].color != TileColor::yellow) {
        return fail(describe(t) + " is not followed by a yellow tile");
      }
    } else if (!starts_blocks(interval_partition(tree, t.interval, true), next)) {
      return fail(describe(t) + " is not followed by the maximal proper partition of " +
                  to_string(t.interval));
    }
  }

  for (std::size_t k = 0; k < c; ++k) {
    const std::size_t next = (k + 1) % c;
    int row = 1;
    while (row <= n) {
      if (tiling.tiles[grid.at(row, k)].color != TileColor::yellow) {
        ++row;
        continue;
      }
      int end = row;
      while (end + 1 <= n && tiling.tiles[grid.at(end + 1, k)].color == TileColor::yellow) {
        ++end;
      }
      const Interval run{row, end};
      if (!starts_blocks(interval_partition(tree, run, false), next)) {
        return fail("yellow run " + to_string(run) + " in column " + std::to_string(k) +
                    " is not followed by its maximal partition");
      }
      row = end + 1;
    }
  }
  return {};
}

Orbit orbit_of_tiling(const RootedTree& tree, const Tiling& tiling) {
  const auto report = validate_tiling(tree, tiling);
  if (!report.ok) throw InvalidInput("invalid tiling: " + report.violation);
  const std::size_t c = tiling.columns;
  std::vector<NodeSet> columns(c);
  for (const Tile& t : tiling.tiles) {
    if (t.color != TileColor::black) continue;
    const IntervalSpec& spec = *tree.find_branch(t.interval);
    // The i-th column of a tile holds the i-th smallest node of the branch.
    for (std::size_t i = 0; i < t.width; ++i) {
      columns[(t.start + i) % c].push_back(spec.nodes[spec.beta - 1 - i]);
    }
  }
  std::vector<Antichain> cycle;
  cycle.reserve(c);
  for (auto& col : columns) cycle.push_back(Antichain{make_node_set(std::move(col))});
  return make_orbit(std::move(cycle), tree.root());
}

std::map<Interval, TileCount> tile_counts(const RootedTree& tree, const Tiling& tiling) {
  const std::size_t c = tiling.columns;
  std::map<Interval, TileCount> counts;
  for (const auto& spec : tree.branches()) counts[spec.interval] = {};

  // covered[k] = intervals of black tiles meeting column k.
  std::vector<std::vector<Interval>> covered(c);
  for (const Tile& t : tiling.tiles) {
    if (t.color != TileColor::black) continue;
    ++counts[t.interval].tiles;
    for (std::size_t w = 0; w < t.width; ++w) covered[(t.start + w) % c].push_back(t.interval);
  }
  for (auto& [interval, count] : counts) {
    for (std::size_t k = 0; k < c; ++k) {
      const bool meets = std::any_of(covered[k].begin(), covered[k].end(), [&](const Interval& j) {
        return j != interval && interval.contains(j);
      });
      if (meets) ++count.columns;
    }
  }
  return counts;
}

namespace {

std::string render_ascii(const Tiling& tiling) {
  const std::size_t c = tiling.columns;
  const int n = static_cast<int>(tiling.rows);
  CellGrid grid(tiling.rows, c);
  for (std::size_t i = 0; i < tiling.tiles.size(); ++i) {
    const Tile& t = tiling.tiles[i];
    for (int row = t.interval.lo; row <= t.interval.hi; ++row) {
      for (std::size_t w = 0; w < t.width; ++w) grid.at(row, (t.start + w) % c) = i;
    }
  }
  auto wraps = [&](int row) {
    return c > 1 && grid.at(row, 0) == grid.at(row, c - 1);
  };
  bool any_wrap = false;
  for (int row = 1; row <= n; ++row) any_wrap = any_wrap || wraps(row);

  auto trim = [](std::string line) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line;
  };

  std::ostringstream out;
  for (int row = 1; row <= n; ++row) {
    if (row > 1) {
      std::string between = any_wrap ? " " : "";
      for (std::size_t k = 0; k < c; ++k) {
        if (k > 0) between += ' ';
        between += grid.at(row, k) == grid.at(row - 1, k) ? '|' : ' ';
      }
      out << trim(between) << '\n';
    }
    std::string line;
    if (any_wrap) line += wraps(row) ? '=' : ' ';
    for (std::size_t k = 0; k < c; ++k) {
      if (k > 0) line += grid.at(row, k) == grid.at(row, k - 1) ? '=' : ' ';
      line += tiling.tiles[grid.at(row, k)].color == TileColor::black ? 'B' : 'Y';
    }
    if (any_wrap) line += wraps(row) ? '=' : ' ';
    out << trim(line) << '\n';
  }
  return out.str();
}

std::string render_svg(const Tiling& tiling) {
  constexpr double kCell = 20.0;
  constexpr double kMargin = 20.0;
  const double c = static_cast<double>(tiling.columns);
  const double width = c * kCell + 2 * kMargin;
  const double height = static_cast<double>(tiling.rows) * kCell + 2 * kMargin;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  auto rect = [&](double x0, double x1, const Tile& t) {
    const double y = kMargin + (t.interval.lo - 1) * kCell;
    const double h = t.interval.length() * kCell;
    out << "  <rect x=\"" << kMargin + x0 * kCell << "\" y=\"" << y << "\" width=\""
        << (x1 - x0) * kCell << "\" height=\"" << h << "\" fill=\""
        << (t.color == TileColor::black ? "#1f1f1f" : "#f2d544")
        << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  };
  for (const Tile& t : tiling.tiles) {
    const double start = static_cast<double>(t.start);
    const double end = start + static_cast<double>(t.width);
    if (end <= c) {
      rect(start, end, t);
    } else {
      // Seam crossing: draw both ends with a half-cell overhang.
      rect(start, c + 0.5, t);
      rect(-0.5, end - c, t);
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string render_tiling(const Tiling& tiling, RenderFormat format) {
  return format == RenderFormat::ascii ? render_ascii(tiling) : render_svg(tiling);
}

nlohmann::ordered_json tiling_to_json(const Tiling& tiling) {
  auto tiles = nlohmann::ordered_json::array();
  for (const Tile& t : tiling.tiles) {
    tiles.push_back({{"color", t.color == TileColor::black ? "black" : "yellow"},
                     {"interval", {t.interval.lo, t.interval.hi}},
                     {"start", t.start},
                     {"width", t.width}});
  }
  nlohmann::ordered_json out;
  out["rows"] = tiling.rows;
  out["columns"] = tiling.columns;
  out["tiles"] = std::move(tiles);
  return out;
}

Tiling tiling_from_json(const nlohmann::ordered_json& json) {
  try {
    Tiling tiling;
    tiling.rows = json.at("rows").get<std::size_t>();
    tiling.columns = json.at("columns").get<std::size_t>();
    for (const auto& t : json.at("tiles")) {
      const auto color = t.at("color").get<std::string>();
      if (color != "black" && color != "yellow") throw InvalidInput("unknown tile color " + color);
      const auto& iv = t.at("interval");
      tiling.tiles.push_back({color == "black" ? TileColor::black : TileColor::yellow,
                              {iv.at(0).get<int>(), iv.at(1).get<int>()},
                              t.at("start").get<std::size_t>(),
                              t.at("width").get<std::size_t>()});
    }
    sort_tiles(tiling.tiles);
    return tiling;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed tiling JSON: ") + e.what());
  }
}

}  // namespace rowmotion
