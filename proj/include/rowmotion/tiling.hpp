#pragma once

// Cylinder tilings of rowmotion orbits.
//
// Row i of the cylinder corresponds to leaf i; column k to the k-th
// antichain of the orbit.  A black tile for interval I spans the rows of I
// and beta_I consecutive columns (one per node of the branch B_I, bottom
// node first).  Every other cell is a 1x1 yellow tile.  Columns are indexed
// mod the orbit size, so tiles may cross the seam after the last column.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rowmotion/poset.hpp"
#include "rowmotion/rowmotion.hpp"

namespace rowmotion {

enum class TileColor { black, yellow };

struct Tile {
  TileColor color = TileColor::yellow;
  Interval interval;
  std::size_t start = 0;  // column, mod the circumference
  std::size_t width = 1;
  friend auto operator<=>(const Tile&, const Tile&) = default;
};

struct Tiling {
  std::size_t rows = 0;
  std::size_t columns = 0;
  /// Sorted by (start, interval).
  std::vector<Tile> tiles;
  friend bool operator==(const Tiling&, const Tiling&) = default;
};

/// Throws InvalidInput if the orbit is not a rho-orbit of the tree.
Tiling tiling_of_orbit(const RootedTree& tree, const Orbit& orbit);

struct TilingValidation {
  bool ok = true;
  std::string violation;  // first violation found, empty when ok
};

/// Checks cell exactness, tile shapes, and the two succession rules: a
/// black I-tile is followed by a yellow cell (#I = 1) or by the maximal
/// proper partition of I; a maximal yellow run J in a column is followed by
/// the maximal partition of J.
TilingValidation validate_tiling(const RootedTree& tree, const Tiling& tiling);

/// Inverse of tiling_of_orbit.  Throws InvalidInput on an invalid tiling.
Orbit orbit_of_tiling(const RootedTree& tree, const Tiling& tiling);

struct TileCount {
  std::size_t tiles = 0;    // m_I: number of black I-tiles
  std::size_t columns = 0;  // c_I: columns meeting a black J-tile, J strictly inside I
};

/// m_I and c_I for every interval of the tree's family.
std::map<Interval, TileCount> tile_counts(const RootedTree& tree, const Tiling& tiling);

enum class RenderFormat { ascii, svg };

/// Rows top to bottom are leaves 1..n.  In ASCII each cell is 'B' or 'Y';
/// '=' joins cells of one tile horizontally, '|' vertically.  Rows of a tile
/// crossing the seam carry a '=' overhang on both sides.
std::string render_tiling(const Tiling& tiling, RenderFormat format);

/// {rows, columns, tiles:[{color, interval:[lo,hi], start, width}]}.
nlohmann::ordered_json tiling_to_json(const Tiling& tiling);
Tiling tiling_from_json(const nlohmann::ordered_json& json);

}  // namespace rowmotion
