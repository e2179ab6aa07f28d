#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pht/complex.hpp"

namespace pht {

enum class GridScheme {
  uniform,    // d = 2: equally spaced angles starting at 0
  fibonacci,  // d = 3: golden-angle spiral
  random,     // any d: seeded uniform directions
};

GridScheme parse_grid_scheme(const std::string& name);
std::string to_string(GridScheme scheme);
// uniform for d = 2, fibonacci for d = 3.
GridScheme default_scheme(int d);

// Finite sample of S^{d-1}; the weights are equal and sum to vol(S^{d-1}).
struct DirectionGrid {
  int dimension = 2;
  GridScheme scheme = GridScheme::uniform;
  std::uint64_t seed = 0;
  std::vector<Direction> directions;
  std::vector<double> weights;

  std::size_t size() const { return directions.size(); }
  friend bool operator==(const DirectionGrid&, const DirectionGrid&) = default;
};

// 2*pi for d = 2, 4*pi for d = 3.
double sphere_volume(int d);

// Throws std::invalid_argument for d outside {2, 3}, resolution < 1, or a
// scheme that does not apply to d.
DirectionGrid make_grid(int d, std::size_t resolution, GridScheme scheme, std::uint64_t seed = 0);
DirectionGrid make_grid(int d, std::size_t resolution);

}  // namespace pht
