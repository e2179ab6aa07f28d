#include "pht/grid.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pht/random.hpp"

namespace pht {

GridScheme parse_grid_scheme(const std::string& name) {
  if (name == "uniform") return GridScheme::uniform;
  if (name == "fibonacci") return GridScheme::fibonacci;
  if (name == "random") return GridScheme::random;
  throw std::invalid_argument("unknown grid scheme '" + name + "'");
}

std::string to_string(GridScheme scheme) {
  switch (scheme) {
    case GridScheme::uniform: return "uniform";
    case GridScheme::fibonacci: return "fibonacci";
    case GridScheme::random: return "random";
  }
  return "unknown";
}

GridScheme default_scheme(int d) { return d == 3 ? GridScheme::fibonacci : GridScheme::uniform; }

double sphere_volume(int d) {
  if (d == 2) return 2 * std::numbers::pi;
  if (d == 3) return 4 * std::numbers::pi;
  throw std::invalid_argument("unsupported dimension " + std::to_string(d));
}

DirectionGrid make_grid(int d, std::size_t resolution, GridScheme scheme, std::uint64_t seed) {
  if (d != 2 && d != 3) throw std::invalid_argument("unsupported dimension " + std::to_string(d));
  if (resolution < 1) throw std::invalid_argument("grid resolution must be at least 1");
  if ((scheme == GridScheme::uniform && d != 2) || (scheme == GridScheme::fibonacci && d != 3)) {
    throw std::invalid_argument("grid scheme " + to_string(scheme) + " does not apply to d = " +
                                std::to_string(d));
  }
  DirectionGrid g;
  g.dimension = d;
  g.scheme = scheme;
  g.seed = seed;
  const auto n = static_cast<double>(resolution);
  const double pi = std::numbers::pi;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < resolution; ++k) {
    const auto kd = static_cast<double>(k);
    switch (scheme) {
      case GridScheme::uniform:
        g.directions.push_back(Direction::from_angle(2 * pi * kd / n));
        break;
      case GridScheme::fibonacci: {
        const double golden = pi * (3 - std::sqrt(5.0));
        const double z = 1 - (2 * kd + 1) / n;
        const double r = std::sqrt(std::max(0.0, 1 - z * z));
        const double phi = golden * kd;
        const double v[3] = {r * std::cos(phi), r * std::sin(phi), z};
        g.directions.push_back(Direction::normalized(v));
        break;
      }
      case GridScheme::random: {
        if (d == 2) {
          g.directions.push_back(Direction::from_angle(2 * pi * unit_uniform(rng)));
        } else {
          const double z = 2 * unit_uniform(rng) - 1;
          const double phi = 2 * pi * unit_uniform(rng);
          const double r = std::sqrt(std::max(0.0, 1 - z * z));
          const double v[3] = {r * std::cos(phi), r * std::sin(phi), z};
          g.directions.push_back(Direction::normalized(v));
        }
        break;
      }
    }
  }
  g.weights.assign(resolution, sphere_volume(d) / n);
  return g;
}

DirectionGrid make_grid(int d, std::size_t resolution) {
  return make_grid(d, resolution, default_scheme(d));
}

}  // namespace pht
