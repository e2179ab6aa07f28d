#include "pht/shapes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "pht/random.hpp"

namespace pht::shapes {

ComplexPtr regular_polygon(std::size_t n, double radius, double phase) {
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  std::vector<Point> v;
  std::vector<Simplex> edges;
  for (std::uint32_t k = 0; k < n; ++k) {
    const double a = phase + 2 * std::numbers::pi * k / static_cast<double>(n);
    const double c = std::abs(std::cos(a)) < 1e-15 ? 0.0 : std::cos(a);
    const double s = std::abs(std::sin(a)) < 1e-15 ? 0.0 : std::sin(a);
    v.push_back({radius * c, radius * s, 0});
    edges.push_back({k, static_cast<std::uint32_t>((k + 1) % n)});
  }
  return EmbeddedComplex::build(closure_data(2, std::move(v), edges));
}

namespace {

Cover cover_from_groups(const ComplexPtr& c, const std::vector<std::vector<std::size_t>>& groups) {
  std::vector<Subcomplex> elements;
  for (const auto& g : groups) elements.push_back(Subcomplex::closure_of(c, g));
  return Cover::make(c, std::move(elements));
}

}  // namespace

Cover polygon_halves(const ComplexPtr& polygon) {
  const auto& c = *polygon;
  const double tol = 1e-9;
  std::vector<std::vector<std::size_t>> groups(2);
  for (std::size_t id = c.offset(1); id < c.offset(1) + c.count(1); ++id) {
    const auto e = c.vertices_of(id);
    const double x0 = c.point(e[0])[0], x1 = c.point(e[1])[0];
    if (x0 >= -tol && x1 >= -tol) groups[0].push_back(id);
    if (x0 <= tol && x1 <= tol) groups[1].push_back(id);
  }
  return cover_from_groups(polygon, groups);
}

ComplexPtr octahedron_sphere(std::size_t level) {
  if (level < 1) throw std::invalid_argument("subdivision level must be at least 1");
  const int L = static_cast<int>(level);
  std::map<std::array<int, 3>, std::uint32_t> index;
  std::vector<Point> v;
  auto vertex = [&](std::array<int, 3> a) {
    auto [it, fresh] = index.try_emplace(a, static_cast<std::uint32_t>(v.size()));
    if (fresh) {
      const double n = std::hypot(a[0], a[1], a[2]);
      v.push_back({a[0] / n, a[1] / n, a[2] / n});
    }
    return it->second;
  };
  std::vector<Simplex> tris;
  for (int face = 0; face < 8; ++face) {
    const int sx = face & 1 ? -1 : 1, sy = face & 2 ? -1 : 1, sz = face & 4 ? -1 : 1;
    auto at = [&](int i, int j) { return vertex({sx * i, sy * j, sz * (L - i - j)}); };
    for (int i = 0; i < L; ++i) {
      for (int j = 0; i + j < L; ++j) {
        tris.push_back({at(i, j), at(i + 1, j), at(i, j + 1)});
        if (i + j + 2 <= L) tris.push_back({at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
      }
    }
  }
  return EmbeddedComplex::build(closure_data(3, std::move(v), tris));
}

Cover octant_cover(const ComplexPtr& sphere) {
  const auto& c = *sphere;
  std::vector<std::vector<std::size_t>> groups(8);
  for (std::size_t id = c.offset(2); id < c.offset(2) + c.count(2); ++id) {
    Point centroid{};
    for (auto p : c.vertices_of(id)) {
      for (int a = 0; a < 3; ++a) centroid[a] += c.point(p)[a];
    }
    const int face = (centroid[0] < 0 ? 1 : 0) | (centroid[1] < 0 ? 2 : 0) | (centroid[2] < 0 ? 4 : 0);
    groups[static_cast<std::size_t>(face)].push_back(id);
  }
  return cover_from_groups(sphere, groups);
}

Cover maximal_simplex_cover(const ComplexPtr& complex) {
  std::vector<std::vector<std::size_t>> groups;
  for (auto id : Subcomplex::full(complex).maximal_simplices()) groups.push_back({id});
  return cover_from_groups(complex, groups);
}

ComplexPtr random_polyhedron(std::mt19937_64& rng, int d) {
  auto jitter = [&] { return 0.5 * (unit_uniform(rng) - 0.5); };
  std::vector<Point> v;
  std::vector<Simplex> simplices;
  if (d == 2) {
    const std::uint32_t nx = 6, ny = 5;
    for (std::uint32_t j = 0; j < ny; ++j) {
      for (std::uint32_t i = 0; i < nx; ++i) v.push_back({i + jitter(), j + jitter(), 0});
    }
    auto id = [&](std::uint32_t i, std::uint32_t j) { return j * nx + i; };
    for (std::uint32_t j = 0; j + 1 < ny; ++j) {
      for (std::uint32_t i = 0; i + 1 < nx; ++i) {
        if (unit_uniform(rng) < 0.45) simplices.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
        if (unit_uniform(rng) < 0.45) simplices.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        if (unit_uniform(rng) < 0.15) simplices.push_back({id(i, j), id(i + 1, j)});
        if (unit_uniform(rng) < 0.15) simplices.push_back({id(i, j), id(i, j + 1)});
      }
    }
  } else if (d == 3) {
    const std::uint32_t nx = 3, ny = 3, nz = 2;
    for (std::uint32_t k = 0; k < nz; ++k) {
      for (std::uint32_t j = 0; j < ny; ++j) {
        for (std::uint32_t i = 0; i < nx; ++i) v.push_back({i + jitter(), j + jitter(), k + jitter()});
      }
    }
    auto id = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k) { return (k * ny + j) * nx + i; };
    std::array<int, 3> perm{0, 1, 2};
    for (std::uint32_t k = 0; k + 1 < nz; ++k) {
      for (std::uint32_t j = 0; j + 1 < ny; ++j) {
        for (std::uint32_t i = 0; i + 1 < nx; ++i) {
          // Kuhn triangulation: one tetrahedron per monotone path through the cube.
          std::sort(perm.begin(), perm.end());
          do {
            std::array<std::uint32_t, 3> c{i, j, k};
            Simplex tet{id(c[0], c[1], c[2])};
            for (int axis : perm) {
              ++c[static_cast<std::size_t>(axis)];
              tet.push_back(id(c[0], c[1], c[2]));
            }
            if (unit_uniform(rng) < 0.5) simplices.push_back(std::move(tet));
          } while (std::next_permutation(perm.begin(), perm.end()));
          if (unit_uniform(rng) < 0.2) simplices.push_back({id(i, j, k), id(i + 1, j + 1, k)});
        }
      }
    }
  } else {
    throw std::invalid_argument("unsupported dimension");
  }
  return EmbeddedComplex::build(closure_data(d, std::move(v), simplices));
}

Cover random_cover(std::mt19937_64& rng, const ComplexPtr& complex, std::size_t k) {
  auto maximal = Subcomplex::full(complex).maximal_simplices();
  if (maximal.empty()) throw std::invalid_argument("cannot cover an empty complex");
  k = std::clamp<std::size_t>(k, 1, maximal.size());
  for (std::size_t i = maximal.size(); i > 1; --i) {
    std::swap(maximal[i - 1], maximal[static_cast<std::size_t>(rng() % i)]);
  }
  std::vector<std::vector<std::size_t>> groups(k);
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    const std::size_t e = i < k ? i : static_cast<std::size_t>(rng() % k);
    groups[e].push_back(maximal[i]);
    if (k > 1 && unit_uniform(rng) < 0.35) {
      groups[(e + 1 + rng() % (k - 1)) % k].push_back(maximal[i]);
    }
  }
  return cover_from_groups(complex, groups);
}

}  // namespace pht::shapes
