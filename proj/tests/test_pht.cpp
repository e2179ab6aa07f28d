#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pht/homology.hpp"
#include "pht/pht.hpp"
#include "pht/shapes.hpp"

using namespace pht;

namespace {

ComplexPtr unit_square() {
  std::vector<Point> v{{-1, -1, 0}, {1, -1, 0}, {1, 1, 0}, {-1, 1, 0}};
  std::vector<Simplex> e{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  return EmbeddedComplex::build(closure_data(2, v, e));
}

// Rotates every vertex by angle a about the origin (d = 2).
ComplexPtr rotated(const EmbeddedComplex& c, double a) {
  auto data = c.data();
  for (auto& p : data.vertices) {
    const double x = p[0], y = p[1];
    p[0] = std::cos(a) * x - std::sin(a) * y;
    p[1] = std::sin(a) * x + std::cos(a) * y;
  }
  return EmbeddedComplex::build(data);
}

// Occurrences inside the plot group, skipping the legend.
std::size_t count(const std::string& svg, const std::string& needle) {
  const auto begin = svg.find("<g stroke=\"none\">");
  const auto s = svg.substr(begin, svg.find("</g>", begin) - begin);
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("grid examples") {
  const auto g = make_grid(2, 4, GridScheme::uniform);
  REQUIRE(g.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double a = k * std::numbers::pi / 2;
    CHECK(g.directions[k][0] == doctest::Approx(std::cos(a)));
    CHECK(g.directions[k][1] == doctest::Approx(std::sin(a)));
    CHECK(g.weights[k] == doctest::Approx(std::numbers::pi / 2));
  }
  for (std::size_t n : {1, 7, 64, 333}) {
    const auto gn = make_grid(2, n);
    double sum = 0;
    for (double w : gn.weights) sum += w;
    CHECK(sum == doctest::Approx(2 * std::numbers::pi));
  }
  CHECK_THROWS_AS(make_grid(3, 10, GridScheme::uniform), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 10, GridScheme::fibonacci), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 0), std::invalid_argument);
}

TEST_CASE("fibonacci grid spacing") {
  const std::size_t n = 100;
  const auto g = make_grid(3, n, GridScheme::fibonacci);
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = 10;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double dot = 0;
      for (int a = 0; a < 3; ++a) dot += g.directions[i][static_cast<std::size_t>(a)] * g.directions[j][static_cast<std::size_t>(a)];
      best = std::min(best, std::acos(std::clamp(dot, -1.0, 1.0)));
    }
    total += best;
  }
  const double mean = total / n, expected = std::sqrt(4 * std::numbers::pi / n);
  CHECK(std::abs(mean - expected) <= 0.2 * expected);
  double sum = 0;
  for (double w : g.weights) sum += w;
  CHECK(sum == doctest::Approx(4 * std::numbers::pi));
}

TEST_CASE("random grid is seeded") {
  CHECK(make_grid(3, 20, GridScheme::random, 5) == make_grid(3, 20, GridScheme::random, 5));
  CHECK_FALSE(make_grid(3, 20, GridScheme::random, 5) == make_grid(3, 20, GridScheme::random, 6));
}

TEST_CASE("PHT of a single vertex") {
  const Point p{0.3, -0.7, 0};
  const auto c = EmbeddedComplex::build(closure_data(2, {p}, std::vector<Simplex>{{0}}));
  const auto grid = make_grid(2, 16);
  const auto s = compute_pht(Subcomplex::full(c), grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto h0 = s.barcodes[k].intervals(0);
    REQUIRE(h0.size() == 1);
    CHECK(h0[0].birth == project(p, grid.directions[k]));
    CHECK(h0[0].essential());
  }
}

TEST_CASE("PHT of the 8-gon") {
  const auto circle = shapes::regular_polygon(8);
  const auto grid = make_grid(2, 32);
  const auto s = compute_pht(Subcomplex::full(circle), grid);
  CHECK(s.max_degree == 2);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double lo = 1e9, hi = -1e9;
    for (std::size_t p = 0; p < circle->num_points(); ++p) {
      const double h = project(circle->point(p), grid.directions[k]);
      lo = std::min(lo, h);
      hi = std::max(hi, h);
    }
    std::vector<Interval> h0, h1;
    for (const auto& iv : s.barcodes[k].intervals(0)) {
      if (!iv.ephemeral && iv.death > iv.birth) h0.push_back(iv);
    }
    for (const auto& iv : s.barcodes[k].intervals(1)) {
      if (!iv.ephemeral && iv.death > iv.birth) h1.push_back(iv);
    }
    REQUIRE(h0.size() == 1);
    CHECK(h0[0].birth == lo);
    CHECK(h0[0].essential());
    REQUIRE(h1.size() == 1);
    CHECK(h1[0].birth == hi);
    CHECK(h1[0].essential());
  }
}

TEST_CASE("arc of the 8-gon at (up, 0) is connected") {
  const auto circle = shapes::regular_polygon(8);
  const auto cover = shapes::polygon_halves(circle);
  DirectionGrid grid = make_grid(2, 4);  // direction 1 is (0, 1)
  for (const auto& arc : cover.elements()) {
    const auto s = compute_pht(arc, grid);
    CHECK(betti_curve(s.barcodes[1], 0, 0.0) == 1);
  }
}

TEST_CASE("betti curve beyond the top equals the complex homology") {
  std::mt19937_64 rng(3);
  for (int d : {2, 3}) {
    const auto c = shapes::random_polyhedron(rng, d);
    const auto b = homology::betti_numbers(Subcomplex::full(c), d);
    const auto s = compute_pht(Subcomplex::full(c), make_grid(d, 24));
    for (const auto& bc : s.barcodes) {
      for (int n = 0; n <= d; ++n) CHECK(betti_curve(bc, n, 1e6) == b[static_cast<std::size_t>(n)]);
    }
  }
}

TEST_CASE("rotation equivariance on grid-compatible rotations") {
  const std::size_t n = 16;
  const auto grid = make_grid(2, n);
  const auto square = unit_square();
  const auto base = compute_pht(Subcomplex::full(square), grid);
  const auto turned = compute_pht(Subcomplex::full(rotated(*square, 2 * std::numbers::pi * 3 / n)), grid);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = base.barcodes[k];
    const auto& b = turned.barcodes[(k + 3) % n];
    for (int deg = 0; deg <= 1; ++deg) CHECK(bottleneck(a, b, deg) <= 1e-12);
  }
}

TEST_CASE("parallel evaluation is bit-identical") {
  std::mt19937_64 rng(8);
  const auto c = shapes::random_polyhedron(rng, 3);
  const auto grid = make_grid(3, 40);
  const auto serial = compute_pht(Subcomplex::full(c), grid, 1);
  const auto parallel = compute_pht(Subcomplex::full(c), grid, 4);
  CHECK(serial.complex_id == parallel.complex_id);
  CHECK(serial.barcodes == parallel.barcodes);
}

TEST_CASE("distance surrogate") {
  const auto square = unit_square();
  const auto circle = shapes::regular_polygon(64);
  const auto g64 = make_grid(2, 64), g128 = make_grid(2, 128);
  const auto a = compute_pht(Subcomplex::full(square), g64);
  const auto b = compute_pht(Subcomplex::full(circle), g64);
  CHECK(pht_distance_surrogate(a, a) == 0);
  const double ab = pht_distance_surrogate(a, b);
  CHECK(ab > 0);
  CHECK(ab == pht_distance_surrogate(b, a));
  const double fine = pht_distance_surrogate(compute_pht(Subcomplex::full(square), g128),
                                             compute_pht(Subcomplex::full(circle), g128));
  CHECK(std::abs(fine - ab) <= 0.05 * ab);
  CHECK_THROWS_AS(pht_distance_surrogate(a, compute_pht(Subcomplex::full(circle), g128)),
                  std::invalid_argument);
}

TEST_CASE("heatmaps") {
  const auto circle = shapes::regular_polygon(8);
  const auto grid = make_grid(2, 32);
  const auto full = compute_pht(Subcomplex::full(circle), grid);
  const auto svg = render_heatmap_svg(full, 0);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count(svg, "#fdd49e") > 0);   // value 1
  CHECK(count(svg, "#ef6548") == 0);  // value 2 never occurs
  CHECK(render_heatmap_svg(full, 0) == svg);

  const auto empty = compute_pht(Subcomplex::empty(circle), grid);
  const auto blank = render_heatmap_svg(empty, 0);
  CHECK(count(blank, "#fdd49e") == 0);
  CHECK(count(blank, "#f4f4f4") > 0);

  const auto arc = compute_pht(shapes::polygon_halves(circle).elements()[0], grid);
  const auto two = render_heatmap_svg(arc, 0);
  CHECK(count(two, "#fdd49e") > 0);
  CHECK(count(two, "#ef6548") > 0);

  const auto sphere = compute_pht(Subcomplex::full(shapes::octahedron_sphere(1)), make_grid(3, 8));
  CHECK_THROWS_AS(render_heatmap_svg(sphere, 0), std::invalid_argument);
}
