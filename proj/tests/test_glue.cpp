#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pht/glue.hpp"
#include "pht/pht.hpp"
#include "pht/shapes.hpp"

using namespace pht;

namespace {

Direction up() { return Direction::from_angle(std::numbers::pi / 2); }

// Square [0,1]^2 split along the diagonal 02.
ComplexPtr square() {
  std::vector<Point> v{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  return EmbeddedComplex::build(closure_data(2, v, std::vector<Simplex>{{0, 1, 2}, {0, 2, 3}}));
}

Direction random_direction(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  std::vector<double> x(static_cast<std::size_t>(d));
  for (auto& c : x) c = g(rng);
  return Direction::normalized(x);
}

bool higher_rows_vanish(const E1Page& e1) {
  for (const auto& row : e1) {
    for (std::size_t q = 1; q < row.size(); ++q) {
      if (row[q] != 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("nerve of the two arcs") {
  const auto circle = shapes::regular_polygon(8);
  const auto nerve = build_nerve(shapes::polygon_halves(circle));
  CHECK(nerve.complete());
  CHECK(nerve.top_depth() == 2);
  REQUIRE(nerve.at_depth(1).size() == 2);
  REQUIRE(nerve.at_depth(2).size() == 1);
  const auto& ab = nerve.at_depth(2)[0];
  CHECK(ab.index == std::vector<std::uint32_t>{0, 1});
  CHECK(ab.simplices.size() == 2);
  for (auto id : ab.simplices) CHECK(circle->dim(id) == 0);
  CHECK(ab.facets.size() == 2);
  CHECK(nerve.entry(ab.facets[0]).index == std::vector<std::uint32_t>{1});
  CHECK(nerve.entry(ab.facets[1]).index == std::vector<std::uint32_t>{0});
  const std::vector<std::uint32_t> key{0, 1};
  CHECK(nerve.find(key).has_value());
}

TEST_CASE("nerve of a single element and of a split square") {
  const auto sq = square();
  const auto one = build_nerve(Cover::make(sq, {Subcomplex::full(sq)}));
  CHECK(one.entries().size() == 1);
  CHECK(one.top_depth() == 1);

  const auto two = build_nerve(shapes::maximal_simplex_cover(sq));
  REQUIRE(two.at_depth(2).size() == 1);
  const auto& shared = two.at_depth(2)[0];
  const auto diag = *sq->find(Simplex{0, 2});
  CHECK(shared.simplices.size() == 3);
  CHECK(std::find(shared.simplices.begin(), shared.simplices.end(), diag) != shared.simplices.end());
}

TEST_CASE("nerve depth limit") {
  const auto sphere = shapes::octahedron_sphere(2);
  const auto cover = shapes::octant_cover(sphere);
  const auto full = build_nerve(cover);
  CHECK(full.complete());
  const auto cut = build_nerve(cover, 2);
  CHECK(cut.max_depth() == 2);
  CHECK(cut.top_depth() == 2);
  CHECK(cut.complete() == (full.top_depth() <= 2));
  // Octants around a pole: four meet at each axis point.
  CHECK(full.top_depth() == 4);
  CHECK_THROWS_AS(StalkEvaluator(cut, make_grid(3, 1).directions[0]), std::invalid_argument);
}

TEST_CASE("Čech H0 complex of the two arcs") {
  const auto circle = shapes::regular_polygon(8);
  const auto nerve = build_nerve(shapes::polygon_halves(circle));

  const auto low = cech_h0_stalk(nerve, up(), 0.0);
  CHECK(low.dims == std::vector<std::size_t>{2, 1});
  CHECK(low.cohomology == std::vector<int>{1, 0, 0});

  const auto high = cech_h0_stalk(nerve, up(), 1.0 + 1e-9);
  CHECK(high.dims == std::vector<std::size_t>{2, 2});
  CHECK(high.cohomology == std::vector<int>{1, 1, 0});

  const auto none = cech_h0_stalk(nerve, up(), -5.0);
  CHECK(none.dims == std::vector<std::size_t>{0, 0});
  CHECK(none.cohomology == std::vector<int>{0, 0, 0});
}

TEST_CASE("total cohomology and E1 of the two arcs") {
  const auto circle = shapes::regular_polygon(8);
  const auto nerve = build_nerve(shapes::polygon_halves(circle));
  CHECK(total_cohomology_stalk(nerve, up(), 0.0) == std::vector<int>{1, 0, 0});
  CHECK(total_cohomology_stalk(nerve, up(), 1.5) == std::vector<int>{1, 1, 0});
  const auto e1 = e1_page(nerve, up(), 0.0);
  REQUIRE(e1.size() >= 2);
  CHECK(e1[0][0] == 2);
  CHECK(e1[1][0] == 1);
  CHECK(higher_rows_vanish(e1));
}

TEST_CASE("one-element cover glues trivially") {
  std::mt19937_64 rng(5);
  const auto c = shapes::random_polyhedron(rng, 2);
  const auto nerve = build_nerve(Cover::make(c, {Subcomplex::full(c)}));
  for (int k = 0; k < 5; ++k) {
    const StalkEvaluator ev(nerve, random_direction(rng, 2));
    for (double t : critical_t_grid(ev.vertex_heights())) {
      CHECK(ev.total_cohomology(t) == ev.direct_betti(t));
    }
  }
}

TEST_CASE("critical t grid") {
  const std::vector<double> h{2, 0, 1, 1};
  CHECK(critical_t_grid(h) == std::vector<double>{-1, 0, 0.5, 1, 1.5, 2, 3});
}

TEST_CASE("octant sphere: total agrees, fast fails, E1 sees curvature") {
  const auto sphere = shapes::octahedron_sphere(4);
  const auto cover = shapes::octant_cover(sphere);
  const auto grid = make_grid(3, 16);
  GlueOptions total;
  total.mode = GlueMode::total;
  const auto t = glued_betti_curves(cover, grid, total);
  CHECK(t.disagree == 0);
  CHECK(t.agree == t.stalks.size());
  CHECK_FALSE(t.warning.has_value());
  bool curved = false;
  for (const auto& s : t.stalks) curved = curved || s.higher_rows_nonzero();
  CHECK(curved);

  GlueOptions fast;
  fast.mode = GlueMode::fast_h0;
  const auto f = glued_betti_curves(cover, grid, fast);
  CHECK(f.disagree > 0);
  CHECK(f.warning.has_value());
  // Every fast mismatch sits at a stalk whose E1 page has higher rows.
  for (const auto& s : f.stalks) {
    if (!s.fast_agrees()) CHECK(s.higher_rows_nonzero());
  }
}

TEST_CASE("simplex covers: fast path agrees and is guaranteed") {
  std::mt19937_64 rng(21);
  for (int d : {2, 3}) {
    const auto c = shapes::random_polyhedron(rng, d);
    const auto cover = shapes::maximal_simplex_cover(c);
    CHECK(convexity_check(cover).guaranteed());
    GlueOptions fast;
    fast.mode = GlueMode::fast_h0;
    const auto f = glued_betti_curves(cover, make_grid(d, 8), fast);
    CHECK(f.disagree == 0);
    CHECK_FALSE(f.warning.has_value());
    for (const auto& s : f.stalks) CHECK(higher_rows_vanish(s.e1));
  }
}

TEST_CASE("convexity verdicts and scans") {
  const auto circle = shapes::regular_polygon(8);
  const auto arcs = convexity_check(shapes::polygon_halves(circle), ScanOptions{64, 64, 0});
  CHECK_FALSE(arcs.guaranteed());
  REQUIRE(arcs.scan.has_value());
  CHECK(arcs.scan->stalks == 64 * 64);
  CHECK(arcs.scan->passed());

  const auto sphere = shapes::octahedron_sphere(4);
  const auto octants = convexity_check(shapes::octant_cover(sphere), ScanOptions{16, 0, 0});
  CHECK_FALSE(octants.guaranteed());
  for (auto v : octants.verdicts) CHECK(v == ConvexityVerdict::unverified);
  REQUIRE(octants.scan.has_value());
  CHECK_FALSE(octants.scan->passed());
  CHECK(octants.scan->first_failure.has_value());
}

TEST_CASE("property: descent on random covers") {
  std::mt19937_64 rng(77);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto c = shapes::random_polyhedron(rng, d);
      const auto cover = shapes::random_cover(rng, c, 2 + rng() % 4);
      const auto r = glued_betti_curves(cover, make_grid(d, 6), {});
      CHECK(r.disagree == 0);
    }
  }
}

TEST_CASE("property: Čech differentials compose to zero") {
  std::mt19937_64 rng(78);
  const auto sphere = shapes::octahedron_sphere(3);
  const auto nerve = build_nerve(shapes::octant_cover(sphere));
  for (int k = 0; k < 6; ++k) {
    const StalkEvaluator ev(nerve, random_direction(rng, 3));
    for (double t : critical_t_grid(ev.vertex_heights())) {
      const auto cx = ev.cech_h0(t);
      for (std::size_t i = 0; i + 1 < cx.differentials.size(); ++i) {
        CHECK(f2::is_zero(f2::multiply(cx.differentials[i + 1], cx.differentials[i])));
      }
    }
  }
}

TEST_CASE("property: two-element covers obey the Mayer-Vietoris bound") {
  std::mt19937_64 rng(79);
  auto check_cover = [&](const Cover& cover, int d) {
    const auto nerve = build_nerve(cover);
    for (int k = 0; k < 4; ++k) {
      const StalkEvaluator ev(nerve, random_direction(rng, d));
      for (double t : critical_t_grid(ev.vertex_heights())) {
        const auto h = ev.total_cohomology(t);
        const auto e1 = ev.e1_page(t);
        for (int n = 0; n <= d; ++n) {
          const auto un = static_cast<std::size_t>(n);
          const int bound = e1[0][un] + (n >= 1 && e1.size() > 1 ? e1[1][un - 1] : 0);
          CHECK(h[un] <= bound);
        }
      }
    }
  };
  check_cover(shapes::polygon_halves(shapes::regular_polygon(8)), 2);
  for (int trial = 0; trial < 4; ++trial) {
    const auto c = shapes::random_polyhedron(rng, 2);
    check_cover(shapes::random_cover(rng, c, 2), 2);
  }
  // Equality where the connecting map vanishes: the arcs at (up, 0).
  const auto nerve = build_nerve(shapes::polygon_halves(shapes::regular_polygon(8)));
  const StalkEvaluator ev(nerve, up());
  const auto e1 = ev.e1_page(0.0);
  const auto h = ev.total_cohomology(0.0);
  CHECK(h[0] == e1[0][0] - e1[1][0]);
}

TEST_CASE("property: fast and total agree when higher E1 rows vanish") {
  std::mt19937_64 rng(80);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto c = shapes::random_polyhedron(rng, d);
      const auto nerve = build_nerve(shapes::random_cover(rng, c, 3), static_cast<std::size_t>(d) + 2);
      const StalkEvaluator ev(nerve, random_direction(rng, d));
      for (double t : critical_t_grid(ev.vertex_heights())) {
        if (!higher_rows_vanish(ev.e1_page(t))) continue;
        CHECK(ev.cech_h0(t).cohomology == ev.total_cohomology(t));
      }
    }
  }
}

TEST_CASE("property: restriction is consistent with the standalone complex") {
  std::mt19937_64 rng(81);
  for (int d : {2, 3}) {
    const auto c = shapes::random_polyhedron(rng, d);
    const auto cover = shapes::random_cover(rng, c, 3);
    const auto& m1 = cover.elements()[0];
    // Same coordinates, only the simplices of M1.
    ComplexData data{d, c->data().vertices, {}};
    for (auto id : m1.simplex_ids()) {
      const auto k = static_cast<std::size_t>(c->dim(id));
      if (data.simplices.size() <= k) data.simplices.resize(k + 1);
      const auto v = c->vertices_of(id);
      data.simplices[k].emplace_back(v.begin(), v.end());
    }
    const auto standalone = EmbeddedComplex::build(data);
    const auto grid = make_grid(d, 12);
    const auto a = compute_pht(m1, grid), b = compute_pht(Subcomplex::full(standalone), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      for (int n = 0; n <= d; ++n) CHECK(bottleneck(a.barcodes[k], b.barcodes[k], n) == 0);
    }
    // Glued stalks of M1 as its own one-element cover match its direct Betti numbers.
    const auto nerve = build_nerve(Cover::make(standalone, {Subcomplex::full(standalone)}));
    const StalkEvaluator ev(nerve, grid.directions[0]);
    for (double t : critical_t_grid(ev.vertex_heights())) {
      const auto sub = sublevel(m1, grid.directions[0], t);
      CHECK(ev.total_cohomology(t) == oracle::betti(*c, sub.simplex_ids(), d));
    }
  }
}

TEST_CASE("glue mode names") {
  CHECK(parse_glue_mode("fast") == GlueMode::fast_h0);
  CHECK(parse_glue_mode("fastH0") == GlueMode::fast_h0);
  CHECK(parse_glue_mode("total") == GlueMode::total);
  CHECK_THROWS_AS(parse_glue_mode("slow"), std::invalid_argument);
  CHECK(to_string(GlueMode::fast_h0) == "fast");
}
