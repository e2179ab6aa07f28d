#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pht/complex.hpp"
#include "pht/homology.hpp"
#include "pht/shapes.hpp"

using namespace pht;

namespace {

ComplexData triangle_data() {
  return {2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{{0}, {1}, {2}}, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1, 2}}}};
}

ComplexPtr path_graph(std::size_t n) {
  std::vector<Point> v;
  std::vector<Simplex> e;
  for (std::uint32_t i = 0; i < n; ++i) {
    v.push_back({static_cast<double>(i), 0, 0});
    if (i + 1 < n) e.push_back({i, i + 1});
  }
  return EmbeddedComplex::build(closure_data(2, v, e));
}

std::vector<std::size_t> ids_of(const Subcomplex& s) { return s.simplex_ids(); }

}  // namespace

TEST_CASE("validate: closed triangle") {
  CHECK(validate(triangle_data()).ok);
}

TEST_CASE("validate: missing face is reported") {
  auto data = triangle_data();
  data.simplices[1].pop_back();
  const auto report = validate(data);
  CHECK_FALSE(report.ok);
  CHECK(report.message == "face 12 of 012 absent");
  REQUIRE(report.offending);
  CHECK(*report.offending == Simplex{0, 1, 2});
  CHECK_THROWS_AS(EmbeddedComplex::build(data), ComplexError);
}

TEST_CASE("validate: empty complex") {
  CHECK(validate(ComplexData{}).ok);
  const auto c = EmbeddedComplex::build(ComplexData{});
  CHECK(c->num_simplices() == 0);
  CHECK(c->top_dimension() == -1);
}

TEST_CASE("validate: other violations") {
  auto data = triangle_data();
  data.simplices[1][0] = {1, 0};
  CHECK_FALSE(validate(data).ok);
  data = triangle_data();
  data.simplices[0].push_back({3});
  CHECK_FALSE(validate(data).ok);
  data = triangle_data();
  data.simplices[1].push_back({0, 1});
  CHECK_FALSE(validate(data).ok);
  data = triangle_data();
  data.vertices[0][1] = std::nan("");
  CHECK_FALSE(validate(data).ok);
  data = triangle_data();
  data.dimension = 4;
  CHECK_FALSE(validate(data).ok);
}

TEST_CASE("incidence tables") {
  const auto c = EmbeddedComplex::build(triangle_data());
  CHECK(c->count(0) == 3);
  CHECK(c->count(1) == 3);
  CHECK(c->count(2) == 1);
  CHECK(c->facets(0).empty());
  const auto tri = *c->find(Simplex{0, 1, 2});
  const auto f = c->facets(tri);
  REQUIRE(f.size() == 3);
  // Facet j omits vertex j.
  CHECK(*c->find(Simplex{1, 2}) == f[0]);
  CHECK(*c->find(Simplex{0, 2}) == f[1]);
  CHECK(*c->find(Simplex{0, 1}) == f[2]);
  const auto e01 = *c->find(Simplex{0, 1});
  REQUIRE(c->cofacets(e01).size() == 1);
  CHECK(c->cofacets(e01)[0] == tri);
  CHECK(homology::euler_characteristic(*c) == 1);
}

TEST_CASE("facets match the vertex tuples on random complexes") {
  std::mt19937_64 rng(2);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto c = shapes::random_polyhedron(rng, d);
      for (std::size_t id = 0; id < c->num_simplices(); ++id) {
        const auto v = c->vertices_of(id);
        const auto f = c->facets(id);
        REQUIRE(f.size() == (c->dim(id) == 0 ? 0 : v.size()));
        for (std::size_t j = 0; j < f.size(); ++j) {
          Simplex face;
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i != j) face.push_back(v[i]);
          }
          const auto fv = c->vertices_of(f[j]);
          CHECK(Simplex(fv.begin(), fv.end()) == face);
          const auto co = c->cofacets(f[j]);
          CHECK(std::find(co.begin(), co.end(), id) != co.end());
        }
      }
    }
  }
}

TEST_CASE("intersect: arcs of the 8-gon meet in two points") {
  const auto circle = shapes::regular_polygon(8);
  const auto cover = shapes::polygon_halves(circle);
  const auto both = intersect(cover.elements());
  CHECK(both.size() == 2);
  for (auto id : both.simplex_ids()) CHECK(circle->dim(id) == 0);
  CHECK(components(both).count == 2);
}

TEST_CASE("intersect: idempotent and disjoint") {
  const auto p = path_graph(5);
  const auto a = Subcomplex::closure_of(p, std::vector<std::size_t>{*p->find(Simplex{0, 1})});
  const auto b = Subcomplex::closure_of(p, std::vector<std::size_t>{*p->find(Simplex{3, 4})});
  const std::vector<Subcomplex> aa{a, a}, ab{a, b};
  CHECK(intersect(aa) == a);
  CHECK(intersect(ab).empty());
}

TEST_CASE("height examples") {
  const auto v = EmbeddedComplex::build(closure_data(2, {{0, 1, 0}}, std::vector<Simplex>{{0}}));
  CHECK(height(*v, 0, Direction::from_angle(std::numbers::pi / 2)) == doctest::Approx(1.0));

  const auto e = EmbeddedComplex::build(closure_data(2, {{0, 0, 0}, {1, 0, 0}}, std::vector<Simplex>{{0, 1}}));
  CHECK(height(*e, *e->find(Simplex{0, 1}), Direction::from_angle(0)) == 1.0);

  const auto t = EmbeddedComplex::build(triangle_data());
  const std::array<double, 2> diag{1, 1};
  CHECK(height(*t, *t->find(Simplex{0, 1, 2}), Direction::normalized(diag)) ==
        doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("direction validation") {
  const std::array<double, 2> bad{1, 1};
  CHECK_THROWS_AS(Direction::make(bad), std::invalid_argument);
  const std::array<double, 2> zero{0, 0};
  CHECK_THROWS_AS(Direction::normalized(zero), std::invalid_argument);
  const std::array<double, 3> ok{0, 0, 1};
  CHECK(Direction::make(ok).dimension() == 3);
}

TEST_CASE("sublevel examples") {
  const auto circle = shapes::regular_polygon(8);
  const auto full = Subcomplex::full(circle);
  const auto up = Direction::from_angle(std::numbers::pi / 2);
  CHECK(sublevel(full, up, 1.0) == full);
  CHECK(sublevel(full, up, -1.5).empty());
  const auto lower = sublevel(full, up, 0.0);
  std::size_t expected = 0;
  for (std::size_t id = 0; id < circle->num_simplices(); ++id) {
    bool in = true;
    for (auto p : circle->vertices_of(id)) in = in && circle->point(p)[1] <= 0.0;
    expected += in;
  }
  CHECK(lower.size() == expected);
  CHECK(lower.size() == 9);
  CHECK(components(lower).count == 1);
}

TEST_CASE("components examples") {
  const auto p = path_graph(5);
  CHECK(components(Subcomplex::full(p)).count == 1);
  const auto two = EmbeddedComplex::build(closure_data(2, {{0, 0, 0}, {1, 0, 0}}, std::vector<Simplex>{{0}, {1}}));
  const auto comp = components(Subcomplex::full(two));
  CHECK(comp.count == 2);
  CHECK(comp.label[0] == 0);
  CHECK(comp.label[1] == 1);

  // The arcs meet at the top and bottom vertices; only the bottom one is in
  // the sublevel at t = 0.
  const auto circle = shapes::regular_polygon(8);
  const auto both = intersect(shapes::polygon_halves(circle).elements());
  const auto up = Direction::from_angle(std::numbers::pi / 2);
  CHECK(components(sublevel(both, up, 0.0)).count == 1);
  CHECK(components(sublevel(both, up, 1.0)).count == 2);
}

TEST_CASE("property: sublevel monotone and commutes with intersection") {
  std::mt19937_64 rng(9);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto c = shapes::random_polyhedron(rng, d);
      const auto cover = shapes::random_cover(rng, c, 3);
      std::vector<double> dir(static_cast<std::size_t>(d));
      std::normal_distribution<double> g;
      for (auto& x : dir) x = g(rng);
      const auto v = Direction::normalized(dir);
      const auto full = Subcomplex::full(c);
      std::uniform_real_distribution<double> ut(-2, 8);
      double t1 = ut(rng), t2 = ut(rng);
      if (t1 > t2) std::swap(t1, t2);
      CHECK(sublevel(full, v, t1).mask().is_subset_of(sublevel(full, v, t2).mask()));

      const auto& el = cover.elements();
      const std::vector<Subcomplex> pair{el[0], el[1]};
      const std::vector<Subcomplex> subs{sublevel(el[0], v, t2), sublevel(el[1], v, t2)};
      CHECK(sublevel(intersect(pair), v, t2) == intersect(subs));
      CHECK(is_face_closed(*c, sublevel(full, v, t1).mask()));
    }
  }
}

TEST_CASE("property: height is the max over faces") {
  std::mt19937_64 rng(4);
  const auto c = shapes::random_polyhedron(rng, 3);
  const std::array<double, 3> dir{0.3, -0.5, 0.8};
  const auto v = Direction::normalized(dir);
  for (std::size_t id = 0; id < c->num_simplices(); ++id) {
    double m = -1e300;
    for (auto f : c->facets(id)) m = std::max(m, height(*c, f, v));
    if (c->dim(id) > 0) CHECK(height(*c, id, v) == m);
  }
}

TEST_CASE("property: components of the full complex equal beta_0") {
  std::mt19937_64 rng(6);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto c = shapes::random_polyhedron(rng, d);
      const auto full = Subcomplex::full(c);
      const auto ids = ids_of(full);
      CHECK(components(full).count == static_cast<std::size_t>(oracle::betti(*c, ids, 0)[0]));
    }
  }
}

TEST_CASE("homology agrees with the dense oracle") {
  std::mt19937_64 rng(12);
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto c = shapes::random_polyhedron(rng, d);
      const auto full = Subcomplex::full(c);
      CHECK(homology::betti_numbers(full, d) == oracle::betti(*c, ids_of(full), d));
    }
  }
  const auto sphere = shapes::octahedron_sphere(3);
  CHECK(homology::betti_numbers(Subcomplex::full(sphere), 2) == std::vector<int>{1, 0, 1});
  CHECK(homology::euler_characteristic(*sphere) == 2);
}

TEST_CASE("cover construction") {
  const auto p = path_graph(3);
  const auto a = Subcomplex::closure_of(p, std::vector<std::size_t>{*p->find(Simplex{0, 1})});
  CHECK_THROWS_AS(Cover::make(p, {a}), ComplexError);
  const auto b = Subcomplex::closure_of(p, std::vector<std::size_t>{*p->find(Simplex{1, 2})});
  CHECK(Cover::make(p, {a, b}).size() == 2);
  BitSet bad(p->num_simplices());
  bad.set(*p->find(Simplex{0, 1}));
  CHECK_THROWS_AS(Subcomplex::from_mask(p, bad), ComplexError);
}
