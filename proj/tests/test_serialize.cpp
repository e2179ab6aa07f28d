#include <doctest.h>

#include <random>

#include "pht/serialize.hpp"
#include "pht/shapes.hpp"

using namespace pht;

TEST_CASE("barcode JSON round trip keeps infinities") {
  Barcode bc(2);
  bc.add({0, -1, kInfinity});
  bc.add({0, 0.25, 0.75});
  bc.add({1, 0.5, 0.5, true});
  bc.add({2, 1, kInfinity});
  const auto j = json::to_json(bc);
  CHECK(j["intervals"][0][0][1] == "inf");
  CHECK(j["intervals"][1].empty());
  const auto back = json::barcode_from_json(j);
  CHECK(back.max_degree() == 2);
  CHECK(back.intervals(0).size() == 2);
  CHECK(back.intervals(0)[0].essential());
  CHECK(back.intervals(2)[0].birth == 1);
}

TEST_CASE("PHT sample JSON round trip is exact") {
  std::mt19937_64 rng(4);
  const auto c = shapes::random_polyhedron(rng, 3);
  const auto s = compute_pht(Subcomplex::full(c), make_grid(3, 12, GridScheme::random, 7));
  const auto text = json::dump_pretty(json::to_json(s));
  const auto back = json::pht_sample_from_json(json::Json::parse(text));
  CHECK(back.grid == s.grid);
  CHECK(back.complex_id == s.complex_id);
  CHECK(json::dump_pretty(json::to_json(back)) == text);
  CHECK(pht_distance_surrogate(s, back) == 0);
}

TEST_CASE("dumps end with a newline and have fixed field order") {
  const auto j = json::to_json(ManifoldSpec::torus(2, 0.5));
  const auto line = json::dump_line(j);
  CHECK(line.back() == '\n');
  CHECK(line.find('\n') == line.size() - 1);
  CHECK(line.find("kind") < line.find("radius"));
}
