#include "pht/serialize.hpp"

#include <cmath>
#include <stdexcept>

namespace pht::json {

namespace {

Json real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double real_from(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    throw std::invalid_argument("expected a number or \"inf\", got \"" + s + "\"");
  }
  return j.get<double>();
}

Json point(const Point& p, int d) {
  Json a = Json::array();
  for (int i = 0; i < d; ++i) a.push_back(p[static_cast<std::size_t>(i)]);
  return a;
}

}  // namespace

Json to_json(const Barcode& barcode) {
  Json degrees = Json::array();
  for (int n = 0; n <= barcode.max_degree(); ++n) {
    Json level = Json::array();
    for (const auto& iv : barcode.intervals(n)) {
      if (!iv.ephemeral) level.push_back(Json::array({iv.birth, real(iv.death)}));
    }
    degrees.push_back(std::move(level));
  }
  Json j;
  j["max_degree"] = barcode.max_degree();
  j["intervals"] = std::move(degrees);
  return j;
}

Barcode barcode_from_json(const Json& j) {
  Barcode bc(j.at("max_degree").get<int>());
  const auto& degrees = j.at("intervals");
  if (degrees.size() != static_cast<std::size_t>(bc.max_degree()) + 1) {
    throw std::invalid_argument("barcode interval list does not match max_degree");
  }
  for (std::size_t n = 0; n < degrees.size(); ++n) {
    for (const auto& pair : degrees[n]) {
      Interval iv;
      iv.degree = static_cast<int>(n);
      iv.birth = real_from(pair.at(0));
      iv.death = real_from(pair.at(1));
      iv.ephemeral = iv.birth == iv.death;
      bc.add(iv);
    }
  }
  return bc;
}

Json to_json(const DirectionGrid& grid) {
  Json dirs = Json::array();
  for (const auto& v : grid.directions) dirs.push_back(point(v.components(), grid.dimension));
  Json j;
  j["dimension"] = grid.dimension;
  j["scheme"] = to_string(grid.scheme);
  j["seed"] = grid.seed;
  j["resolution"] = grid.size();
  j["directions"] = std::move(dirs);
  j["weights"] = grid.weights;
  return j;
}

DirectionGrid grid_from_json(const Json& j) {
  DirectionGrid g;
  g.dimension = j.at("dimension").get<int>();
  g.scheme = parse_grid_scheme(j.at("scheme").get<std::string>());
  g.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& v : j.at("directions")) {
    const auto comps = v.get<std::vector<double>>();
    g.directions.push_back(Direction::make(comps));
  }
  g.weights = j.at("weights").get<std::vector<double>>();
  if (g.weights.size() != g.directions.size()) {
    throw std::invalid_argument("grid weights do not match directions");
  }
  return g;
}

Json to_json(const PhtSample& sample) {
  Json bcs = Json::array();
  for (const auto& bc : sample.barcodes) bcs.push_back(to_json(bc));
  Json j;
  j["complex_id"] = sample.complex_id;
  j["max_degree"] = sample.max_degree;
  j["grid"] = to_json(sample.grid);
  j["barcodes"] = std::move(bcs);
  return j;
}

PhtSample pht_sample_from_json(const Json& j) {
  PhtSample s;
  s.complex_id = j.at("complex_id").get<std::string>();
  s.max_degree = j.at("max_degree").get<int>();
  s.grid = grid_from_json(j.at("grid"));
  for (const auto& b : j.at("barcodes")) s.barcodes.push_back(barcode_from_json(b));
  if (s.barcodes.size() != s.grid.size()) {
    throw std::invalid_argument("barcode count does not match the grid");
  }
  return s;
}

Json to_json(const StalkReport& r) {
  Json j;
  j["direction"] = r.direction_index;
  j["v"] = point(r.v.components(), r.v.dimension());
  j["t"] = r.t;
  if (!r.e1.empty()) j["e1"] = r.e1;
  if (!r.cech_h0_dims.empty()) j["cech_h0_dims"] = r.cech_h0_dims;
  if (!r.fast.empty()) j["fast"] = r.fast;
  if (!r.total.empty()) j["total"] = r.total;
  j["direct"] = r.direct;
  j["agree"] = r.fast.empty() ? r.total_agrees() : r.fast_agrees();
  return j;
}

Json to_json(const CechH0Complex& c) {
  Json j;
  j["t"] = c.t;
  j["dims"] = c.dims;
  j["basis"] = c.basis;
  j["cohomology"] = c.cohomology;
  return j;
}

Json to_json(const ConvexityReport& report) {
  Json verdicts = Json::array();
  for (auto v : report.verdicts) verdicts.push_back(to_string(v));
  Json j;
  j["guaranteed"] = report.guaranteed();
  j["verdicts"] = std::move(verdicts);
  if (report.scan) {
    const auto& s = *report.scan;
    Json scan;
    scan["stalks"] = s.stalks;
    scan["failures"] = s.failures;
    scan["passed"] = s.passed();
    scan["element_failures"] = s.element_failures;
    if (s.first_failure) {
      scan["first_failure"] = {{"v", point(s.first_failure->first.components(),
                                           s.first_failure->first.dimension())},
                               {"t", s.first_failure->second}};
    }
    j["scan"] = std::move(scan);
  }
  return j;
}

Json to_json(const ManifoldSpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind);
  j["radius"] = spec.radius;
  if (spec.kind == ManifoldKind::torus) j["major_radius"] = spec.major_radius;
  return j;
}

Json to_json(const DensityResult& d) {
  Json j;
  j["ok"] = d.ok;
  j["worst_gap"] = d.worst_gap;
  j["worst_point"] = point(d.worst_point, 3);
  j["reference_points"] = d.reference_points;
  return j;
}

Json to_json(const ApproximationReport& r) {
  Json j;
  j["manifold"] = to_json(r.spec);
  j["n"] = r.n;
  j["epsilon"] = r.epsilon;
  j["seed"] = r.seed;
  j["cap"] = r.cap;
  j["tau"] = r.tau;
  j["density"] = to_json(r.density);
  j["simplex_counts"] = r.simplex_counts;
  j["cech_betti"] = r.cech_betti;
  j["manifold_betti"] = r.manifold_betti;
  j["homology_agrees"] = r.homology_agrees;
  j["surrogate"] = r.surrogate;
  j["bound"] = r.bound;
  j["within_bound"] = r.within_bound;
  j["small_epsilon_regime"] = r.small_epsilon_regime;
  j["small_epsilon_bound"] = r.small_epsilon_bound;
  j["within_small_epsilon_bound"] = r.within_small_epsilon_bound;
  j["certified"] = r.small_epsilon_regime ? "epsilon" : "2*epsilon*vol";
  return j;
}

std::string dump_line(const Json& j) { return j.dump() + "\n"; }
std::string dump_pretty(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace pht::json
