// Acceptance run: each criterion prints one PASS/FAIL line. Criteria 1-7 run
// once serially and once with several workers; criterion 8 compares the
// artifacts of the two passes byte for byte.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "pht/glue.hpp"
#include "pht/hash.hpp"
#include "pht/parallel.hpp"
#include "pht/sample.hpp"
#include "pht/serialize.hpp"
#include "pht/shapes.hpp"

using namespace pht;
using json::Json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::string artifact;
  double seconds = 0;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Direction up() {
  const double v[2] = {0, 1};
  return Direction::make(v);
}

// Shapes shared by criteria 2 and 3: ten planar and ten solid polyhedra.
std::vector<ComplexPtr> test_shapes() {
  std::mt19937_64 rng(2024);
  std::vector<ComplexPtr> out;
  for (int i = 0; i < 20; ++i) out.push_back(shapes::random_polyhedron(rng, i < 10 ? 2 : 3));
  return out;
}

std::string stalk_lines(const GluedCurves& curves) {
  std::string s;
  for (const auto& r : curves.stalks) s += json::dump_line(json::to_json(r));
  return s;
}

Outcome worked_circle(unsigned) {
  Outcome o;
  const auto circle = shapes::regular_polygon(8);
  const auto nerve = build_nerve(shapes::polygon_halves(circle));
  const StalkEvaluator ev(nerve, up());
  const auto low = ev.cech_h0(0.0);
  const double delta = 1e-9;
  const auto high = ev.cech_h0(1 + delta);
  const auto total_high = ev.total_cohomology(1 + delta);
  const bool low_ok = low.dims == std::vector<std::size_t>{2, 1} && low.cohomology[0] == 1 && low.cohomology[1] == 0;
  const bool high_ok = high.cohomology[0] == 1 && high.cohomology[1] == 1 && total_high[0] == 1 && total_high[1] == 1;
  o.pass = low_ok && high_ok;
  o.detail = fmt("t=0: dims (%zu,%zu) H=(%d,%d); t=1+1e-9: H=(%d,%d) total=(%d,%d)", low.dims[0], low.dims[1],
                 low.cohomology[0], low.cohomology[1], high.cohomology[0], high.cohomology[1], total_high[0],
                 total_high[1]);
  o.artifact = json::dump_line(json::to_json(low)) + json::dump_line(json::to_json(high)) +
               json::dump_line(Json(total_high));
  return o;
}

Outcome nerve_lemma(unsigned par) {
  Outcome o;
  const auto shapes = test_shapes();
  const auto grid2 = make_grid(2, 64), grid3 = make_grid(3, 64);
  std::size_t stalks = 0, disagree = 0, max_simplices = 0;
  bool warned = false;
  std::string art;
  for (const auto& c : shapes) {
    max_simplices = std::max(max_simplices, c->num_simplices());
    GlueOptions opts;
    opts.mode = GlueMode::fast_h0;
    opts.with_e1 = false;
    opts.parallelism = par;
    const auto r = glued_betti_curves(shapes::maximal_simplex_cover(c), c->dimension() == 2 ? grid2 : grid3, opts);
    stalks += r.stalks.size();
    disagree += r.disagree;
    warned = warned || r.warning.has_value();
    art += stalk_lines(r);
  }
  o.pass = disagree == 0 && !warned && max_simplices <= 300;
  o.detail = fmt("%zu shapes (<= %zu simplices), %zu stalks, %zu disagree", shapes.size(), max_simplices, stalks,
                 disagree);
  o.artifact = sha256_hex(art);
  return o;
}

Outcome descent(unsigned par) {
  Outcome o;
  const auto shapes = test_shapes();
  const auto grid2 = make_grid(2, 64), grid3 = make_grid(3, 64);
  std::mt19937_64 rng(7);
  std::size_t stalks = 0, disagree = 0, covers = 0;
  std::string art;
  for (const auto& c : shapes) {
    for (int k = 0; k < 5; ++k) {
      const auto cover = shapes::random_cover(rng, c, 2 + rng() % 4);
      GlueOptions opts;
      opts.mode = GlueMode::total;
      opts.with_e1 = false;
      opts.parallelism = par;
      const auto r = glued_betti_curves(cover, c->dimension() == 2 ? grid2 : grid3, opts);
      ++covers;
      stalks += r.stalks.size();
      disagree += r.disagree;
      art += stalk_lines(r);
    }
  }
  o.pass = disagree == 0 && covers >= 5 * shapes.size();
  o.detail = fmt("%zu covers, %zu stalks, %zu disagree", covers, stalks, disagree);
  o.artifact = sha256_hex(art);
  return o;
}

Outcome obstruction(unsigned par) {
  Outcome o;
  const auto sphere = shapes::octahedron_sphere(4);
  const auto cover = shapes::octant_cover(sphere);
  const auto grid = make_grid(3, 64);
  GlueOptions total;
  total.parallelism = par;
  const auto t = glued_betti_curves(cover, grid, total);
  GlueOptions fast = total;
  fast.mode = GlueMode::fast_h0;
  fast.with_e1 = false;
  const auto f = glued_betti_curves(cover, grid, fast);
  std::size_t q1 = 0;
  for (const auto& s : t.stalks) {
    bool any = false;
    for (const auto& row : s.e1) any = any || (row.size() > 1 && row[1] > 0);
    q1 += any;
  }
  o.pass = q1 > 0 && f.disagree > 0 && t.disagree == 0;
  o.detail = fmt("%zu stalks: %zu with E1 q=1 entries, fast disagrees at %zu, total disagrees at %zu",
                 t.stalks.size(), q1, f.disagree, t.disagree);
  o.artifact = sha256_hex(stalk_lines(t) + stalk_lines(f));
  return o;
}

Outcome persistence_oracle(unsigned par) {
  Outcome o;
  const std::size_t count = 50;
  std::vector<int> mismatches(count, 0), prefixes(count, 0);
  std::vector<std::string> art(count);
  std::vector<std::size_t> sizes(count, 0);
  parallel_for(count, par, [&](std::size_t i) {
    std::mt19937_64 rng(1000 + i);
    const auto c = gen::small_complex(rng, 100);
    const auto tied = gen::random_filtration(rng, c);
    // Strictly increasing values so every simplexwise prefix is a sublevel set.
    std::vector<FiltrationEntry> entries(tied.entries().begin(), tied.entries().end());
    for (std::size_t k = 0; k < entries.size(); ++k) entries[k].value = static_cast<double>(k);
    const auto f = Filtration::make(c, entries);
    const auto bc = compute_barcode(f);
    const oracle::SimplexIndex index(*c);
    std::vector<std::size_t> ids;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      ids.push_back(entries[k].simplex);
      const auto want = oracle::betti(index, ids, 3);
      for (int n = 0; n <= 3; ++n) {
        mismatches[i] += betti_curve(bc, n, static_cast<double>(k)) != want[static_cast<std::size_t>(n)];
      }
      ++prefixes[i];
    }
    sizes[i] = c->num_simplices();
    art[i] = json::dump_line(json::to_json(bc));
  });
  int total_mismatch = 0, total_prefixes = 0;
  std::string all;
  for (std::size_t i = 0; i < count; ++i) {
    total_mismatch += mismatches[i];
    total_prefixes += prefixes[i];
    all += art[i];
  }
  const auto largest = *std::max_element(sizes.begin(), sizes.end());
  o.pass = total_mismatch == 0 && largest <= 100;
  o.detail = fmt("%zu filtrations (<= %zu simplices), %d prefixes, %d mismatches", count, largest, total_prefixes,
                 total_mismatch);
  o.artifact = all;
  return o;
}

Outcome bottleneck_oracle(unsigned par) {
  Outcome o;
  const std::size_t count = 200;
  std::vector<double> got(count), want(count);
  parallel_for(count, par, [&](std::size_t i) {
    std::mt19937_64 rng(5000 + i);
    const auto a = gen::random_diagram(rng, 6), b = gen::random_diagram(rng, 6);
    got[i] = bottleneck(a, b);
    want[i] = oracle::bottleneck(a, b);
  });
  std::size_t bad = 0, infinite = 0;
  double worst = 0;
  std::string art;
  for (std::size_t i = 0; i < count; ++i) {
    if (std::isinf(want[i]) || std::isinf(got[i])) {
      bad += std::isinf(want[i]) != std::isinf(got[i]);
      infinite += std::isinf(want[i]);
    } else {
      worst = std::max(worst, std::abs(got[i] - want[i]));
      bad += std::abs(got[i] - want[i]) > 1e-9;
    }
    art += fmt("%.17g\n", got[i]);
  }
  o.pass = bad == 0;
  o.detail = fmt("%zu pairs (%zu with unmatched essential classes), max |diff| %.3g, %zu over 1e-9", count, infinite,
                 worst, bad);
  o.artifact = art;
  return o;
}

Outcome approximation(unsigned par) {
  Outcome o;
  const auto spec = ManifoldSpec::circle(1);
  const auto grid = make_grid(2, 16);
  ApproximationOptions opts;
  opts.parallelism = 1;
  const auto reference = reference_pht(spec, grid, opts);
  const std::size_t seeds = 100;
  std::vector<ApproximationReport> reports(seeds);
  parallel_for(seeds, par, [&](std::size_t i) {
    reports[i] = approximation_report(spec, 300, 0.3, i, grid, opts, &reference);
  });
  std::size_t passing = 0, violations = 0;
  double worst = 0;
  std::string art;
  const double bound = 2 * 0.3 * sphere_volume(2) + 1e-6;
  for (const auto& r : reports) {
    const bool pass = r.density.ok && r.cech_betti == std::vector<int>{1, 1};
    passing += pass;
    if (pass) {
      worst = std::max(worst, r.surrogate);
      violations += r.surrogate > bound;
    }
    art += json::dump_line(json::to_json(r));
  }
  o.pass = passing >= 95 && violations == 0;
  o.detail = fmt("%zu/%zu runs pass density and homology; max surrogate %.4f vs bound %.4f; %zu over", passing,
                 seeds, worst, bound, violations);
  o.artifact = art;
  return o;
}

struct Criterion {
  int number;
  const char* name;
  double budget_seconds;
  std::function<Outcome(unsigned)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked circle example", 1, worked_circle},
      {2, "nerve lemma on simplex covers", 60, nerve_lemma},
      {3, "descent on random covers", 300, descent},
      {4, "curvature obstruction on the octant sphere", 60, obstruction},
      {5, "persistence against brute-force ranks", 30, persistence_oracle},
      {6, "bottleneck against exhaustive matching", 0, bottleneck_oracle},
      {7, "sampling approximation of the circle", 300, approximation},
  };
  const unsigned many = std::max(4U, std::thread::hardware_concurrency());

  bool all = true;
  std::vector<std::string> serial_artifacts;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    auto out = c.run(1);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_seconds <= 0 || out.seconds < c.budget_seconds;
    const bool pass = out.pass && in_time;
    all = all && pass;
    std::printf("criterion %d (%s): %s; %s; %.2f s", c.number, c.name, pass ? "PASS" : "FAIL", out.detail.c_str(),
                out.seconds);
    if (c.budget_seconds > 0) std::printf(" (budget %.0f s)", c.budget_seconds);
    std::printf("\n");
    std::fflush(stdout);
    serial_artifacts.push_back(std::move(out.artifact));
  }

  std::size_t identical = 0;
  std::string differing;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto out = criteria[i].run(many);
    if (out.artifact == serial_artifacts[i]) {
      ++identical;
    } else {
      differing += " " + std::to_string(criteria[i].number);
    }
  }
  const bool det = identical == criteria.size();
  all = all && det;
  std::printf("criterion 8 (determinism across parallelism 1 and %u): %s; %zu/%zu artifacts byte-identical%s\n", many,
              det ? "PASS" : "FAIL", identical, criteria.size(),
              differing.empty() ? "" : ("; differing:" + differing).c_str());
  return all ? 0 : 1;
}
