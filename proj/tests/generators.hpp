#pragma once

// Random inputs shared by the unit tests and the acceptance run.

#include <algorithm>
#include <random>
#include <vector>

#include "pht/complex.hpp"
#include "pht/persistence.hpp"
#include "pht/random.hpp"

namespace gen {

// Closure of random triangles and tetrahedra on a few random points in R^3,
// at most max_simplices simplices.
inline pht::ComplexPtr small_complex(std::mt19937_64& rng, std::size_t max_simplices) {
  for (;;) {
    const std::uint32_t nv = 5 + static_cast<std::uint32_t>(rng() % 6);
    std::vector<pht::Point> pts;
    for (std::uint32_t i = 0; i < nv; ++i) {
      pts.push_back({pht::unit_uniform(rng), pht::unit_uniform(rng), pht::unit_uniform(rng)});
    }
    std::vector<pht::Simplex> tops;
    const int picks = 2 + static_cast<int>(rng() % 8);
    for (int k = 0; k < picks; ++k) {
      const std::size_t size = 2 + rng() % 3;
      pht::Simplex s;
      while (s.size() < size) {
        const auto v = static_cast<std::uint32_t>(rng() % nv);
        if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
      }
      std::sort(s.begin(), s.end());
      tops.push_back(s);
    }
    auto c = pht::EmbeddedComplex::build(pht::closure_data(3, pts, tops));
    if (c->num_simplices() <= max_simplices) return c;
  }
}

// Values are random per simplex, then raised to the max over faces; ties
// between a simplex and its faces are common. Ordered by (value, dim, id).
inline pht::Filtration random_filtration(std::mt19937_64& rng, const pht::ComplexPtr& c) {
  std::vector<double> value(c->num_simplices());
  std::uniform_int_distribution<int> level(0, 12);
  for (std::size_t id = 0; id < c->num_simplices(); ++id) {
    double v = level(rng) * 0.25;
    for (auto f : c->facets(id)) v = std::max(v, value[f]);
    value[id] = v;
  }
  std::vector<pht::FiltrationEntry> entries;
  for (std::uint32_t id = 0; id < c->num_simplices(); ++id) entries.push_back({id, value[id]});
  std::stable_sort(entries.begin(), entries.end(), [&](const auto& a, const auto& b) {
    if (a.value != b.value) return a.value < b.value;
    return c->dim(a.simplex) < c->dim(b.simplex);
  });
  return pht::Filtration::make(c, std::move(entries));
}

// Up to max_intervals intervals in one degree; some essential, some repeated.
inline std::vector<pht::Interval> random_diagram(std::mt19937_64& rng, std::size_t max_intervals) {
  std::vector<pht::Interval> out;
  const std::size_t n = rng() % (max_intervals + 1);
  std::uniform_real_distribution<double> u(0, 10);
  for (std::size_t i = 0; i < n; ++i) {
    pht::Interval iv;
    iv.birth = std::round(u(rng) * 4) / 4;
    if (pht::unit_uniform(rng) < 0.15) {
      iv.death = pht::kInfinity;
    } else {
      iv.death = iv.birth + std::round(u(rng) * 2) / 4 + 0.25;
    }
    if (!out.empty() && pht::unit_uniform(rng) < 0.1) iv = out.back();
    out.push_back(iv);
  }
  return out;
}

}  // namespace gen
