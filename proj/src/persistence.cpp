#include "pht/persistence.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pht {

Filtration Filtration::make(ComplexPtr parent, std::vector<FiltrationEntry> entries) {
  std::vector<std::int64_t> pos(parent->num_simplices(), -1);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.simplex >= parent->num_simplices()) throw std::invalid_argument("simplex id out of range");
    if (pos[e.simplex] >= 0) throw std::invalid_argument("simplex listed twice in filtration");
    if (!std::isfinite(e.value)) throw std::invalid_argument("filtration value must be finite");
    if (i > 0 && e.value < entries[i - 1].value) {
      throw std::invalid_argument("filtration values decrease");
    }
    for (auto f : parent->facets(e.simplex)) {
      if (pos[f] < 0) throw std::invalid_argument("simplex precedes one of its faces");
    }
    pos[e.simplex] = static_cast<std::int64_t>(i);
  }
  Filtration f;
  f.parent_ = std::move(parent);
  f.entries_ = std::move(entries);
  return f;
}

Filtration lower_star_from_simplex_heights(const Subcomplex& sub,
                                           std::span<const double> heights) {
  const auto& c = sub.complex();
  std::vector<FiltrationEntry> entries;
  entries.reserve(sub.size());
  sub.mask().for_each([&](std::size_t id) {
    entries.push_back({static_cast<std::uint32_t>(id), heights[id]});
  });
  std::sort(entries.begin(), entries.end(), [&](const auto& a, const auto& b) {
    if (a.value != b.value) return a.value < b.value;
    const int da = c.dim(a.simplex), db = c.dim(b.simplex);
    if (da != db) return da < db;
    return c.lex_rank(a.simplex) < c.lex_rank(b.simplex);
  });
  // The sort key already orders faces before cofaces.
  Filtration f;
  f.parent_ = sub.parent();
  f.entries_ = std::move(entries);
  return f;
}

Filtration lower_star_filtration(const Subcomplex& sub, std::span<const double> vertex_values) {
  return lower_star_from_simplex_heights(sub, simplex_heights(sub.complex(), vertex_values));
}

Filtration lower_star_filtration(const Subcomplex& sub, const Direction& v) {
  return lower_star_filtration(sub, vertex_heights(sub.complex(), v));
}

// ---------------------------------------------------------------------------

std::span<const Interval> Barcode::intervals(int degree) const {
  if (degree < 0 || degree > max_degree()) return {};
  return by_degree_[static_cast<std::size_t>(degree)];
}

void Barcode::add(const Interval& interval) {
  if (interval.degree < 0 || interval.degree > max_degree()) {
    throw std::out_of_range("interval degree outside barcode range");
  }
  if (!(interval.birth <= interval.death) || !std::isfinite(interval.birth)) {
    throw std::invalid_argument("interval needs finite birth <= death");
  }
  by_degree_[static_cast<std::size_t>(interval.degree)].push_back(interval);
}

void Barcode::canonicalize() {
  for (auto& level : by_degree_) {
    std::sort(level.begin(), level.end(), [](const Interval& a, const Interval& b) {
      if (a.birth != b.birth) return a.birth < b.birth;
      return a.death < b.death;
    });
  }
}

std::size_t Barcode::size() const {
  std::size_t n = 0;
  for (const auto& level : by_degree_) n += level.size();
  return n;
}

namespace {

// Symmetric difference of two ascending index lists.
void add_column(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& other,
                std::vector<std::uint32_t>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), other.begin(), other.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

Barcode compute_barcode(const Filtration& filtration, int max_degree) {
  const auto& c = *filtration.parent();
  if (max_degree < 0) max_degree = c.dimension();
  Barcode out(max_degree);
  const auto entries = filtration.entries();
  const std::size_t m = entries.size();
  if (m == 0) return out;

  std::vector<std::uint32_t> pos(c.num_simplices(), 0);
  int top = 0;
  for (std::size_t i = 0; i < m; ++i) {
    pos[entries[i].simplex] = static_cast<std::uint32_t>(i);
    top = std::max(top, c.dim(entries[i].simplex));
  }
  const int reduce_top = std::min(top, max_degree + 1);

  constexpr std::uint32_t kNone = ~std::uint32_t{0};
  std::vector<std::uint32_t> pivot_owner(m, kNone);  // row -> column with that pivot
  std::vector<std::uint32_t> paired_with(m, kNone);  // creator -> destroyer
  std::vector<std::uint8_t> cleared(m, 0);
  std::vector<std::vector<std::uint32_t>> reduced(m);
  std::vector<std::uint32_t> scratch;

  // Highest dimension first so pivots clear the columns they pair with.
  for (int k = reduce_top; k >= 1; --k) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto id = entries[j].simplex;
      if (c.dim(id) != k || cleared[j]) continue;
      auto& col = reduced[j];
      for (auto f : c.facets(id)) col.push_back(pos[f]);
      std::sort(col.begin(), col.end());
      while (!col.empty()) {
        const auto low = col.back();
        const auto owner = pivot_owner[low];
        if (owner == kNone) break;
        add_column(col, reduced[owner], scratch);
      }
      if (!col.empty()) {
        const auto low = col.back();
        pivot_owner[low] = static_cast<std::uint32_t>(j);
        paired_with[low] = static_cast<std::uint32_t>(j);
        cleared[low] = 1;
      } else {
        std::vector<std::uint32_t>().swap(col);
      }
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    const int k = c.dim(entries[i].simplex);
    if (k > max_degree) continue;
    // Creators: columns that reduced to zero (vertices always do).
    const bool creator = reduced[i].empty();
    if (!creator) continue;
    Interval iv;
    iv.degree = k;
    iv.birth = entries[i].value;
    if (paired_with[i] != kNone) iv.death = entries[paired_with[i]].value;
    iv.ephemeral = iv.birth == iv.death;
    out.add(iv);
  }
  return out;
}

int betti_curve(const Barcode& barcode, int degree, double t) {
  int count = 0;
  for (const auto& iv : barcode.intervals(degree)) {
    if (!iv.ephemeral && iv.birth <= t && t < iv.death) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------

namespace {

double pair_cost(const Interval& a, const Interval& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_cost(const Interval& a) { return (a.death - a.birth) / 2; }

// Perfect matching test on the standard diagonal-augmented bipartite graph.
class MatchingGraph {
 public:
  MatchingGraph(const std::vector<Interval>& a, const std::vector<Interval>& b) : a_(a), b_(b) {}

  bool feasible(double eps) {
    const std::size_t na = a_.size(), nb = b_.size(), n = na + nb;
    // Left: A then diag(B). Right: B then diag(A).
    adj_.assign(n, {});
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        if (pair_cost(a_[i], b_[j]) <= eps) adj_[i].push_back(static_cast<std::uint32_t>(j));
      }
      if (diagonal_cost(a_[i]) <= eps) adj_[i].push_back(static_cast<std::uint32_t>(nb + i));
    }
    for (std::size_t j = 0; j < nb; ++j) {
      if (diagonal_cost(b_[j]) <= eps) adj_[na + j].push_back(static_cast<std::uint32_t>(j));
      for (std::size_t i = 0; i < na; ++i) adj_[na + j].push_back(static_cast<std::uint32_t>(nb + i));
    }
    match_right_.assign(n, -1);
    for (std::size_t u = 0; u < n; ++u) {
      visited_.assign(n, 0);
      if (!augment(u)) return false;
    }
    return true;
  }

 private:
  bool augment(std::size_t u) {
    for (auto r : adj_[u]) {
      if (visited_[r]) continue;
      visited_[r] = 1;
      if (match_right_[r] < 0 || augment(static_cast<std::size_t>(match_right_[r]))) {
        match_right_[r] = static_cast<std::int64_t>(u);
        return true;
      }
    }
    return false;
  }

  const std::vector<Interval>& a_;
  const std::vector<Interval>& b_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::int64_t> match_right_;
  std::vector<std::uint8_t> visited_;
};

}  // namespace

double bottleneck(std::span<const Interval> a, std::span<const Interval> b) {
  std::vector<Interval> fa, fb;
  std::vector<double> ea, eb;
  for (const auto& iv : a) {
    if (iv.ephemeral) continue;
    if (iv.essential()) ea.push_back(iv.birth);
    else fa.push_back(iv);
  }
  for (const auto& iv : b) {
    if (iv.ephemeral) continue;
    if (iv.essential()) eb.push_back(iv.birth);
    else fb.push_back(iv);
  }
  if (ea.size() != eb.size()) return kInfinity;
  // Sorted order is optimal for matching points on a line under max cost.
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential = 0;
  for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));

  std::vector<double> candidates{0.0};
  for (const auto& x : fa) candidates.push_back(diagonal_cost(x));
  for (const auto& y : fb) candidates.push_back(diagonal_cost(y));
  for (const auto& x : fa) {
    for (const auto& y : fb) candidates.push_back(pair_cost(x, y));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  MatchingGraph graph(fa, fb);
  // The largest candidate (every point to the diagonal) is always feasible.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (graph.feasible(candidates[mid])) hi = mid;
    else lo = mid + 1;
  }
  return std::max(essential, candidates[lo]);
}

double bottleneck(const Barcode& a, const Barcode& b, int degree) {
  return bottleneck(a.intervals(degree), b.intervals(degree));
}

std::string barcode_csv(const Barcode& barcode) {
  std::ostringstream out;
  out << "degree,birth,death\n";
  char buf[64];
  for (int n = 0; n <= barcode.max_degree(); ++n) {
    for (const auto& iv : barcode.intervals(n)) {
      if (iv.ephemeral) continue;
      std::snprintf(buf, sizeof buf, "%.17g", iv.birth);
      out << n << ',' << buf << ',';
      if (iv.essential()) {
        out << "inf\n";
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", iv.death);
        out << buf << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace pht
