#include "pht/glue.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "pht/homology.hpp"
#include "pht/parallel.hpp"

namespace pht {

std::span<const NerveEntry> Nerve::at_depth(std::size_t k) const {
  if (k == 0 || k > top_depth()) return {};
  return std::span<const NerveEntry>(entries_).subspan(depth_offsets_[k - 1],
                                                      depth_offsets_[k] - depth_offsets_[k - 1]);
}

std::size_t Nerve::depth_begin(std::size_t k) const {
  if (k == 0) return 0;
  return depth_offsets_[std::min(k, depth_offsets_.size()) - 1];
}

std::optional<std::size_t> Nerve::find(std::span<const std::uint32_t> index) const {
  const auto level = at_depth(index.size());
  auto it = std::lower_bound(level.begin(), level.end(), index, [](const NerveEntry& e, auto key) {
    return std::lexicographical_compare(e.index.begin(), e.index.end(), key.begin(), key.end());
  });
  if (it == level.end() || !std::equal(it->index.begin(), it->index.end(), index.begin(), index.end())) {
    return std::nullopt;
  }
  return depth_begin(index.size()) + static_cast<std::size_t>(it - level.begin());
}

Nerve build_nerve(const Cover& cover, std::size_t max_depth) {
  const std::size_t n = cover.size();
  if (max_depth == 0 || max_depth > n) max_depth = n;
  Nerve nerve;
  nerve.cover_ = cover;
  nerve.max_depth_ = max_depth;
  nerve.depth_offsets_.push_back(0);

  auto add_entry = [&](std::vector<std::uint32_t> index, BitSet mask) {
    NerveEntry e;
    e.index = std::move(index);
    mask.for_each([&](std::size_t id) { e.simplices.push_back(static_cast<std::uint32_t>(id)); });
    e.sub = Subcomplex::from_mask(cover.parent(), std::move(mask));
    nerve.entries_.push_back(std::move(e));
  };

  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& el = cover.elements()[i];
    if (!el.empty()) add_entry({i}, el.mask());
  }
  nerve.depth_offsets_.push_back(nerve.entries_.size());

  // Extend each depth-k set by larger indices; this keeps lexicographic order.
  for (std::size_t k = 1;; ++k) {
    const std::size_t begin = nerve.depth_offsets_[k - 1], end = nerve.depth_offsets_[k];
    if (begin == end) break;
    const bool probe_only = k == max_depth;
    bool deeper = false;
    for (std::size_t id = begin; id < end && !(probe_only && deeper); ++id) {
      for (std::uint32_t j = nerve.entries_[id].index.back() + 1; j < n; ++j) {
        BitSet mask = nerve.entries_[id].sub.mask() & cover.elements()[j].mask();
        if (mask.none()) continue;
        deeper = true;
        if (probe_only) break;
        auto index = nerve.entries_[id].index;
        index.push_back(j);
        add_entry(std::move(index), std::move(mask));
      }
    }
    if (probe_only) {
      nerve.complete_ = !deeper;
      break;
    }
    nerve.depth_offsets_.push_back(nerve.entries_.size());
  }
  while (nerve.depth_offsets_.size() > 1 &&
         nerve.depth_offsets_.back() == nerve.depth_offsets_[nerve.depth_offsets_.size() - 2]) {
    nerve.depth_offsets_.pop_back();
  }

  for (std::size_t id = 0; id < nerve.entries_.size(); ++id) {
    auto& e = nerve.entries_[id];
    if (e.depth() < 2) continue;
    for (std::size_t j = 0; j < e.depth(); ++j) {
      std::vector<std::uint32_t> face;
      face.reserve(e.depth() - 1);
      for (std::size_t i = 0; i < e.depth(); ++i) {
        if (i != j) face.push_back(e.index[i]);
      }
      const auto f = nerve.find(face);
      if (!f) throw std::logic_error("nerve is not downward closed");
      e.facets.push_back(static_cast<std::uint32_t>(*f));
      nerve.entries_[*f].cofaces.push_back(static_cast<std::uint32_t>(id));
    }
  }
  for (auto& e : nerve.entries_) std::sort(e.cofaces.begin(), e.cofaces.end());
  return nerve;
}

// ---------------------------------------------------------------------------

bool StalkReport::higher_rows_nonzero() const {
  for (const auto& row : e1) {
    for (std::size_t q = 1; q < row.size(); ++q) {
      if (row[q] != 0) return true;
    }
  }
  return false;
}

StalkEvaluator::StalkEvaluator(const Nerve& nerve, const Direction& v)
    : nerve_(nerve), v_(v), degrees_(nerve.complex().dimension()) {
  if (!nerve.complete() && nerve.max_depth() < static_cast<std::size_t>(degrees_) + 2) {
    throw std::invalid_argument("nerve truncated below depth d + 2");
  }
  const auto& c = nerve.complex();
  vertex_heights_ = pht::vertex_heights(c, v);
  heights_ = simplex_heights(c, vertex_heights_);
  const auto full = Subcomplex::full(nerve.cover().parent());
  direct_ = compute_barcode(lower_star_from_simplex_heights(full, heights_), degrees_);
}

std::vector<std::uint32_t> StalkEvaluator::sublevel_ids(const NerveEntry& e, double t) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(e.simplices.size());
  for (auto id : e.simplices) {
    if (heights_[id] <= t) ids.push_back(id);
  }
  return ids;
}

std::vector<int> StalkEvaluator::direct_betti(double t) const {
  std::vector<int> out(static_cast<std::size_t>(degrees_) + 1);
  for (int n = 0; n <= degrees_; ++n) out[static_cast<std::size_t>(n)] = betti_curve(direct_, n, t);
  return out;
}

namespace {

// Components of a sublevel given its ascending simplex ids: 0-simplex ids with
// the representative (minimal coordinate vertex) of each.
struct EntryComponents {
  std::vector<std::uint32_t> vertex_ids;
  std::vector<std::uint32_t> rep;
  std::vector<std::uint32_t> basis;  // distinct reps, ascending

  std::uint32_t rep_of(std::uint32_t vertex_id) const {
    const auto it = std::lower_bound(vertex_ids.begin(), vertex_ids.end(), vertex_id);
    return rep[static_cast<std::size_t>(it - vertex_ids.begin())];
  }
};

EntryComponents entry_components(const EmbeddedComplex& c, std::span<const std::uint32_t> ids) {
  EntryComponents out;
  const std::size_t v_end = c.count(0);
  const std::size_t e_end = v_end + c.count(1);
  std::size_t i = 0;
  while (i < ids.size() && ids[i] < v_end) out.vertex_ids.push_back(ids[i++]);
  const std::size_t nv = out.vertex_ids.size();
  std::vector<std::uint32_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto local = [&](std::uint32_t vid) {
    return static_cast<std::uint32_t>(
        std::lower_bound(out.vertex_ids.begin(), out.vertex_ids.end(), vid) - out.vertex_ids.begin());
  };
  for (; i < ids.size() && ids[i] < e_end; ++i) {
    const auto f = c.facets(ids[i]);
    const auto a = find(local(f[0])), b = find(local(f[1]));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  // Representative: smallest coordinate vertex of each class.
  std::vector<std::uint32_t> best(nv, ~0U);
  for (std::uint32_t x = 0; x < nv; ++x) {
    const auto r = find(x);
    best[r] = std::min(best[r], c.vertices_of(out.vertex_ids[x])[0]);
  }
  out.rep.resize(nv);
  for (std::uint32_t x = 0; x < nv; ++x) {
    out.rep[x] = best[find(x)];
    if (find(x) == x) out.basis.push_back(best[x]);
  }
  std::sort(out.basis.begin(), out.basis.end());
  return out;
}

// dims: basis sizes C^0..C^{top}; ranks[n] = rank of the map C^n -> C^{n+1}.
std::vector<int> cohomology_from_ranks(const std::vector<std::size_t>& dims,
                                       const std::vector<std::size_t>& ranks, int degrees) {
  std::vector<int> out(static_cast<std::size_t>(degrees) + 1, 0);
  for (int n = 0; n <= degrees; ++n) {
    const auto k = static_cast<std::size_t>(n);
    if (k >= dims.size()) break;
    const std::size_t in = k < ranks.size() ? ranks[k] : 0;
    const std::size_t prev = k > 0 && k - 1 < ranks.size() ? ranks[k - 1] : 0;
    out[k] = static_cast<int>(dims[k] - in - prev);
  }
  return out;
}

}  // namespace

CechH0Complex StalkEvaluator::cech_h0(double t) const {
  const auto& c = nerve_.complex();
  const auto entries = nerve_.entries();
  std::vector<EntryComponents> comps(entries.size());
  for (std::size_t id = 0; id < entries.size(); ++id) {
    comps[id] = entry_components(c, sublevel_ids(entries[id], t));
  }

  CechH0Complex out;
  out.t = t;
  const std::size_t top = nerve_.top_depth();
  // Offset of each entry's block inside its depth.
  std::vector<std::size_t> block(entries.size(), 0);
  for (std::size_t k = 1; k <= top; ++k) {
    std::size_t dim = 0;
    std::vector<std::uint32_t> reps;
    for (std::size_t id = nerve_.depth_begin(k); id < nerve_.depth_begin(k + 1); ++id) {
      block[id] = dim;
      dim += comps[id].basis.size();
      reps.insert(reps.end(), comps[id].basis.begin(), comps[id].basis.end());
    }
    out.dims.push_back(dim);
    out.basis.push_back(std::move(reps));
  }

  std::vector<std::size_t> ranks;
  for (std::size_t k = 1; k < top; ++k) {
    // Depth k -> k + 1: component c' of M_J maps to the component of M_I containing it.
    f2::Matrix delta(out.dims[k]);
    std::vector<std::vector<std::uint32_t>> rows_of(out.dims[k - 1]);
    for (std::size_t jd = nerve_.depth_begin(k + 1); jd < nerve_.depth_begin(k + 2); ++jd) {
      const auto& cj = comps[jd];
      for (std::size_t b = 0; b < cj.basis.size(); ++b) {
        const auto vid = static_cast<std::uint32_t>(c.vertex_simplex(cj.basis[b]));
        for (auto fid : entries[jd].facets) {
          const auto& ci = comps[fid];
          const auto r = ci.rep_of(vid);
          const auto pos = std::lower_bound(ci.basis.begin(), ci.basis.end(), r) - ci.basis.begin();
          rows_of[block[fid] + static_cast<std::size_t>(pos)].push_back(
              static_cast<std::uint32_t>(block[jd] + b));
        }
      }
    }
    for (auto& col : rows_of) {
      std::sort(col.begin(), col.end());
      for (auto r : col) delta.push_entry(r);
      delta.finish_column();
    }
    ranks.push_back(f2::rank(delta));
    out.differentials.push_back(std::move(delta));
  }
  out.cohomology = cohomology_from_ranks(out.dims, ranks, degrees_);
  return out;
}

std::vector<std::vector<int>> StalkEvaluator::entry_cohomology(double t) const {
  const auto& c = nerve_.complex();
  std::vector<std::vector<int>> out;
  out.reserve(nerve_.entries().size());
  for (const auto& e : nerve_.entries()) {
    out.push_back(homology::betti_numbers(c, sublevel_ids(e, t), degrees_));
  }
  return out;
}

E1Page StalkEvaluator::e1_page(double t) const {
  const auto per_entry = entry_cohomology(t);
  E1Page page(nerve_.top_depth(), std::vector<int>(static_cast<std::size_t>(degrees_) + 1, 0));
  for (std::size_t id = 0; id < per_entry.size(); ++id) {
    auto& row = page[nerve_.entry(id).depth() - 1];
    for (std::size_t q = 0; q < row.size(); ++q) row[q] += per_entry[id][q];
  }
  return page;
}

std::vector<int> StalkEvaluator::total_cohomology(double t) const {
  const auto& c = nerve_.complex();
  const auto entries = nerve_.entries();
  const int d = degrees_;
  const std::size_t max_q = static_cast<std::size_t>(d);

  // Sublevel ids of each entry split by dimension (ids are dimension-major).
  std::vector<std::vector<std::uint32_t>> ids(entries.size());
  std::vector<std::vector<std::size_t>> dim_start(entries.size());
  for (std::size_t id = 0; id < entries.size(); ++id) {
    ids[id] = sublevel_ids(entries[id], t);
    auto& starts = dim_start[id];
    starts.assign(max_q + 2, ids[id].size());
    for (std::size_t i = ids[id].size(); i-- > 0;) {
      starts[std::min(static_cast<std::size_t>(c.dim(ids[id][i])), max_q + 1)] = i;
    }
    for (std::size_t q = max_q + 1; q-- > 0;) starts[q] = std::min(starts[q], starts[q + 1]);
  }
  auto block_size = [&](std::size_t id, std::size_t q) {
    return q > max_q ? 0 : dim_start[id][q + 1] - dim_start[id][q];
  };

  // C^n = sum over p + q = n of the blocks (entry at depth p + 1, q-simplices).
  const std::size_t top_n = static_cast<std::size_t>(d) + 1;
  std::vector<std::vector<std::size_t>> offset(top_n + 1, std::vector<std::size_t>(entries.size(), 0));
  std::vector<std::size_t> dims(top_n + 1, 0);
  for (std::size_t n = 0; n <= top_n; ++n) {
    for (std::size_t p = 0; p <= n; ++p) {
      const std::size_t q = n - p;
      for (std::size_t id = nerve_.depth_begin(p + 1); id < nerve_.depth_begin(p + 2); ++id) {
        offset[n][id] = dims[n];
        dims[n] += block_size(id, q);
      }
    }
  }
  auto position = [&](std::size_t n, std::size_t id, std::size_t q, std::uint32_t simplex) {
    const auto begin = ids[id].begin() + static_cast<std::ptrdiff_t>(dim_start[id][q]);
    const auto end = ids[id].begin() + static_cast<std::ptrdiff_t>(dim_start[id][q + 1]);
    const auto it = std::lower_bound(begin, end, simplex);
    return static_cast<std::uint32_t>(offset[n][id] + static_cast<std::size_t>(it - begin));
  };

  // rank(C^n -> C^{n+1}) via the transposed map: one column per basis
  // element of C^{n+1}, holding its simplicial facets and Čech restrictions.
  std::vector<std::size_t> ranks;
  std::vector<std::uint32_t> col;
  for (std::size_t n = 0; n < top_n; ++n) {
    f2::Matrix m(dims[n]);
    for (std::size_t p = 0; p <= n + 1; ++p) {
      const std::size_t q = n + 1 - p;
      if (q > max_q) continue;
      for (std::size_t id = nerve_.depth_begin(p + 1); id < nerve_.depth_begin(p + 2); ++id) {
        for (std::size_t i = dim_start[id][q]; i < dim_start[id][q + 1]; ++i) {
          const auto s = ids[id][i];
          col.clear();
          if (q > 0) {
            for (auto f : c.facets(s)) col.push_back(position(n, id, q - 1, f));
          }
          for (auto fid : entries[id].facets) col.push_back(position(n, fid, q, s));
          std::sort(col.begin(), col.end());
          for (auto r : col) m.push_entry(r);
          m.finish_column();
        }
      }
    }
    ranks.push_back(f2::rank(m));
  }
  return cohomology_from_ranks(dims, ranks, d);
}

CechH0Complex cech_h0_stalk(const Nerve& nerve, const Direction& v, double t) {
  return StalkEvaluator(nerve, v).cech_h0(t);
}

std::vector<int> total_cohomology_stalk(const Nerve& nerve, const Direction& v, double t) {
  return StalkEvaluator(nerve, v).total_cohomology(t);
}

E1Page e1_page(const Nerve& nerve, const Direction& v, double t) {
  return StalkEvaluator(nerve, v).e1_page(t);
}

std::vector<double> critical_t_grid(std::span<const double> vertex_heights) {
  std::vector<double> h(vertex_heights.begin(), vertex_heights.end());
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  if (h.empty()) return {0.0};
  std::vector<double> out;
  out.reserve(2 * h.size() + 1);
  out.push_back(h.front() - 1);
  for (std::size_t i = 0; i < h.size(); ++i) {
    out.push_back(h[i]);
    if (i + 1 < h.size()) out.push_back(0.5 * (h[i] + h[i + 1]));
  }
  out.push_back(h.back() + 1);
  return out;
}

GlueMode parse_glue_mode(const std::string& name) {
  if (name == "fast" || name == "fastH0" || name == "fast_h0") return GlueMode::fast_h0;
  if (name == "total") return GlueMode::total;
  throw std::invalid_argument("unknown glue mode: " + name);
}

std::string to_string(GlueMode mode) { return mode == GlueMode::fast_h0 ? "fast" : "total"; }

namespace {

std::size_t nerve_depth_for(const Cover& cover) {
  return std::min<std::size_t>(cover.size(), static_cast<std::size_t>(cover.parent()->dimension()) + 2);
}

std::vector<double> spaced_t_values(std::span<const double> heights, std::size_t count) {
  if (heights.empty()) return {0.0};
  const auto [lo, hi] = std::minmax_element(heights.begin(), heights.end());
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = count == 1 ? *lo : *lo + (*hi - *lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return out;
}

}  // namespace

GluedCurves glued_betti_curves(const Cover& cover, const DirectionGrid& grid, const GlueOptions& options) {
  const Nerve nerve = build_nerve(cover, nerve_depth_for(cover));
  GluedCurves out;
  out.mode = options.mode;
  if (options.mode == GlueMode::fast_h0 && !convexity_check(cover).guaranteed()) {
    out.warning = "fast path unsound: some cover element is not a single closed simplex";
  }

  std::vector<std::unique_ptr<StalkEvaluator>> evals(grid.size());
  std::vector<std::vector<double>> tvals(grid.size());
  parallel_for(grid.size(), options.parallelism, [&](std::size_t k) {
    evals[k] = std::make_unique<StalkEvaluator>(nerve, grid.directions[k]);
    tvals[k] = options.t_values.empty() ? critical_t_grid(evals[k]->vertex_heights()) : options.t_values;
  });

  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (std::size_t i = 0; i < tvals[k].size(); ++i) work.emplace_back(k, i);
  }
  out.stalks.resize(work.size());
  parallel_for(work.size(), options.parallelism, [&](std::size_t w) {
    const auto [k, i] = work[w];
    const auto& ev = *evals[k];
    const double t = tvals[k][i];
    StalkReport r;
    r.direction_index = k;
    r.v = grid.directions[k];
    r.t = t;
    if (options.with_e1) r.e1 = ev.e1_page(t);
    r.direct = ev.direct_betti(t);
    if (options.mode == GlueMode::fast_h0) {
      auto h0 = ev.cech_h0(t);
      r.cech_h0_dims = std::move(h0.dims);
      r.fast = std::move(h0.cohomology);
    } else {
      r.total = ev.total_cohomology(t);
    }
    out.stalks[w] = std::move(r);
  });

  for (const auto& r : out.stalks) {
    const bool ok = options.mode == GlueMode::fast_h0 ? r.fast_agrees() : r.total_agrees();
    ++(ok ? out.agree : out.disagree);
  }
  return out;
}

// ---------------------------------------------------------------------------

bool ConvexityReport::guaranteed() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](ConvexityVerdict v) { return v == ConvexityVerdict::guaranteed; });
}

std::string to_string(ConvexityVerdict verdict) {
  return verdict == ConvexityVerdict::guaranteed ? "guaranteed" : "unverified";
}

ConvexityReport convexity_check(const Cover& cover, const std::optional<ScanOptions>& scan) {
  ConvexityReport report;
  for (const auto& el : cover.elements()) {
    report.verdicts.push_back(el.maximal_simplices().size() == 1 ? ConvexityVerdict::guaranteed
                                                                 : ConvexityVerdict::unverified);
  }
  if (!scan) return report;

  const Nerve nerve = build_nerve(cover, nerve_depth_for(cover));
  const int d = cover.parent()->dimension();
  const auto grid = make_grid(d, scan->directions);

  struct PerDirection {
    std::size_t stalks = 0;
    std::size_t failures = 0;
    std::vector<std::size_t> element_failures;
    std::optional<double> first_t;
  };
  std::vector<PerDirection> results(grid.size());
  parallel_for(grid.size(), scan->parallelism, [&](std::size_t k) {
    const StalkEvaluator ev(nerve, grid.directions[k]);
    const auto tv = scan->t_samples == 0 ? critical_t_grid(ev.vertex_heights())
                                         : spaced_t_values(ev.vertex_heights(), scan->t_samples);
    auto& res = results[k];
    res.element_failures.assign(cover.size(), 0);
    std::vector<std::uint8_t> hit(cover.size());
    for (double t : tv) {
      ++res.stalks;
      std::fill(hit.begin(), hit.end(), 0);
      bool failed = false;
      const auto per_entry = ev.entry_cohomology(t);
      for (std::size_t id = 0; id < per_entry.size(); ++id) {
        const auto& b = per_entry[id];
        if (std::any_of(b.begin() + 1, b.end(), [](int x) { return x != 0; })) {
          failed = true;
          for (auto i : nerve.entry(id).index) hit[i] = 1;
        }
      }
      if (!failed) continue;
      ++res.failures;
      if (!res.first_t) res.first_t = t;
      for (std::size_t i = 0; i < hit.size(); ++i) res.element_failures[i] += hit[i];
    }
  });

  ConvexityScan out;
  out.element_failures.assign(cover.size(), 0);
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& res = results[k];
    out.stalks += res.stalks;
    out.failures += res.failures;
    for (std::size_t i = 0; i < cover.size(); ++i) out.element_failures[i] += res.element_failures[i];
    if (!out.first_failure && res.first_t) out.first_failure.emplace(grid.directions[k], *res.first_t);
  }
  report.scan = std::move(out);
  return report;
}

}  // namespace pht
