#include "pht/complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "pht/kernels.hpp"

namespace pht {

std::string format_simplex(std::span<const std::uint32_t> s) {
  const bool compact = std::all_of(s.begin(), s.end(), [](auto i) { return i < 10; });
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

namespace {

ValidationReport violation(std::string message, const Simplex& s) {
  return ValidationReport{false, std::move(message), s};
}

}  // namespace

ValidationReport validate(const ComplexData& data) {
  if (data.dimension != 2 && data.dimension != 3) {
    return {false, "dimension must be 2 or 3, got " + std::to_string(data.dimension), {}};
  }
  for (std::size_t i = 0; i < data.vertices.size(); ++i) {
    for (double c : data.vertices[i]) {
      if (!std::isfinite(c)) {
        return {false, "vertex " + std::to_string(i) + " has a non-finite coordinate", {}};
      }
    }
  }
  if (data.simplices.size() > static_cast<std::size_t>(data.dimension) + 1) {
    for (std::size_t k = static_cast<std::size_t>(data.dimension) + 1; k < data.simplices.size();
         ++k) {
      if (!data.simplices[k].empty()) {
        return violation("simplex " + format_simplex(data.simplices[k][0]) +
                             " exceeds the ambient dimension",
                         data.simplices[k][0]);
      }
    }
  }

  std::vector<std::map<Simplex, std::size_t>> seen(data.simplices.size());
  const auto nv = data.vertices.size();
  for (std::size_t k = 0; k < data.simplices.size(); ++k) {
    for (const auto& s : data.simplices[k]) {
      if (s.size() != k + 1) {
        return violation("simplex " + format_simplex(s) + " listed with dimension " +
                             std::to_string(k),
                         s);
      }
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= nv) {
          return violation("simplex " + format_simplex(s) + " has vertex index out of range", s);
        }
        if (i > 0 && s[i - 1] >= s[i]) {
          return violation("simplex " + format_simplex(s) + " is not strictly sorted", s);
        }
      }
      if (!seen[k].emplace(s, seen[k].size()).second) {
        return violation("duplicate simplex " + format_simplex(s), s);
      }
    }
  }
  for (std::size_t k = 1; k < data.simplices.size(); ++k) {
    for (const auto& s : data.simplices[k]) {
      for (std::size_t drop = s.size(); drop-- > 0;) {
        Simplex face;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i != drop) face.push_back(s[i]);
        }
        if (!seen[k - 1].contains(face)) {
          return violation("face " + format_simplex(face) + " of " + format_simplex(s) + " absent",
                           s);
        }
      }
    }
  }
  return {};
}

std::shared_ptr<const EmbeddedComplex> EmbeddedComplex::build(ComplexData data) {
  if (auto report = validate(data); !report) throw ComplexError(report.message);

  // Drop trailing empty dimensions so top_dimension() is meaningful.
  while (!data.simplices.empty() && data.simplices.back().empty()) data.simplices.pop_back();

  std::shared_ptr<EmbeddedComplex> c(new EmbeddedComplex());
  const auto nv = data.vertices.size();
  c->xs_.resize(nv);
  c->ys_.resize(nv);
  c->zs_.resize(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (data.dimension == 2) data.vertices[i][2] = 0.0;
    c->xs_[i] = data.vertices[i][0];
    c->ys_[i] = data.vertices[i][1];
    c->zs_[i] = data.vertices[i][2];
  }

  c->offsets_.push_back(0);
  for (const auto& level : data.simplices) c->offsets_.push_back(c->offsets_.back() + level.size());
  const std::size_t n = c->offsets_.back();
  c->dims_.reserve(n);
  c->vertex_offsets_.reserve(n + 1);
  c->vertex_offsets_.push_back(0);

  std::map<Simplex, std::uint32_t> index;
  for (std::size_t k = 0; k < data.simplices.size(); ++k) {
    for (const auto& s : data.simplices[k]) {
      index.emplace(s, static_cast<std::uint32_t>(c->dims_.size()));
      c->dims_.push_back(static_cast<int>(k));
      c->vertex_index_.insert(c->vertex_index_.end(), s.begin(), s.end());
      c->vertex_offsets_.push_back(c->vertex_index_.size());
    }
  }

  // Vertices come first and have no facets, so the facets of a k-simplex sit
  // at its vertex offset shifted by the vertex count.
  const std::size_t num_vertices = c->offset(1);
  c->facet_index_.assign(c->vertex_index_.size() - num_vertices, 0);
  std::vector<std::vector<std::uint32_t>> cof(n);
  for (std::size_t id = 0; id < n; ++id) {
    const int k = c->dims_[id];
    if (k == 0) continue;
    auto verts = c->vertices_of(id);
    for (int drop = 0; drop <= k; ++drop) {
      Simplex face;
      for (int i = 0; i <= k; ++i) {
        if (i != drop) face.push_back(verts[static_cast<std::size_t>(i)]);
      }
      const auto f = index.at(face);
      c->facet_index_[c->vertex_offsets_[id] - num_vertices + static_cast<std::size_t>(drop)] = f;
      cof[f].push_back(static_cast<std::uint32_t>(id));
    }
  }
  c->cofacet_offsets_.push_back(0);
  for (auto& list : cof) {
    std::sort(list.begin(), list.end());
    c->cofacet_index_.insert(c->cofacet_index_.end(), list.begin(), list.end());
    c->cofacet_offsets_.push_back(c->cofacet_index_.size());
  }

  c->lex_rank_.resize(n);
  for (std::size_t k = 0; k + 1 < c->offsets_.size(); ++k) {
    std::vector<std::uint32_t> order(c->offsets_[k + 1] - c->offsets_[k]);
    std::iota(order.begin(), order.end(), static_cast<std::uint32_t>(c->offsets_[k]));
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      auto va = c->vertices_of(a);
      auto vb = c->vertices_of(b);
      return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
    });
    for (std::size_t r = 0; r < order.size(); ++r) {
      c->lex_rank_[order[r]] = static_cast<std::uint32_t>(r);
    }
  }

  c->vertex_simplex_.assign(nv, -1);
  if (!data.simplices.empty()) {
    for (std::size_t i = 0; i < data.simplices[0].size(); ++i) {
      c->vertex_simplex_[data.simplices[0][i][0]] = static_cast<std::int64_t>(i);
    }
  }
  c->data_ = std::move(data);
  return c;
}

std::size_t EmbeddedComplex::count(int k) const {
  if (k < 0 || k > top_dimension()) return 0;
  return offsets_[static_cast<std::size_t>(k) + 1] - offsets_[static_cast<std::size_t>(k)];
}

std::optional<std::size_t> EmbeddedComplex::find(std::span<const std::uint32_t> s) const {
  if (s.empty()) return std::nullopt;
  const int k = static_cast<int>(s.size()) - 1;
  if (k > top_dimension()) return std::nullopt;
  if (k == 0) {
    if (s[0] >= num_points() || vertex_simplex_[s[0]] < 0) return std::nullopt;
    return static_cast<std::size_t>(vertex_simplex_[s[0]]);
  }
  // Walk cofacets of the first vertex's star, narrowing one vertex at a time.
  auto current = find(s.first(1));
  for (std::size_t len = 2; current && len <= s.size(); ++len) {
    std::optional<std::size_t> next;
    for (auto cf : cofacets(*current)) {
      auto verts = vertices_of(cf);
      if (std::equal(verts.begin(), verts.end(), s.begin(), s.begin() + static_cast<long>(len))) {
        next = cf;
        break;
      }
    }
    current = next;
  }
  return current;
}

// ---------------------------------------------------------------------------

bool is_face_closed(const EmbeddedComplex& complex, const BitSet& mask) {
  bool ok = true;
  mask.for_each([&](std::size_t id) {
    for (auto f : complex.facets(id)) {
      if (!mask.test(f)) ok = false;
    }
  });
  return ok;
}

Subcomplex Subcomplex::full(ComplexPtr parent) {
  BitSet mask(parent->num_simplices());
  for (std::size_t i = 0; i < mask.size(); ++i) mask.set(i);
  return {std::move(parent), std::move(mask)};
}

Subcomplex Subcomplex::empty(ComplexPtr parent) {
  BitSet mask(parent->num_simplices());
  return {std::move(parent), std::move(mask)};
}

ComplexData closure_data(int dimension, std::vector<Point> vertices,
                         std::span<const Simplex> simplices) {
  std::vector<std::set<Simplex>> faces;
  for (Simplex s : simplices) {
    std::sort(s.begin(), s.end());
    if (s.empty()) continue;
    const std::size_t k = s.size();
    if (faces.size() < k) faces.resize(k);
    // Every nonempty subset, by bit mask.
    for (std::uint32_t bits = 1; bits < (1U << k); ++bits) {
      Simplex f;
      for (std::size_t i = 0; i < k; ++i) {
        if (bits & (1U << i)) f.push_back(s[i]);
      }
      faces[f.size() - 1].insert(std::move(f));
    }
  }
  ComplexData data;
  data.dimension = dimension;
  data.simplices.resize(std::max<std::size_t>(faces.size(), vertices.empty() ? 0 : 1));
  for (std::uint32_t i = 0; i < vertices.size(); ++i) data.simplices[0].push_back({i});
  for (std::size_t k = 1; k < faces.size(); ++k) data.simplices[k].assign(faces[k].begin(), faces[k].end());
  data.vertices = std::move(vertices);
  return data;
}

Subcomplex Subcomplex::closure_of(ComplexPtr parent, std::span<const std::size_t> ids) {
  BitSet mask(parent->num_simplices());
  std::vector<std::size_t> stack(ids.begin(), ids.end());
  while (!stack.empty()) {
    auto id = stack.back();
    stack.pop_back();
    if (id >= mask.size()) throw ComplexError("simplex id out of range");
    if (mask.test(id)) continue;
    mask.set(id);
    for (auto f : parent->facets(id)) stack.push_back(f);
  }
  return {std::move(parent), std::move(mask)};
}

Subcomplex Subcomplex::from_mask(ComplexPtr parent, BitSet mask) {
  if (mask.size() != parent->num_simplices()) throw ComplexError("mask size mismatch");
  if (!is_face_closed(*parent, mask)) throw ComplexError("mask is not closed under faces");
  return {std::move(parent), std::move(mask)};
}

std::vector<std::size_t> Subcomplex::simplex_ids() const {
  std::vector<std::size_t> ids;
  ids.reserve(size());
  mask_.for_each([&](std::size_t id) { ids.push_back(id); });
  return ids;
}

std::vector<std::size_t> Subcomplex::maximal_simplices() const {
  std::vector<std::size_t> ids;
  mask_.for_each([&](std::size_t id) {
    for (auto cf : parent_->cofacets(id)) {
      if (mask_.test(cf)) return;
    }
    ids.push_back(id);
  });
  return ids;
}

Cover Cover::make(ComplexPtr parent, std::vector<Subcomplex> elements) {
  BitSet uni(parent->num_simplices());
  for (const auto& e : elements) {
    if (e.parent() != parent) throw ComplexError("cover element has a different parent");
    uni |= e.mask();
  }
  if (uni.count() != parent->num_simplices()) {
    throw ComplexError("cover elements do not cover the complex");
  }
  Cover c;
  c.parent_ = std::move(parent);
  c.elements_ = std::move(elements);
  return c;
}

// ---------------------------------------------------------------------------

Direction Direction::make(std::span<const double> v) {
  if (v.size() != 2 && v.size() != 3) {
    throw std::invalid_argument("direction must have 2 or 3 components");
  }
  double n2 = 0;
  for (double c : v) n2 += c * c;
  if (!(std::abs(std::sqrt(n2) - 1.0) <= kTolerance)) {
    throw std::invalid_argument("direction is not a unit vector");
  }
  Direction d;
  d.dim_ = static_cast<int>(v.size());
  std::copy(v.begin(), v.end(), d.v_.begin());
  return d;
}

Direction Direction::normalized(std::span<const double> v) {
  double n2 = 0;
  for (double c : v) n2 += c * c;
  const double n = std::sqrt(n2);
  if (!(n > 0) || !std::isfinite(n)) throw std::invalid_argument("cannot normalize zero vector");
  std::array<double, 3> u{};
  for (std::size_t i = 0; i < v.size() && i < 3; ++i) u[i] = v[i] / n;
  return make(std::span<const double>(u.data(), v.size()));
}

Direction Direction::from_angle(double theta) {
  // Exact zeros on the axes so symmetric shapes get exactly tied heights.
  auto snap = [](double x) { return std::abs(x) < 1e-15 ? 0.0 : x; };
  const double u[2] = {snap(std::cos(theta)), snap(std::sin(theta))};
  return make(u);
}

double height(const EmbeddedComplex& complex, std::size_t simplex, const Direction& v) {
  double h = -std::numeric_limits<double>::infinity();
  for (auto p : complex.vertices_of(simplex)) h = std::max(h, project(complex.point(p), v));
  return h;
}

std::vector<double> vertex_heights(const EmbeddedComplex& complex, const Direction& v) {
  if (v.dimension() != complex.dimension()) {
    throw std::invalid_argument("direction dimension does not match the complex");
  }
  std::vector<double> out(complex.num_points());
  kernels::active().project(complex.xs().data(), complex.ys().data(),
                            v.dimension() == 3 ? complex.zs().data() : nullptr, out.size(), v[0],
                            v[1], v[2], out.data());
  return out;
}

std::vector<double> simplex_heights(const EmbeddedComplex& complex,
                                    std::span<const double> vertex_values) {
  std::vector<double> out(complex.num_simplices());
  for (std::size_t id = 0; id < out.size(); ++id) {
    double h = -std::numeric_limits<double>::infinity();
    for (auto p : complex.vertices_of(id)) h = std::max(h, vertex_values[p]);
    out[id] = h;
  }
  return out;
}

Subcomplex intersect(std::span<const Subcomplex> elements) {
  if (elements.empty()) throw std::invalid_argument("intersect: no elements");
  BitSet mask = elements[0].mask();
  for (std::size_t i = 1; i < elements.size(); ++i) {
    if (elements[i].parent() != elements[0].parent()) {
      throw ComplexError("intersect: elements have different parents");
    }
    mask = mask & elements[i].mask();
  }
  return Subcomplex::from_mask(elements[0].parent(), std::move(mask));
}

Subcomplex sublevel(const Subcomplex& sub, std::span<const double> heights, double t) {
  BitSet mask(sub.mask().size());
  sub.mask().for_each([&](std::size_t id) {
    if (heights[id] <= t) mask.set(id);
  });
  return Subcomplex::from_mask(sub.parent(), std::move(mask));
}

Subcomplex sublevel(const Subcomplex& sub, const Direction& v, double t) {
  const auto& c = sub.complex();
  return sublevel(sub, simplex_heights(c, vertex_heights(c, v)), t);
}

Components components(const Subcomplex& sub) {
  const auto& c = sub.complex();
  Components out;
  out.label.assign(c.num_points(), -1);
  std::vector<std::uint32_t> parent(c.num_points());
  std::iota(parent.begin(), parent.end(), 0U);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const std::size_t v_end = c.count(0);
  const std::size_t e_end = v_end + c.count(1);
  sub.mask().for_each([&](std::size_t id) {
    if (id < v_end) {
      out.label[c.vertices_of(id)[0]] = 0;
    } else if (id < e_end) {
      auto e = c.vertices_of(id);
      auto a = find(e[0]);
      auto b = find(e[1]);
      // Keep the smaller vertex as root so roots are component minima.
      if (a < b) parent[b] = a;
      else if (b < a) parent[a] = b;
    }
  });
  for (std::size_t p = 0; p < c.num_points(); ++p) {
    if (out.label[p] < 0) continue;
    const auto root = find(static_cast<std::uint32_t>(p));
    out.label[p] = root;
    if (root == p) ++out.count;
  }
  return out;
}

}  // namespace pht
