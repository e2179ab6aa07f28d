#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pht/bitset.hpp"

namespace pht {

// Strictly increasing vertex indices.
using Simplex = std::vector<std::uint32_t>;
using Point = std::array<double, 3>;

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw description of a geometric simplicial complex in R^d, d in {2, 3}.
// Coordinates beyond d are zero. simplices[k] holds the k-simplices.
struct ComplexData {
  int dimension = 2;
  std::vector<Point> vertices;
  std::vector<std::vector<Simplex>> simplices;

  friend bool operator==(const ComplexData&, const ComplexData&) = default;
};

struct ValidationReport {
  bool ok = true;
  std::string message;
  std::optional<Simplex> offending;

  explicit operator bool() const { return ok; }
};

// Checks dimension, finiteness, index ranges, ordering, duplicates and face
// closure, stopping at the first offending simplex.
ValidationReport validate(const ComplexData& data);

std::string format_simplex(std::span<const std::uint32_t> s);

// Complex holding every vertex plus the face closure of the given simplices,
// each dimension in lexicographic order.
ComplexData closure_data(int dimension, std::vector<Point> vertices,
                         std::span<const Simplex> simplices);

// Immutable, validated complex with incidence tables. Simplices get global ids
// in dimension-major order, keeping the input order inside each dimension.
class EmbeddedComplex {
 public:
  // Throws ComplexError when validate() fails.
  static std::shared_ptr<const EmbeddedComplex> build(ComplexData data);

  int dimension() const { return data_.dimension; }
  const ComplexData& data() const { return data_; }

  std::size_t num_points() const { return data_.vertices.size(); }
  const Point& point(std::size_t i) const { return data_.vertices[i]; }
  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  std::span<const double> zs() const { return zs_; }

  std::size_t num_simplices() const { return dims_.size(); }
  // Largest k with a k-simplex, or -1 for the empty complex.
  int top_dimension() const { return static_cast<int>(offsets_.size()) - 2; }
  std::size_t count(int k) const;
  std::size_t offset(int k) const {
    return offsets_[std::min(static_cast<std::size_t>(k), offsets_.size() - 1)];
  }

  int dim(std::size_t id) const { return dims_[id]; }
  std::span<const std::uint32_t> vertices_of(std::size_t id) const {
    return {vertex_index_.data() + vertex_offsets_[id], static_cast<std::size_t>(dims_[id] + 1)};
  }
  // The k + 1 facets of a k-simplex (none for a vertex); facet j omits vertex j.
  std::span<const std::uint32_t> facets(std::size_t id) const {
    if (dims_[id] == 0) return {};
    return {facet_index_.data() + vertex_offsets_[id] - offset(1),
            static_cast<std::size_t>(dims_[id]) + 1};
  }
  std::span<const std::uint32_t> cofacets(std::size_t id) const {
    return {cofacet_index_.data() + cofacet_offsets_[id],
            cofacet_offsets_[id + 1] - cofacet_offsets_[id]};
  }
  // Position of the simplex among those of its dimension in lexicographic order.
  std::uint32_t lex_rank(std::size_t id) const { return lex_rank_[id]; }

  std::optional<std::size_t> find(std::span<const std::uint32_t> s) const;

  // Global id of the 0-simplex on coordinate vertex p, or -1 if not listed.
  std::int64_t vertex_simplex(std::size_t p) const { return vertex_simplex_[p]; }

 private:
  EmbeddedComplex() = default;

  ComplexData data_;
  std::vector<double> xs_, ys_, zs_;
  std::vector<std::size_t> offsets_;
  std::vector<int> dims_;
  std::vector<std::size_t> vertex_offsets_;
  std::vector<std::uint32_t> vertex_index_;
  std::vector<std::uint32_t> facet_index_;
  std::vector<std::size_t> cofacet_offsets_;
  std::vector<std::uint32_t> cofacet_index_;
  std::vector<std::uint32_t> lex_rank_;
  std::vector<std::int64_t> vertex_simplex_;
};

using ComplexPtr = std::shared_ptr<const EmbeddedComplex>;

// A face-closed set of simplices of a parent complex.
class Subcomplex {
 public:
  Subcomplex() = default;

  static Subcomplex full(ComplexPtr parent);
  static Subcomplex empty(ComplexPtr parent);
  // Smallest subcomplex containing the given simplex ids.
  static Subcomplex closure_of(ComplexPtr parent, std::span<const std::size_t> ids);
  // Throws ComplexError if the mask is not closed under faces.
  static Subcomplex from_mask(ComplexPtr parent, BitSet mask);

  const ComplexPtr& parent() const { return parent_; }
  const EmbeddedComplex& complex() const { return *parent_; }
  const BitSet& mask() const { return mask_; }
  bool contains(std::size_t id) const { return mask_.test(id); }
  std::size_t size() const { return mask_.count(); }
  bool empty() const { return mask_.none(); }
  std::vector<std::size_t> simplex_ids() const;
  // Ids of simplices not contained in another simplex of this subcomplex.
  std::vector<std::size_t> maximal_simplices() const;

  friend bool operator==(const Subcomplex& a, const Subcomplex& b) {
    return a.parent_ == b.parent_ && a.mask_ == b.mask_;
  }

 private:
  Subcomplex(ComplexPtr parent, BitSet mask) : parent_(std::move(parent)), mask_(std::move(mask)) {}

  ComplexPtr parent_;
  BitSet mask_;
};

bool is_face_closed(const EmbeddedComplex& complex, const BitSet& mask);

// Finite closed cover: subcomplexes of one parent whose union is the parent.
class Cover {
 public:
  // Throws ComplexError on mismatched parents or an incomplete union.
  static Cover make(ComplexPtr parent, std::vector<Subcomplex> elements);

  const ComplexPtr& parent() const { return parent_; }
  const std::vector<Subcomplex>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

 private:
  ComplexPtr parent_;
  std::vector<Subcomplex> elements_;
};

// Unit vector in R^d.
class Direction {
 public:
  static constexpr double kTolerance = 1e-12;

  // Throws std::invalid_argument unless |v| = 1 within kTolerance and d is 2 or 3.
  static Direction make(std::span<const double> v);
  static Direction normalized(std::span<const double> v);
  static Direction from_angle(double theta);

  int dimension() const { return dim_; }
  double operator[](std::size_t i) const { return v_[i]; }
  const std::array<double, 3>& components() const { return v_; }

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  std::array<double, 3> v_{};
  int dim_ = 0;
};

// Vertex projection with the same rounding as the SIMD kernels.
inline double project(const Point& p, const Direction& v) {
  double s = p[0] * v[0] + p[1] * v[1];
  return v.dimension() == 3 ? s + p[2] * v[2] : s;
}

// Height of a linear simplex: max of its vertex projections.
double height(const EmbeddedComplex& complex, std::size_t simplex, const Direction& v);

// Projections of every coordinate vertex (SIMD kernel).
std::vector<double> vertex_heights(const EmbeddedComplex& complex, const Direction& v);

// Lower-star extension of a vertex function to every simplex.
std::vector<double> simplex_heights(const EmbeddedComplex& complex,
                                    std::span<const double> vertex_values);

Subcomplex intersect(std::span<const Subcomplex> elements);

Subcomplex sublevel(const Subcomplex& sub, const Direction& v, double t);
Subcomplex sublevel(const Subcomplex& sub, std::span<const double> heights, double t);

struct Components {
  // Per coordinate vertex: id of its component (its minimal vertex index), or -1.
  std::vector<std::int64_t> label;
  std::size_t count = 0;
};

// Connected components of the 1-skeleton.
Components components(const Subcomplex& sub);

}  // namespace pht
