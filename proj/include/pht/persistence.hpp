#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pht/complex.hpp"

namespace pht {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct FiltrationEntry {
  std::uint32_t simplex;
  double value;
};

// Simplexwise filtration of a face-closed simplex set: every simplex comes
// after its faces and values never decrease.
class Filtration {
 public:
  // Throws std::invalid_argument if the order is not a valid filtration.
  static Filtration make(ComplexPtr parent, std::vector<FiltrationEntry> entries);

  const ComplexPtr& parent() const { return parent_; }
  std::span<const FiltrationEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  friend Filtration lower_star_from_simplex_heights(const Subcomplex&, std::span<const double>);

  ComplexPtr parent_;
  std::vector<FiltrationEntry> entries_;
};

// Lower-star filtration of a height function; ties are broken by dimension,
// then by lexicographic vertex tuple.
Filtration lower_star_filtration(const Subcomplex& sub, const Direction& v);
Filtration lower_star_filtration(const Subcomplex& sub, std::span<const double> vertex_values);
// Same, from heights already extended to every simplex of the parent.
Filtration lower_star_from_simplex_heights(const Subcomplex& sub,
                                           std::span<const double> simplex_heights);

struct Interval {
  int degree = 0;
  double birth = 0;
  double death = kInfinity;
  // Zero-length pair created and destroyed at the same value.
  bool ephemeral = false;

  bool essential() const { return std::isinf(death); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Intervals grouped by degree 0..max_degree.
class Barcode {
 public:
  Barcode() = default;
  explicit Barcode(int max_degree) : by_degree_(static_cast<std::size_t>(max_degree) + 1) {}

  int max_degree() const { return static_cast<int>(by_degree_.size()) - 1; }
  // Empty span for degrees outside 0..max_degree.
  std::span<const Interval> intervals(int degree) const;
  void add(const Interval& interval);
  // Sorted by (birth, death) within each degree.
  void canonicalize();
  std::size_t size() const;

  friend bool operator==(const Barcode&, const Barcode&) = default;

 private:
  std::vector<std::vector<Interval>> by_degree_;
};

// Standard F2 column reduction with clearing. Intervals above max_degree are
// dropped (pass -1 for the ambient dimension of the parent).
Barcode compute_barcode(const Filtration& filtration, int max_degree = -1);

// Number of non-ephemeral degree-n intervals with birth <= t < death.
int betti_curve(const Barcode& barcode, int degree, double t);

// Exact bottleneck distance between the non-ephemeral intervals of one degree.
// Essential intervals only match essential ones; +inf if their counts differ.
double bottleneck(std::span<const Interval> a, std::span<const Interval> b);
double bottleneck(const Barcode& a, const Barcode& b, int degree);

// "degree,birth,death" rows, non-ephemeral only, "inf" for essential deaths.
std::string barcode_csv(const Barcode& barcode);

}  // namespace pht
