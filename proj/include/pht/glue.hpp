#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pht/complex.hpp"
#include "pht/f2.hpp"
#include "pht/grid.hpp"
#include "pht/persistence.hpp"

namespace pht {

// One nonempty intersection M_I of cover elements.
struct NerveEntry {
  std::vector<std::uint32_t> index;  // sorted element indices I
  Subcomplex sub;
  std::vector<std::uint32_t> simplices;  // ids of M_I, ascending
  // Entry ids of I minus its j-th index (depth >= 2 only), in order of j.
  std::vector<std::uint32_t> facets;
  // Entry ids of the listed J = I + {j}, ascending.
  std::vector<std::uint32_t> cofaces;

  std::size_t depth() const { return index.size(); }
};

// Nonempty intersections up to a maximum depth, ordered by depth and then
// lexicographically by index set.
class Nerve {
 public:
  const Cover& cover() const { return cover_; }
  const EmbeddedComplex& complex() const { return *cover_.parent(); }
  std::span<const NerveEntry> entries() const { return entries_; }
  const NerveEntry& entry(std::size_t id) const { return entries_[id]; }
  // Entries with |I| = k; empty for k = 0 or k beyond the last nonempty depth.
  std::span<const NerveEntry> at_depth(std::size_t k) const;
  std::size_t depth_begin(std::size_t k) const;
  std::size_t max_depth() const { return max_depth_; }
  // Largest k with a nonempty depth-k entry.
  std::size_t top_depth() const { return depth_offsets_.size() - 1; }
  // True when no nonempty intersection was cut off by max_depth.
  bool complete() const { return complete_; }
  std::optional<std::size_t> find(std::span<const std::uint32_t> index) const;

 private:
  friend Nerve build_nerve(const Cover& cover, std::size_t max_depth);

  Cover cover_;
  std::vector<NerveEntry> entries_;
  std::vector<std::size_t> depth_offsets_;  // depth_offsets_[k - 1] = first entry of depth k
  std::size_t max_depth_ = 0;
  bool complete_ = true;
};

// max_depth = 0 means |cover|.
Nerve build_nerve(const Cover& cover, std::size_t max_depth = 0);

// Degree-0 Čech complex at one stalk: bases are the components of each
// sublevel M_{I,v,t}, one differential between consecutive depths.
struct CechH0Complex {
  double t = 0;
  // dims[k - 1]: number of basis elements at depth k.
  std::vector<std::size_t> dims;
  // Per depth k: representative vertex (minimal index) of each basis element.
  std::vector<std::vector<std::uint32_t>> basis;
  // differentials[k - 1]: depth k -> depth k + 1 (rows: depth k + 1).
  std::vector<f2::Matrix> differentials;
  // cohomology[p] = dim H^p for p = 0..ambient dimension.
  std::vector<int> cohomology;
};

// E1 page: e1[p][q] = sum over |I| = p + 1 of dim H^q(M_{I,v,t}).
using E1Page = std::vector<std::vector<int>>;

struct StalkReport {
  std::size_t direction_index = 0;
  Direction v;
  double t = 0;
  E1Page e1;
  std::vector<std::size_t> cech_h0_dims;
  std::vector<int> fast;    // empty when not computed
  std::vector<int> total;   // empty when not computed
  std::vector<int> direct;

  bool fast_agrees() const { return !fast.empty() && fast == direct; }
  bool total_agrees() const { return !total.empty() && total == direct; }
  // Some entry has a nonzero row q >= 1.
  bool higher_rows_nonzero() const;
};

// Stalk computations for one direction; heights are computed once.
class StalkEvaluator {
 public:
  // Throws std::invalid_argument if the nerve is too shallow for degrees
  // 0..d (needs depth d + 2 unless complete).
  StalkEvaluator(const Nerve& nerve, const Direction& v);

  const Direction& direction() const { return v_; }
  std::span<const double> vertex_heights() const { return vertex_heights_; }

  CechH0Complex cech_h0(double t) const;
  std::vector<int> total_cohomology(double t) const;
  E1Page e1_page(double t) const;
  // dim H^q(M_{I,v,t}) for q = 0..d, per nerve entry.
  std::vector<std::vector<int>> entry_cohomology(double t) const;
  std::vector<int> direct_betti(double t) const;

 private:
  std::vector<std::uint32_t> sublevel_ids(const NerveEntry& e, double t) const;

  const Nerve& nerve_;
  Direction v_;
  int degrees_;
  std::vector<double> vertex_heights_;
  std::vector<double> heights_;
  Barcode direct_;
};

CechH0Complex cech_h0_stalk(const Nerve& nerve, const Direction& v, double t);
std::vector<int> total_cohomology_stalk(const Nerve& nerve, const Direction& v, double t);
E1Page e1_page(const Nerve& nerve, const Direction& v, double t);

// {min - 1} + distinct vertex heights + midpoints + {max + 1}, ascending.
// Every combinatorial type of lower-star sublevel set is hit.
std::vector<double> critical_t_grid(std::span<const double> vertex_heights);

enum class GlueMode { fast_h0, total };

GlueMode parse_glue_mode(const std::string& name);
std::string to_string(GlueMode mode);

struct GlueOptions {
  GlueMode mode = GlueMode::total;
  // Explicit t values shared by all directions; empty means the per-direction
  // critical grid.
  std::vector<double> t_values;
  bool with_e1 = true;
  unsigned parallelism = 0;
};

struct GluedCurves {
  GlueMode mode = GlueMode::total;
  // Stalks in (direction, t) order.
  std::vector<StalkReport> stalks;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  // Set in fast mode when the cover is not known to satisfy the convexity
  // precondition.
  std::optional<std::string> warning;
};

GluedCurves glued_betti_curves(const Cover& cover, const DirectionGrid& grid,
                               const GlueOptions& options = {});

enum class ConvexityVerdict { guaranteed, unverified };

struct ScanOptions {
  std::size_t directions = 64;
  // 0 means the critical grid of each direction; otherwise evenly spaced
  // values spanning the height range.
  std::size_t t_samples = 0;
  unsigned parallelism = 0;
};

struct ConvexityScan {
  std::size_t stalks = 0;
  std::size_t failures = 0;  // stalks with a nonzero row q >= 1
  // Per element: number of stalks where some entry containing it has a
  // nonzero row q >= 1.
  std::vector<std::size_t> element_failures;
  std::optional<std::pair<Direction, double>> first_failure;

  bool passed() const { return failures == 0; }
};

struct ConvexityReport {
  std::vector<ConvexityVerdict> verdicts;
  std::optional<ConvexityScan> scan;

  bool guaranteed() const;
};

// "guaranteed" iff the element is the closure of a single simplex.
ConvexityReport convexity_check(const Cover& cover, const std::optional<ScanOptions>& scan = {});

std::string to_string(ConvexityVerdict verdict);

}  // namespace pht
