#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pht/complex.hpp"
#include "pht/grid.hpp"
#include "pht/pht.hpp"

namespace pht {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ManifoldKind { circle, sphere, torus };

ManifoldKind parse_manifold_kind(const std::string& name);
std::string to_string(ManifoldKind kind);

// Circle and sphere use `radius`; the torus uses `major_radius` R and
// `radius` as its minor radius r. All are centered at the origin; the torus
// revolves around the z axis.
struct ManifoldSpec {
  ManifoldKind kind = ManifoldKind::circle;
  double radius = 1;
  double major_radius = 0;

  static ManifoldSpec circle(double r);
  static ManifoldSpec sphere(double r);
  static ManifoldSpec torus(double major, double minor);

  // Throws std::invalid_argument on non-positive radii or R <= r.
  void validate() const;
  int ambient_dimension() const;
  int intrinsic_dimension() const;
  // Reach: the radius for circle and sphere, min(r, R - r) for the torus.
  double condition_number() const;
  // Absolute defect of the implicit equation at p (0 on the manifold).
  double residual(const Point& p) const;
  // Betti numbers in degrees 0..intrinsic dimension.
  std::vector<int> betti() const;

  friend bool operator==(const ManifoldSpec&, const ManifoldSpec&) = default;
};

struct PointCloud {
  ManifoldSpec spec;
  std::uint64_t seed = 0;
  std::vector<Point> points;
};

// Uniform with respect to surface measure; reproducible per seed.
PointCloud sample_points(const ManifoldSpec& spec, std::size_t n, std::uint64_t seed);

std::string point_cloud_csv(const PointCloud& cloud);

struct DensityResult {
  bool ok = false;
  double worst_gap = 0;  // max over reference points of the distance to the cloud
  Point worst_point{};
  std::size_t reference_points = 0;
};

// Deterministic reference points on the manifold: circle uses `resolution`
// equal angles, sphere `resolution` Fibonacci points, torus a
// resolution x resolution angle grid.
std::vector<Point> reference_points(const ManifoldSpec& spec, std::size_t resolution);

DensityResult density_check(const PointCloud& cloud, const ManifoldSpec& spec, double r,
                            std::size_t resolution);

struct Ball {
  Point center{};
  double radius = 0;
};

// Smallest enclosing ball of points in R^d (d = 2 or 3), by Welzl's
// recursion over support sets of at most d + 1 points.
Ball min_enclosing_ball(std::span<const Point> points, int d);

struct CechParams {
  double epsilon = 0;
  // Largest simplex dimension kept.
  int max_dimension = 2;
};

// Simplex {i_0..i_k} is kept iff the smallest enclosing ball of its points
// has radius <= epsilon.
ComplexPtr cech_complex(const PointCloud& cloud, const CechParams& params);

// Circle: N-gon. Sphere: icosahedron subdivided `resolution` times and
// projected. Torus: resolution x resolution angle grid, two triangles per cell.
ComplexPtr reference_complex(const ManifoldSpec& spec, std::size_t resolution);
std::size_t default_reference_resolution(ManifoldKind kind);

struct ApproximationOptions {
  // Largest simplex dimension of the Čech complex; 0 means intrinsic dimension + 1.
  // Barcodes and homology are compared in degrees below the cap.
  int cap = 0;
  std::size_t density_resolution = 4096;
  std::size_t reference_resolution = 0;  // 0: default per manifold
  unsigned parallelism = 0;
};

struct ApproximationReport {
  ManifoldSpec spec;
  std::size_t n = 0;
  double epsilon = 0;
  std::uint64_t seed = 0;
  int cap = 0;
  double tau = 0;
  DensityResult density;
  std::vector<std::size_t> simplex_counts;
  std::vector<int> cech_betti;
  std::vector<int> manifold_betti;
  bool homology_agrees = false;
  double surrogate = 0;
  // 2 * epsilon * vol(S^{d-1}).
  double bound = 0;
  bool within_bound = false;
  // epsilon < tau / vol(S^{d-1}): the regime where the interleaving distance
  // is bounded by epsilon itself.
  bool small_epsilon_regime = false;
  double small_epsilon_bound = 0;
  bool within_small_epsilon_bound = false;
};

// PHT of the reference complex in degrees below the cap.
PhtSample reference_pht(const ManifoldSpec& spec, const DirectionGrid& grid,
                        const ApproximationOptions& options = {});

// Throws PreconditionError unless 0 < epsilon < tau / 2.
ApproximationReport approximation_report(const ManifoldSpec& spec, std::size_t n, double epsilon,
                                         std::uint64_t seed, const DirectionGrid& grid,
                                         const ApproximationOptions& options = {},
                                         const PhtSample* reference = nullptr);

}  // namespace pht
