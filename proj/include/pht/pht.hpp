#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pht/complex.hpp"
#include "pht/grid.hpp"
#include "pht/persistence.hpp"

namespace pht {

// Discretized persistent homology transform: one barcode per grid direction.
struct PhtSample {
  std::string complex_id;
  DirectionGrid grid;
  // Degrees carried by every barcode (the ambient dimension unless truncated).
  int max_degree = 0;
  std::vector<Barcode> barcodes;
};

// Content hash of a subcomplex (parent geometry plus membership).
std::string subcomplex_id(const Subcomplex& sub);

// Barcodes of the lower-star filtration in every grid direction, evaluated in
// parallel and stored in grid order. max_degree < 0 means the ambient dimension.
PhtSample compute_pht(const Subcomplex& sub, const DirectionGrid& grid, unsigned parallelism = 0,
                      int max_degree = -1);

// Sum over directions of weight * max over shared degrees of the bottleneck
// distance. Throws std::invalid_argument if the grids differ.
double pht_distance_surrogate(const PhtSample& a, const PhtSample& b);

struct HeatmapOptions {
  // Filtration window; defaults to the sample's birth/death range padded by 10%.
  double t_min = kInfinity;
  double t_max = -kInfinity;
  int radial_bins = 48;
  double size = 480;
};

// Polar heatmap of the Betti curves: direction k becomes an angular sector and
// t grows outward. Only defined for d = 2.
std::string render_heatmap_svg(const PhtSample& sample, int degree,
                               const HeatmapOptions& options = {});
void render_heatmap(const PhtSample& sample, int degree, const std::filesystem::path& path,
                    const HeatmapOptions& options = {});

}  // namespace pht
