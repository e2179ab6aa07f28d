#include "pht/pht.hpp"

#include <algorithm>
#include <stdexcept>

#include "pht/hash.hpp"
#include "pht/io.hpp"
#include "pht/parallel.hpp"

namespace pht {

std::string subcomplex_id(const Subcomplex& sub) {
  std::string blob = io::write_complex_json(sub.complex());
  for (auto w : sub.mask().words()) {
    for (int b = 0; b < 8; ++b) blob += static_cast<char>((w >> (8 * b)) & 0xff);
  }
  return sha256_hex(blob);
}

PhtSample compute_pht(const Subcomplex& sub, const DirectionGrid& grid, unsigned parallelism,
                      int max_degree) {
  const auto& c = sub.complex();
  if (grid.dimension != c.dimension()) {
    throw std::invalid_argument("grid dimension does not match the complex");
  }
  PhtSample out;
  out.complex_id = subcomplex_id(sub);
  out.grid = grid;
  out.max_degree = max_degree < 0 ? c.dimension() : max_degree;
  out.barcodes.resize(grid.size());
  parallel_for(grid.size(), parallelism, [&](std::size_t k) {
    auto bc = compute_barcode(lower_star_filtration(sub, grid.directions[k]), out.max_degree);
    bc.canonicalize();
    out.barcodes[k] = std::move(bc);
  });
  return out;
}

double pht_distance_surrogate(const PhtSample& a, const PhtSample& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("PHT samples use different grids");
  const int degrees = std::min(a.max_degree, b.max_degree);
  double total = 0;
  for (std::size_t k = 0; k < a.grid.size(); ++k) {
    double worst = 0;
    for (int n = 0; n <= degrees; ++n) {
      worst = std::max(worst, bottleneck(a.barcodes[k], b.barcodes[k], n));
    }
    total += a.grid.weights[k] * worst;
  }
  return total;
}

void render_heatmap(const PhtSample& sample, int degree, const std::filesystem::path& path,
                    const HeatmapOptions& options) {
  io::write_file(path, render_heatmap_svg(sample, degree, options));
}

}  // namespace pht
