#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pht/pht.hpp"

namespace pht {

namespace {

constexpr const char* kPalette[] = {"#f4f4f4", "#fdd49e", "#ef6548", "#990000", "#4a1486"};

const char* color_for(int value) {
  const int last = static_cast<int>(std::size(kPalette)) - 1;
  return kPalette[std::clamp(value, 0, last)];
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  // Avoid "-0.000" so output is stable across tiny sign flips.
  if (std::string_view(buf) == "-0.000") return "0.000";
  return buf;
}

class SvgSectors {
 public:
  SvgSectors(double cx, double cy) : cx_(cx), cy_(cy) {}

  // Annular sector between radii r0 < r1 and angles a0 < a1 (radians, CCW).
  void add(double r0, double r1, double a0, double a1, const char* fill) {
    if (a1 - a0 >= std::numbers::pi) {
      const double mid = 0.5 * (a0 + a1);
      add(r0, r1, a0, mid, fill);
      add(r0, r1, mid, a1, fill);
      return;
    }
    out_ << "<path fill=\"" << fill << "\" d=\"M" << x(r1, a0) << ' ' << y(r1, a0) << " A" << fmt(r1)
         << ' ' << fmt(r1) << " 0 0 0 " << x(r1, a1) << ' ' << y(r1, a1) << " L" << x(r0, a1)
         << ' ' << y(r0, a1) << " A" << fmt(r0) << ' ' << fmt(r0) << " 0 0 1 " << x(r0, a0) << ' '
         << y(r0, a0) << " Z\"/>\n";
  }

  std::string str() const { return out_.str(); }

 private:
  // SVG y grows downward; flip so direction (0, 1) points up.
  std::string x(double r, double a) const { return fmt(cx_ + r * std::cos(a)); }
  std::string y(double r, double a) const { return fmt(cy_ - r * std::sin(a)); }

  double cx_, cy_;
  std::ostringstream out_;
};

}  // namespace

std::string render_heatmap_svg(const PhtSample& sample, int degree, const HeatmapOptions& options) {
  if (sample.grid.dimension != 2) {
    throw std::invalid_argument("heatmaps are only defined for planar shapes (d = 2)");
  }
  if (options.radial_bins < 1) throw std::invalid_argument("radial_bins must be positive");

  double t_min = options.t_min, t_max = options.t_max;
  if (!(t_min < t_max)) {
    double lo = kInfinity, hi = -kInfinity;
    for (const auto& bc : sample.barcodes) {
      for (int n = 0; n <= bc.max_degree(); ++n) {
        for (const auto& iv : bc.intervals(n)) {
          lo = std::min(lo, iv.birth);
          hi = std::max(hi, iv.essential() ? iv.birth : iv.death);
        }
      }
    }
    if (!(lo <= hi)) {
      lo = -1;
      hi = 1;
    }
    const double pad = hi > lo ? 0.1 * (hi - lo) : 1.0;
    t_min = lo - pad;
    t_max = hi + pad;
  }

  const std::size_t n = sample.grid.size();
  std::vector<double> angle(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& v = sample.grid.directions[k];
    angle[k] = std::atan2(v[1], v[0]);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return angle[a] < angle[b]; });

  const double size = options.size;
  const double cx = size / 2, cy = size / 2;
  const double r_inner = 0.08 * size, r_outer = 0.46 * size;
  const int bins = options.radial_bins;
  const double dr = (r_outer - r_inner) / bins;
  const double dt = (t_max - t_min) / bins;
  const double two_pi = 2 * std::numbers::pi;

  SvgSectors sectors(cx, cy);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = order[i];
    // Sector boundaries halfway to the angular neighbours.
    const double prev = i == 0 ? angle[order[n - 1]] - two_pi : angle[order[i - 1]];
    const double next = i == n - 1 ? angle[order[0]] + two_pi : angle[order[i + 1]];
    const double a0 = 0.5 * (prev + angle[k]);
    const double a1 = 0.5 * (angle[k] + next);

    // Merge runs of equal value into one sector.
    int run_start = 0;
    int run_value = betti_curve(sample.barcodes[k], degree, t_min + 0.5 * dt);
    for (int j = 1; j <= bins; ++j) {
      const int value =
          j < bins ? betti_curve(sample.barcodes[k], degree, t_min + (j + 0.5) * dt) : -1;
      if (value == run_value) continue;
      sectors.add(r_inner + run_start * dr, r_inner + j * dr, a0, a1, color_for(run_value));
      run_start = j;
      run_value = value;
    }
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(size) << "\" height=\""
      << fmt(size + 40) << "\" viewBox=\"0 0 " << fmt(size) << ' ' << fmt(size + 40) << "\">\n";
  svg << "<desc>PHT^" << degree << " Betti values; radius maps t in [" << fmt(t_min) << ", "
      << fmt(t_max) << "]</desc>\n";
  svg << "<g stroke=\"none\">\n" << sectors.str() << "</g>\n";
  svg << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(r_inner)
      << "\" fill=\"white\" stroke=\"#888\" stroke-width=\"0.5\"/>\n";
  for (int v = 0; v < static_cast<int>(std::size(kPalette)); ++v) {
    const double lx = 10 + v * 60.0;
    svg << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(size + 12) << "\" width=\"16\" height=\"16\" fill=\""
        << kPalette[v] << "\" stroke=\"#888\" stroke-width=\"0.5\"/>";
    svg << "<text x=\"" << fmt(lx + 20) << "\" y=\"" << fmt(size + 25)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << (v + 1 == static_cast<int>(std::size(kPalette)) ? std::to_string(v) + "+" : std::to_string(v))
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace pht
