#include "pht/sample.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "pht/random.hpp"

namespace pht {

ManifoldKind parse_manifold_kind(const std::string& name) {
  if (name == "circle") return ManifoldKind::circle;
  if (name == "sphere") return ManifoldKind::sphere;
  if (name == "torus") return ManifoldKind::torus;
  throw std::invalid_argument("unknown manifold '" + name + "'");
}

std::string to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::circle: return "circle";
    case ManifoldKind::sphere: return "sphere";
    case ManifoldKind::torus: return "torus";
  }
  return "unknown";
}

ManifoldSpec ManifoldSpec::circle(double r) { return {ManifoldKind::circle, r, 0}; }
ManifoldSpec ManifoldSpec::sphere(double r) { return {ManifoldKind::sphere, r, 0}; }
ManifoldSpec ManifoldSpec::torus(double major, double minor) {
  return {ManifoldKind::torus, minor, major};
}

void ManifoldSpec::validate() const {
  if (!(radius > 0) || !std::isfinite(radius)) throw std::invalid_argument("radius must be positive");
  if (kind == ManifoldKind::torus && !(major_radius > radius && std::isfinite(major_radius))) {
    throw std::invalid_argument("torus needs major radius R > minor radius r");
  }
}

int ManifoldSpec::ambient_dimension() const { return kind == ManifoldKind::circle ? 2 : 3; }
int ManifoldSpec::intrinsic_dimension() const { return kind == ManifoldKind::circle ? 1 : 2; }

double ManifoldSpec::condition_number() const {
  if (kind == ManifoldKind::torus) return std::min(radius, major_radius - radius);
  return radius;
}

double ManifoldSpec::residual(const Point& p) const {
  switch (kind) {
    case ManifoldKind::circle: return std::abs(std::hypot(p[0], p[1]) - radius) + std::abs(p[2]);
    case ManifoldKind::sphere: return std::abs(std::hypot(p[0], p[1], p[2]) - radius);
    case ManifoldKind::torus: {
      const double q = std::hypot(p[0], p[1]) - major_radius;
      return std::abs(std::hypot(q, p[2]) - radius);
    }
  }
  return std::numeric_limits<double>::infinity();
}

std::vector<int> ManifoldSpec::betti() const {
  switch (kind) {
    case ManifoldKind::circle: return {1, 1};
    case ManifoldKind::sphere: return {1, 0, 1};
    case ManifoldKind::torus: return {1, 2, 1};
  }
  return {};
}

namespace {

Point torus_point(const ManifoldSpec& s, double u, double v) {
  const double w = s.major_radius + s.radius * std::cos(v);
  return {w * std::cos(u), w * std::sin(u), s.radius * std::sin(v)};
}

double dist2(const Point& a, const Point& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

}  // namespace

PointCloud sample_points(const ManifoldSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (n < 1) throw std::invalid_argument("sample size must be at least 1");
  PointCloud cloud;
  cloud.spec = spec;
  cloud.seed = seed;
  cloud.points.reserve(n);
  std::mt19937_64 rng(seed);
  const double two_pi = 2 * std::numbers::pi;
  while (cloud.points.size() < n) {
    switch (spec.kind) {
      case ManifoldKind::circle: {
        const double a = two_pi * unit_uniform(rng);
        cloud.points.push_back({spec.radius * std::cos(a), spec.radius * std::sin(a), 0});
        break;
      }
      case ManifoldKind::sphere: {
        // Archimedes: z uniform in [-1, 1] is area preserving.
        const double z = 2 * unit_uniform(rng) - 1;
        const double a = two_pi * unit_uniform(rng);
        const double s = std::sqrt(std::max(0.0, 1 - z * z));
        cloud.points.push_back({spec.radius * s * std::cos(a), spec.radius * s * std::sin(a),
                                spec.radius * z});
        break;
      }
      case ManifoldKind::torus: {
        // Area density is proportional to R + r cos(v).
        const double u = two_pi * unit_uniform(rng);
        const double v = two_pi * unit_uniform(rng);
        const double accept = unit_uniform(rng) * (spec.major_radius + spec.radius);
        if (accept <= spec.major_radius + spec.radius * std::cos(v)) {
          cloud.points.push_back(torus_point(spec, u, v));
        }
        break;
      }
    }
  }
  return cloud;
}

std::string point_cloud_csv(const PointCloud& cloud) {
  std::ostringstream out;
  const bool planar = cloud.spec.ambient_dimension() == 2;
  out << (planar ? "x,y\n" : "x,y,z\n");
  char buf[96];
  for (const auto& p : cloud.points) {
    if (planar) std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p[0], p[1]);
    else std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p[0], p[1], p[2]);
    out << buf;
  }
  return out.str();
}

std::vector<Point> reference_points(const ManifoldSpec& spec, std::size_t resolution) {
  spec.validate();
  resolution = std::max<std::size_t>(resolution, 1);
  const double two_pi = 2 * std::numbers::pi;
  std::vector<Point> out;
  switch (spec.kind) {
    case ManifoldKind::circle:
      for (std::size_t k = 0; k < resolution; ++k) {
        const double a = two_pi * static_cast<double>(k) / static_cast<double>(resolution);
        out.push_back({spec.radius * std::cos(a), spec.radius * std::sin(a), 0});
      }
      break;
    case ManifoldKind::sphere: {
      const auto grid = make_grid(3, resolution, GridScheme::fibonacci);
      for (const auto& v : grid.directions) {
        out.push_back({spec.radius * v[0], spec.radius * v[1], spec.radius * v[2]});
      }
      break;
    }
    case ManifoldKind::torus: {
      const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(resolution))));
      for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
          out.push_back(torus_point(spec, two_pi * static_cast<double>(i) / static_cast<double>(side),
                                    two_pi * static_cast<double>(j) / static_cast<double>(side)));
        }
      }
      break;
    }
  }
  return out;
}

DensityResult density_check(const PointCloud& cloud, const ManifoldSpec& spec, double r,
                            std::size_t resolution) {
  DensityResult res;
  const auto refs = reference_points(spec, resolution);
  res.reference_points = refs.size();
  double worst2 = -1;
  for (const auto& q : refs) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : cloud.points) best = std::min(best, dist2(p, q));
    if (best > worst2) {
      worst2 = best;
      res.worst_point = q;
    }
  }
  res.worst_gap = worst2 < 0 ? 0 : std::sqrt(worst2);
  res.ok = res.worst_gap <= r;
  return res;
}

// ---------------------------------------------------------------------------

namespace {

bool contains(const Ball& b, const Point& p) {
  const double r2 = b.radius * b.radius;
  return dist2(b.center, p) <= r2 + 1e-12 * std::max(1.0, r2);
}

// Solves the k x k system in place by partial pivoting; false if singular.
template <std::size_t N>
bool solve(std::array<std::array<double, N>, N>& a, std::array<double, N>& b, std::size_t k) {
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (std::abs(a[piv][c]) < 1e-14) return false;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < k; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 0; c < k; ++c) b[c] /= a[c][c];
  return true;
}

// Smallest ball with all of r[0..nr) on its boundary, within their affine hull.
std::optional<Ball> circumball(const std::array<Point, 4>& r, std::size_t nr) {
  if (nr == 0) return Ball{{0, 0, 0}, -1};
  if (nr == 1) return Ball{r[0], 0};
  if (nr == 2) {
    const Point c{(r[0][0] + r[1][0]) / 2, (r[0][1] + r[1][1]) / 2, (r[0][2] + r[1][2]) / 2};
    return Ball{c, std::sqrt(dist2(r[0], r[1])) / 2};
  }
  // center = r0 + sum_i l_i (r_i - r0) with 2 (r_i - r0).(c - r0) = |r_i - r0|^2.
  const std::size_t k = nr - 1;
  std::array<Point, 3> e{};
  for (std::size_t i = 0; i < k; ++i) {
    for (int a = 0; a < 3; ++a) e[i][a] = r[i + 1][a] - r[0][a];
  }
  std::array<std::array<double, 3>, 3> m{};
  std::array<double, 3> rhs{};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      m[i][j] = 2 * (e[i][0] * e[j][0] + e[i][1] * e[j][1] + e[i][2] * e[j][2]);
    }
    rhs[i] = e[i][0] * e[i][0] + e[i][1] * e[i][1] + e[i][2] * e[i][2];
  }
  if (!solve(m, rhs, k)) return std::nullopt;
  Point c = r[0];
  for (std::size_t i = 0; i < k; ++i) {
    for (int a = 0; a < 3; ++a) c[a] += rhs[i] * e[i][a];
  }
  double radius = 0;
  for (std::size_t i = 0; i < nr; ++i) radius = std::max(radius, std::sqrt(dist2(c, r[i])));
  return Ball{c, radius};
}

// Affinely dependent support: the smallest circumball of a proper subset
// that still contains all of them.
Ball support_ball(const std::array<Point, 4>& r, std::size_t nr) {
  if (auto b = circumball(r, nr)) return *b;
  Ball best{{0, 0, 0}, std::numeric_limits<double>::infinity()};
  for (std::size_t skip = 0; skip < nr; ++skip) {
    std::array<Point, 4> sub{};
    std::size_t m = 0;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i != skip) sub[m++] = r[i];
    }
    const Ball b = support_ball(sub, m);
    bool ok = true;
    for (std::size_t i = 0; i < nr && ok; ++i) ok = contains(b, r[i]);
    if (ok && b.radius < best.radius) best = b;
  }
  return best;
}

Ball welzl(std::span<const Point> p, std::size_t n, std::array<Point, 4>& r, std::size_t nr,
           std::size_t max_support) {
  if (n == 0 || nr == max_support) return support_ball(r, nr);
  Ball b = welzl(p, n - 1, r, nr, max_support);
  if (b.radius >= 0 && contains(b, p[n - 1])) return b;
  r[nr] = p[n - 1];
  return welzl(p, n - 1, r, nr + 1, max_support);
}

}  // namespace

Ball min_enclosing_ball(std::span<const Point> points, int d) {
  if (d != 2 && d != 3) throw std::invalid_argument("unsupported dimension");
  if (points.empty()) return Ball{{0, 0, 0}, 0};
  std::array<Point, 4> support{};
  const std::size_t max_support = static_cast<std::size_t>(d) + 1;
  if (points.size() <= 8) return welzl(points, points.size(), support, 0, max_support);
  // Deterministic shuffle keeps the expected linear running time.
  std::vector<Point> shuffled(points.begin(), points.end());
  std::mt19937_64 rng(0x5eed);
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[static_cast<std::size_t>(rng() % i)]);
  }
  return welzl(shuffled, shuffled.size(), support, 0, max_support);
}

ComplexPtr cech_complex(const PointCloud& cloud, const CechParams& params) {
  if (!(params.epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (params.max_dimension < 0) throw std::invalid_argument("max_dimension must be non-negative");
  const int d = cloud.spec.ambient_dimension();
  const auto& pts = cloud.points;
  const std::size_t n = pts.size();

  ComplexData data;
  data.dimension = d;
  data.vertices = pts;
  data.simplices.resize(1);
  for (std::uint32_t i = 0; i < n; ++i) data.simplices[0].push_back({i});

  std::vector<std::vector<std::uint32_t>> nbr(n);
  const double diam2 = 4 * params.epsilon * params.epsilon;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (dist2(pts[i], pts[j]) <= diam2 * (1 + 1e-9)) nbr[i].push_back(j);
    }
  }

  // Grow simplices by larger vertices adjacent to every current vertex.
  std::vector<Point> buf;
  const std::vector<Simplex>* prev = &data.simplices[0];
  for (int k = 1; k <= params.max_dimension; ++k) {
    std::vector<Simplex> next;
    for (const auto& s : *prev) {
      for (auto j : nbr[s.back()]) {
        bool adjacent = true;
        for (std::size_t i = 0; i + 1 < s.size() && adjacent; ++i) {
          adjacent = j > s[i] && std::binary_search(nbr[s[i]].begin(), nbr[s[i]].end(), j);
        }
        if (!adjacent) continue;
        buf.clear();
        for (auto v : s) buf.push_back(pts[v]);
        buf.push_back(pts[j]);
        if (min_enclosing_ball(buf, d).radius > params.epsilon) continue;
        Simplex t = s;
        t.push_back(j);
        next.push_back(std::move(t));
      }
    }
    if (next.empty()) break;
    data.simplices.push_back(std::move(next));
    prev = &data.simplices.back();
  }
  return EmbeddedComplex::build(std::move(data));
}

std::size_t default_reference_resolution(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::circle: return 256;
    case ManifoldKind::sphere: return 3;
    case ManifoldKind::torus: return 32;
  }
  return 0;
}

namespace {

ComplexPtr icosphere(double radius, std::size_t levels) {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  std::vector<Point> v = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                          {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                          {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  std::vector<std::array<std::uint32_t, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  auto normalize = [&](Point p) {
    const double s = radius / std::hypot(p[0], p[1], p[2]);
    return Point{p[0] * s, p[1] * s, p[2] * s};
  };
  for (auto& p : v) p = normalize(p);
  for (std::size_t l = 0; l < levels; ++l) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> mid;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      auto [it, fresh] = mid.try_emplace({key.first, key.second}, static_cast<std::uint32_t>(v.size()));
      if (fresh) {
        v.push_back(normalize({(v[a][0] + v[b][0]) / 2, (v[a][1] + v[b][1]) / 2, (v[a][2] + v[b][2]) / 2}));
      }
      return it->second;
    };
    std::vector<std::array<std::uint32_t, 3>> next;
    for (const auto& f : faces) {
      const auto ab = midpoint(f[0], f[1]), bc = midpoint(f[1], f[2]), ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  std::vector<Simplex> tris;
  for (const auto& f : faces) tris.push_back({f[0], f[1], f[2]});
  return EmbeddedComplex::build(closure_data(3, std::move(v), tris));
}

}  // namespace

ComplexPtr reference_complex(const ManifoldSpec& spec, std::size_t resolution) {
  spec.validate();
  if (resolution == 0) resolution = default_reference_resolution(spec.kind);
  const double two_pi = 2 * std::numbers::pi;
  switch (spec.kind) {
    case ManifoldKind::circle: {
      if (resolution < 3) throw std::invalid_argument("circle reference needs at least 3 vertices");
      std::vector<Point> v;
      std::vector<Simplex> edges;
      for (std::uint32_t k = 0; k < resolution; ++k) {
        const double a = two_pi * k / static_cast<double>(resolution);
        v.push_back({spec.radius * std::cos(a), spec.radius * std::sin(a), 0});
        edges.push_back({k, static_cast<std::uint32_t>((k + 1) % resolution)});
      }
      return EmbeddedComplex::build(closure_data(2, std::move(v), edges));
    }
    case ManifoldKind::sphere:
      return icosphere(spec.radius, resolution);
    case ManifoldKind::torus: {
      if (resolution < 3) throw std::invalid_argument("torus reference needs a grid of at least 3");
      const auto m = static_cast<std::uint32_t>(resolution);
      std::vector<Point> v;
      for (std::uint32_t i = 0; i < m; ++i) {
        for (std::uint32_t j = 0; j < m; ++j) {
          v.push_back(torus_point(spec, two_pi * i / m, two_pi * j / m));
        }
      }
      auto id = [&](std::uint32_t i, std::uint32_t j) { return (i % m) * m + (j % m); };
      std::vector<Simplex> tris;
      for (std::uint32_t i = 0; i < m; ++i) {
        for (std::uint32_t j = 0; j < m; ++j) {
          tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
          tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
      }
      return EmbeddedComplex::build(closure_data(3, std::move(v), tris));
    }
  }
  throw std::invalid_argument("unknown manifold");
}

// ---------------------------------------------------------------------------

namespace {

int resolve_cap(const ManifoldSpec& spec, const ApproximationOptions& options) {
  return options.cap > 0 ? options.cap : spec.intrinsic_dimension() + 1;
}

}  // namespace

PhtSample reference_pht(const ManifoldSpec& spec, const DirectionGrid& grid,
                        const ApproximationOptions& options) {
  const auto ref = reference_complex(spec, options.reference_resolution);
  return compute_pht(Subcomplex::full(ref), grid, options.parallelism, resolve_cap(spec, options) - 1);
}

ApproximationReport approximation_report(const ManifoldSpec& spec, std::size_t n, double epsilon,
                                         std::uint64_t seed, const DirectionGrid& grid,
                                         const ApproximationOptions& options,
                                         const PhtSample* reference) {
  spec.validate();
  ApproximationReport rep;
  rep.spec = spec;
  rep.n = n;
  rep.epsilon = epsilon;
  rep.seed = seed;
  rep.tau = spec.condition_number();
  if (!(epsilon > 0 && epsilon < rep.tau / 2)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "epsilon must satisfy 0 < epsilon < tau/2 = %.17g", rep.tau / 2);
    throw PreconditionError(buf);
  }
  if (grid.dimension != spec.ambient_dimension()) {
    throw std::invalid_argument("grid dimension does not match the manifold's ambient dimension");
  }
  rep.cap = resolve_cap(spec, options);

  const auto cloud = sample_points(spec, n, seed);
  rep.density = density_check(cloud, spec, epsilon / 2, options.density_resolution);
  const auto cech = cech_complex(cloud, {epsilon, rep.cap});
  for (int k = 0; k <= cech->top_dimension(); ++k) rep.simplex_counts.push_back(cech->count(k));

  const auto sample = compute_pht(Subcomplex::full(cech), grid, options.parallelism, rep.cap - 1);
  // Essential intervals of any direction give the Betti numbers.
  rep.cech_betti.assign(static_cast<std::size_t>(rep.cap), 0);
  for (int q = 0; q < rep.cap; ++q) {
    for (const auto& iv : sample.barcodes.front().intervals(q)) {
      if (iv.essential()) ++rep.cech_betti[static_cast<std::size_t>(q)];
    }
  }
  rep.manifold_betti = spec.betti();
  rep.manifold_betti.resize(static_cast<std::size_t>(rep.cap), 0);
  rep.homology_agrees = rep.cech_betti == rep.manifold_betti;

  std::optional<PhtSample> own;
  if (!reference) {
    own = reference_pht(spec, grid, options);
    reference = &*own;
  }
  rep.surrogate = pht_distance_surrogate(sample, *reference);
  const double vol = sphere_volume(spec.ambient_dimension());
  rep.bound = 2 * epsilon * vol;
  rep.within_bound = rep.surrogate <= rep.bound;
  rep.small_epsilon_regime = epsilon < rep.tau / vol;
  rep.small_epsilon_bound = epsilon;
  rep.within_small_epsilon_bound = rep.surrogate <= epsilon;
  return rep;
}

}  // namespace pht
