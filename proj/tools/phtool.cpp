// phtool: command-line front end for the pht library.
//
// Exit status: 0 success, 1 verification mismatch, 2 usage or configuration
// error, 3 I/O or parse error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pht/glue.hpp"
#include "pht/hash.hpp"
#include "pht/io.hpp"
#include "pht/pht.hpp"
#include "pht/sample.hpp"
#include "pht/serialize.hpp"
#include "pht/shapes.hpp"

#ifndef PHT_VERSION
#define PHT_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using pht::json::Json;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Records the resolved configuration, input and output hashes of one command.
class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  Json& config() { return config_; }

  void input(const std::string& role, const fs::path& path) {
    inputs_[role] = {{"path", path.generic_string()}, {"sha256", pht::sha256_hex(pht::io::read_file(path))}};
  }

  void output(const fs::path& dir, const std::string& name, const std::string& contents) {
    pht::io::write_file(dir / name, contents);
    outputs_[name] = pht::sha256_hex(contents);
  }

  void write(const fs::path& dir) const {
    Json j;
    j["tool"] = "phtool";
    j["version"] = PHT_VERSION;
    j["command"] = command_;
    j["config"] = config_;
    j["config_sha256"] = pht::sha256_hex(config_.dump());
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    pht::io::write_file(dir / "manifest.json", pht::json::dump_pretty(j));
  }

 private:
  std::string command_;
  Json config_ = Json::object();
  Json inputs_ = Json::object();
  Json outputs_ = Json::object();
};

struct GridOptions {
  std::size_t directions = 64;
  std::string scheme;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    app->add_option("--directions", directions, "Number of grid directions")->check(CLI::PositiveNumber);
    app->add_option("--scheme", scheme, "Grid scheme: uniform (d=2), fibonacci (d=3) or random");
    app->add_option("--seed", seed, "Seed for random grids and sampling");
  }

  pht::DirectionGrid make(int d) const {
    const auto s = scheme.empty() ? pht::default_scheme(d) : pht::parse_grid_scheme(scheme);
    return pht::make_grid(d, directions, s, seed);
  }

  void record(Json& config, int d) const {
    config["directions"] = directions;
    config["scheme"] = scheme.empty() ? pht::to_string(pht::default_scheme(d)) : scheme;
    config["seed"] = seed;
  }
};

struct Common {
  std::string out = "out";
  unsigned parallelism = 0;

  void add_to(CLI::App* app) {
    app->add_option("--out", out, "Output directory (env PHT_OUT_DIR)")->envname("PHT_OUT_DIR");
    app->add_option("-j,--parallelism", parallelism, "Worker threads (0: all cores)");
  }
};

struct ComplexInput {
  std::string path;
  int dimension = 0;

  void add_to(CLI::App* app, const std::string& flag = "--complex") {
    app->add_option(flag, path, "Complex file (.json or .off)")->required();
    app->add_option("--dimension", dimension, "Ambient dimension for OFF input (2 or 3)");
  }

  pht::ComplexPtr load() const {
    const auto format = pht::io::format_from_path(path);
    if (format == pht::io::Format::off) return pht::io::load(path, format, dimension == 0 ? 3 : dimension);
    return pht::io::load(path, format);
  }
};

std::vector<double> parse_t_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw UsageError("bad t value '" + tok + "'");
    out.push_back(x);
  }
  return out;
}

std::string pht_csv(const pht::PhtSample& sample) {
  std::string out = "direction,degree,birth,death\n";
  char buf[96];
  for (std::size_t k = 0; k < sample.barcodes.size(); ++k) {
    const auto& bc = sample.barcodes[k];
    for (int n = 0; n <= bc.max_degree(); ++n) {
      for (const auto& iv : bc.intervals(n)) {
        if (iv.ephemeral) continue;
        if (iv.essential()) std::snprintf(buf, sizeof buf, "%zu,%d,%.17g,inf\n", k, n, iv.birth);
        else std::snprintf(buf, sizeof buf, "%zu,%d,%.17g,%.17g\n", k, n, iv.birth, iv.death);
        out += buf;
      }
    }
  }
  return out;
}

// Config file: "key = value" lines mirroring the long flags of the command;
// '#' starts a comment. Turned into flags placed before the command-line ones,
// so explicit flags win.
std::vector<std::string> read_config(const fs::path& path, CLI::App* command) {
  std::vector<std::string> args;
  std::istringstream in(pht::io::read_file(path));
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto* opt = command->get_option_no_throw("--" + key);
    if (key == "config" || opt == nullptr) {
      throw UsageError(path.string() + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (opt->get_expected_min() == 0) {
      if (value == "true") args.push_back("--" + key);
      else if (value != "false") throw UsageError("flag '" + key + "' takes true or false");
    } else {
      args.push_back("--" + key);
      args.push_back(value);
    }
  }
  return args;
}

// ---------------------------------------------------------------------------

int run_pht(const ComplexInput& input, const GridOptions& grid_opts, int max_degree, const Common& common) {
  Manifest manifest("pht");
  const auto complex = input.load();
  manifest.input("complex", input.path);
  const int d = complex->dimension();
  const auto grid = grid_opts.make(d);
  auto& cfg = manifest.config();
  cfg["complex"] = input.path;
  grid_opts.record(cfg, d);
  cfg["max_degree"] = max_degree;

  const auto sample = pht::compute_pht(pht::Subcomplex::full(complex), grid, common.parallelism, max_degree);
  const fs::path out = common.out;
  manifest.output(out, "pht.json", pht::json::dump_pretty(pht::json::to_json(sample)));
  manifest.output(out, "barcodes.csv", pht_csv(sample));
  manifest.write(out);
  std::cout << "pht: " << grid.size() << " directions, degrees 0.." << sample.max_degree << ", wrote "
            << (out / "pht.json").string() << "\n";
  return kOk;
}

struct GlueArgs {
  ComplexInput complex;
  std::string cover;
  std::string mode = "total";
  std::string t_values;
  GridOptions grid;
  Common common;
};

void add_glue_options(CLI::App* app, GlueArgs& a) {
  a.complex.add_to(app);
  app->add_option("--cover", a.cover, "Cover file (JSON)")->required();
  app->add_option("--mode", a.mode, "fast or total")->check(CLI::IsMember({"fast", "total"}));
  app->add_option("--t-values", a.t_values, "Comma-separated t values (default: critical grid)");
  a.grid.add_to(app);
  a.common.add_to(app);
}

struct GlueRun {
  pht::ComplexPtr complex;
  pht::Cover cover;
  pht::DirectionGrid grid;
  pht::GluedCurves curves;
};

GlueRun glue(const GlueArgs& a, Manifest& manifest, bool with_e1) {
  GlueRun run;
  run.complex = a.complex.load();
  manifest.input("complex", a.complex.path);
  run.cover = pht::io::load_cover(a.cover, run.complex);
  manifest.input("cover", a.cover);
  const int d = run.complex->dimension();
  run.grid = a.grid.make(d);

  pht::GlueOptions opts;
  opts.mode = pht::parse_glue_mode(a.mode);
  opts.t_values = parse_t_values(a.t_values);
  opts.with_e1 = with_e1;
  opts.parallelism = a.common.parallelism;

  auto& cfg = manifest.config();
  cfg["complex"] = a.complex.path;
  cfg["cover"] = a.cover;
  cfg["mode"] = a.mode;
  a.grid.record(cfg, d);
  cfg["t_values"] = opts.t_values;

  run.curves = pht::glued_betti_curves(run.cover, run.grid, opts);
  if (run.curves.warning) std::cerr << "warning: " << *run.curves.warning << "\n";
  return run;
}

Json glue_summary(const GlueRun& run) {
  Json j;
  j["mode"] = pht::to_string(run.curves.mode);
  j["cover_size"] = run.cover.size();
  j["directions"] = run.grid.size();
  j["stalks"] = run.curves.stalks.size();
  j["agree"] = run.curves.agree;
  j["disagree"] = run.curves.disagree;
  j["warning"] = run.curves.warning ? Json(*run.curves.warning) : Json(nullptr);
  return j;
}

int run_glue(const GlueArgs& a) {
  Manifest manifest("glue run");
  const auto run = glue(a, manifest, true);
  std::string lines;
  for (const auto& s : run.curves.stalks) lines += pht::json::dump_line(pht::json::to_json(s));
  const fs::path out = a.common.out;
  manifest.output(out, "stalks.jsonl", lines);
  manifest.output(out, "summary.json", pht::json::dump_pretty(glue_summary(run)));
  manifest.write(out);
  std::cout << "glue (" << a.mode << "): " << run.curves.agree << " agree, " << run.curves.disagree
            << " disagree\n";
  return run.curves.disagree == 0 ? kOk : kMismatch;
}

int run_verify(const GlueArgs& a) {
  Manifest manifest("verify");
  const auto run = glue(a, manifest, false);
  Json mismatches = Json::array();
  for (const auto& s : run.curves.stalks) {
    const bool ok = run.curves.mode == pht::GlueMode::fast_h0 ? s.fast_agrees() : s.total_agrees();
    if (ok) continue;
    const auto& glued = run.curves.mode == pht::GlueMode::fast_h0 ? s.fast : s.total;
    Json m;
    m["direction"] = s.direction_index;
    m["t"] = s.t;
    m["glued"] = glued;
    m["direct"] = s.direct;
    std::cout << "mismatch direction=" << s.direction_index << " t=" << s.t << " glued=" << Json(glued).dump()
              << " direct=" << Json(s.direct).dump() << "\n";
    mismatches.push_back(std::move(m));
  }
  Json j = glue_summary(run);
  j["verdict"] = run.curves.disagree == 0 ? "agree" : "disagree";
  j["mismatches"] = std::move(mismatches);
  const fs::path out = a.common.out;
  manifest.output(out, "verify.json", pht::json::dump_pretty(j));
  manifest.write(out);
  std::cout << "verify (" << a.mode << "): " << run.curves.agree << "/" << run.curves.stalks.size()
            << " stalks agree\n";
  return run.curves.disagree == 0 ? kOk : kMismatch;
}

struct CheckArgs {
  ComplexInput complex;
  std::string cover;
  bool scan = false;
  std::size_t scan_directions = 64;
  std::size_t scan_t = 0;
  Common common;
};

int run_check(const CheckArgs& a) {
  Manifest manifest("glue check");
  const auto complex = a.complex.load();
  manifest.input("complex", a.complex.path);
  const auto cover = pht::io::load_cover(a.cover, complex);
  manifest.input("cover", a.cover);
  auto& cfg = manifest.config();
  cfg["complex"] = a.complex.path;
  cfg["cover"] = a.cover;
  cfg["scan"] = a.scan;
  cfg["scan_directions"] = a.scan_directions;
  cfg["scan_t"] = a.scan_t;
  std::optional<pht::ScanOptions> scan;
  if (a.scan) scan = pht::ScanOptions{a.scan_directions, a.scan_t, a.common.parallelism};
  const auto report = pht::convexity_check(cover, scan);
  const fs::path out = a.common.out;
  manifest.output(out, "convexity.json", pht::json::dump_pretty(pht::json::to_json(report)));
  manifest.write(out);
  std::cout << "convexity: " << (report.guaranteed() ? "guaranteed" : "unverified");
  if (report.scan) {
    std::cout << ", scan " << (report.scan->passed() ? "passed" : "failed") << " (" << report.scan->failures
              << "/" << report.scan->stalks << " stalks with higher cohomology)";
  }
  std::cout << "\n";
  return kOk;
}

struct SampleArgs {
  std::string manifold = "circle";
  double r = 1;
  double major = 2;
  std::size_t n = 300;
  double eps = 0.3;
  std::uint64_t seed = 0;
  std::size_t runs = 1;
  std::size_t directions = 32;
  int cap = 0;
  std::size_t density_resolution = 4096;
  std::size_t reference_resolution = 0;
  Common common;
};

int run_sample(const SampleArgs& a) {
  Manifest manifest("sample run");
  const auto kind = pht::parse_manifold_kind(a.manifold);
  pht::ManifoldSpec spec = kind == pht::ManifoldKind::circle   ? pht::ManifoldSpec::circle(a.r)
                           : kind == pht::ManifoldKind::sphere ? pht::ManifoldSpec::sphere(a.r)
                                                               : pht::ManifoldSpec::torus(a.major, a.r);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto& cfg = manifest.config();
  cfg["manifold"] = pht::json::to_json(spec);
  cfg["n"] = a.n;
  cfg["eps"] = a.eps;
  cfg["seed"] = a.seed;
  cfg["runs"] = a.runs;
  cfg["directions"] = a.directions;
  cfg["cap"] = a.cap;
  cfg["density_resolution"] = a.density_resolution;
  cfg["reference_resolution"] = a.reference_resolution;

  const int d = spec.ambient_dimension();
  const auto grid = pht::make_grid(d, a.directions);
  pht::ApproximationOptions opts;
  opts.cap = a.cap;
  opts.density_resolution = a.density_resolution;
  opts.reference_resolution = a.reference_resolution;
  opts.parallelism = a.common.parallelism;
  const auto reference = pht::reference_pht(spec, grid, opts);

  const fs::path out = a.common.out;
  std::string lines;
  std::size_t passing = 0, bounded = 0;
  for (std::size_t i = 0; i < a.runs; ++i) {
    const auto seed = a.seed + i;
    const auto rep = pht::approximation_report(spec, a.n, a.eps, seed, grid, opts, &reference);
    const bool pass = rep.density.ok && rep.homology_agrees;
    passing += pass;
    bounded += pass && rep.within_bound;
    lines += pht::json::dump_line(pht::json::to_json(rep));
    if (a.runs == 1) {
      manifest.output(out, "report.json", pht::json::dump_pretty(pht::json::to_json(rep)));
      manifest.output(out, "points.csv", pht::point_cloud_csv(pht::sample_points(spec, a.n, seed)));
      std::cout << "sample: density " << (rep.density.ok ? "ok" : "failed") << ", homology "
                << (rep.homology_agrees ? "agrees" : "differs") << ", surrogate " << rep.surrogate
                << " <= bound " << rep.bound << (rep.within_bound ? "" : " VIOLATED") << "\n";
    }
  }
  if (a.runs > 1) {
    Json s;
    s["runs"] = a.runs;
    s["passing"] = passing;
    s["pass_rate"] = static_cast<double>(passing) / static_cast<double>(a.runs);
    s["passing_within_bound"] = bounded;
    manifest.output(out, "reports.jsonl", lines);
    manifest.output(out, "summary.json", pht::json::dump_pretty(s));
    std::cout << "sample: " << passing << "/" << a.runs << " runs pass density and homology, " << bounded
              << " of them within the bound\n";
  }
  manifest.write(out);
  return kOk;
}

// PHT sample from a PHT JSON file, or computed from a complex file.
pht::PhtSample load_sample(const std::string& path, const GridOptions& grid, unsigned parallelism,
                           int dimension) {
  if (pht::io::format_from_path(path) == pht::io::Format::json) {
    const auto text = pht::io::read_file(path);
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw pht::io::ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    if (j.is_object() && j.contains("barcodes")) {
      try {
        return pht::json::pht_sample_from_json(j);
      } catch (const Json::exception& e) {
        throw pht::io::ParseError(std::string("malformed PHT sample: ") + e.what(), 0);
      }
    }
  }
  ComplexInput in{path, dimension};
  const auto complex = in.load();
  return pht::compute_pht(pht::Subcomplex::full(complex), grid.make(complex->dimension()), parallelism);
}

struct DistanceArgs {
  std::string a, b;
  int dimension = 0;
  GridOptions grid;
  Common common;
};

int run_distance(const DistanceArgs& a) {
  Manifest manifest("distance");
  const auto sa = load_sample(a.a, a.grid, a.common.parallelism, a.dimension);
  manifest.input("a", a.a);
  const auto sb = load_sample(a.b, a.grid, a.common.parallelism, a.dimension);
  manifest.input("b", a.b);
  auto& cfg = manifest.config();
  cfg["a"] = a.a;
  cfg["b"] = a.b;
  a.grid.record(cfg, sa.grid.dimension);
  double value = 0;
  try {
    value = pht::pht_distance_surrogate(sa, sb);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Json j;
  j["surrogate"] = value;
  j["directions"] = sa.grid.size();
  j["volume"] = pht::sphere_volume(sa.grid.dimension);
  const fs::path out = a.common.out;
  manifest.output(out, "distance.json", pht::json::dump_pretty(j));
  manifest.write(out);
  std::printf("%.17g\n", value);
  return kOk;
}

struct RenderArgs {
  std::string input;
  int dimension = 0;
  int degree = 0;
  int bins = 48;
  double t_min = pht::kInfinity;
  double t_max = -pht::kInfinity;
  std::string output;
  GridOptions grid;
  Common common;
};

int run_render(const RenderArgs& a) {
  Manifest manifest("render");
  const auto sample = load_sample(a.input, a.grid, a.common.parallelism, a.dimension);
  manifest.input("input", a.input);
  if (sample.grid.dimension != 2) throw UsageError("render needs a planar (d = 2) shape");
  auto& cfg = manifest.config();
  cfg["input"] = a.input;
  cfg["degree"] = a.degree;
  cfg["bins"] = a.bins;
  a.grid.record(cfg, 2);
  pht::HeatmapOptions opts;
  opts.radial_bins = a.bins;
  opts.t_min = a.t_min;
  opts.t_max = a.t_max;
  if (std::isfinite(a.t_min)) cfg["t_min"] = a.t_min;
  if (std::isfinite(a.t_max)) cfg["t_max"] = a.t_max;
  const std::string name = a.output.empty() ? "heatmap_H" + std::to_string(a.degree) + ".svg" : a.output;
  const fs::path out = a.common.out;
  manifest.output(out, name, pht::render_heatmap_svg(sample, a.degree, opts));
  manifest.write(out);
  std::cout << "render: wrote " << (out / name).string() << "\n";
  return kOk;
}

int run_fixtures(const Common& common, std::size_t level) {
  Manifest manifest("fixtures");
  manifest.config()["sphere_level"] = level;
  const fs::path out = common.out;
  const auto circle = pht::shapes::regular_polygon(8);
  manifest.output(out, "circle8.json", pht::io::write_complex_json(*circle));
  manifest.output(out, "halves.json", pht::io::write_cover_json(pht::shapes::polygon_halves(circle)));
  manifest.output(out, "circle8_edges.json",
                  pht::io::write_cover_json(pht::shapes::maximal_simplex_cover(circle)));
  const auto sphere = pht::shapes::octahedron_sphere(level);
  manifest.output(out, "sphere_octahedron.json", pht::io::write_complex_json(*sphere));
  manifest.output(out, "octants.json", pht::io::write_cover_json(pht::shapes::octant_cover(sphere)));
  manifest.output(out, "sphere_triangles.json",
                  pht::io::write_cover_json(pht::shapes::maximal_simplex_cover(sphere)));
  manifest.write(out);
  std::cout << "fixtures: wrote " << out.string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent homology transform toolkit", "phtool"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PHT_VERSION);

  auto add_config_flag = [](CLI::App* sub) {
    // Read before parsing; declared so it shows up in --help.
    sub->add_option("--config", "Key-value config file mirroring the flags");
  };

  ComplexInput pht_input;
  GridOptions pht_grid;
  Common pht_common;
  int pht_max_degree = -1;
  auto* pht_cmd = app.add_subcommand("pht", "Compute the PHT of a complex");
  pht_input.add_to(pht_cmd);
  pht_grid.add_to(pht_cmd);
  pht_common.add_to(pht_cmd);
  pht_cmd->add_option("--max-degree", pht_max_degree, "Highest degree (-1: ambient dimension)");
  add_config_flag(pht_cmd);

  GlueArgs glue_args;
  CheckArgs check_args;
  auto* glue_cmd = app.add_subcommand("glue", "Glue the PHT from a cover");
  glue_cmd->require_subcommand(1);
  auto* glue_run = glue_cmd->add_subcommand("run", "Glued Betti curves over a (v, t) grid");
  add_glue_options(glue_run, glue_args);
  add_config_flag(glue_run);
  auto* glue_check = glue_cmd->add_subcommand("check", "Convexity check of a cover");
  check_args.complex.add_to(glue_check);
  glue_check->add_option("--cover", check_args.cover, "Cover file (JSON)")->required();
  glue_check->add_flag("--scan", check_args.scan, "Run the empirical stalk scan");
  glue_check->add_option("--scan-directions", check_args.scan_directions, "Scan directions");
  glue_check->add_option("--scan-t", check_args.scan_t, "Scan t values per direction (0: critical grid)");
  check_args.common.add_to(glue_check);
  add_config_flag(glue_check);

  GlueArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check glued against direct Betti numbers");
  add_glue_options(verify_cmd, verify_args);
  add_config_flag(verify_cmd);

  SampleArgs sample_args;
  auto* sample_cmd = app.add_subcommand("sample", "Sampling approximation of a manifold");
  sample_cmd->require_subcommand(1);
  auto* sample_run = sample_cmd->add_subcommand("run", "Sample, build the Čech complex, compare PHTs");
  sample_run->add_option("--manifold", sample_args.manifold, "circle, sphere or torus")
      ->check(CLI::IsMember({"circle", "sphere", "torus"}));
  sample_run->add_option("--r", sample_args.r, "Radius (torus: minor radius)");
  sample_run->add_option("--R", sample_args.major, "Torus major radius");
  sample_run->add_option("--n", sample_args.n, "Number of sample points")->check(CLI::PositiveNumber);
  sample_run->add_option("--eps", sample_args.eps, "Ball radius epsilon");
  sample_run->add_option("--seed", sample_args.seed, "Sampling seed (first seed for --runs)");
  sample_run->add_option("--runs", sample_args.runs, "Number of consecutive seeds")->check(CLI::PositiveNumber);
  sample_run->add_option("--directions", sample_args.directions, "Grid directions")->check(CLI::PositiveNumber);
  sample_run->add_option("--cap", sample_args.cap, "Čech simplex dimension cap (0: intrinsic + 1)");
  sample_run->add_option("--density-resolution", sample_args.density_resolution, "Density reference points");
  sample_run->add_option("--reference-resolution", sample_args.reference_resolution,
                         "Reference complex resolution (0: default)");
  sample_args.common.add_to(sample_run);
  add_config_flag(sample_run);

  DistanceArgs dist_args;
  auto* dist_cmd = app.add_subcommand("distance", "PHT distance surrogate between two shapes");
  dist_cmd->add_option("--a", dist_args.a, "PHT JSON or complex file")->required();
  dist_cmd->add_option("--b", dist_args.b, "PHT JSON or complex file")->required();
  dist_cmd->add_option("--dimension", dist_args.dimension, "Ambient dimension for OFF input");
  dist_args.grid.add_to(dist_cmd);
  dist_args.common.add_to(dist_cmd);
  add_config_flag(dist_cmd);

  RenderArgs render_args;
  auto* render_cmd = app.add_subcommand("render", "Polar heatmap of a planar PHT");
  render_cmd->add_option("--input", render_args.input, "PHT JSON or complex file")->required();
  render_cmd->add_option("--dimension", render_args.dimension, "Ambient dimension for OFF input");
  render_cmd->add_option("--degree", render_args.degree, "Homology degree");
  render_cmd->add_option("--bins", render_args.bins, "Radial bins")->check(CLI::PositiveNumber);
  render_cmd->add_option("--t-min", render_args.t_min, "Inner radius t value");
  render_cmd->add_option("--t-max", render_args.t_max, "Outer radius t value");
  render_cmd->add_option("--output", render_args.output, "File name inside the output directory");
  render_args.grid.add_to(render_cmd);
  render_args.common.add_to(render_cmd);
  add_config_flag(render_cmd);

  Common fixture_common;
  std::size_t fixture_level = 4;
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Write the example complexes and covers");
  fixture_common.add_to(fixtures_cmd);
  fixtures_cmd->add_option("--sphere-level", fixture_level, "Octahedron subdivision level");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // Splice config-file flags in right after the subcommand words.
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] != "--config" && args[i].rfind("--config=", 0) != 0) continue;
      std::string path;
      std::size_t erase = 1;
      if (args[i] == "--config") {
        if (i + 1 >= args.size()) throw UsageError("--config needs a file");
        path = args[i + 1];
        erase = 2;
      } else {
        path = args[i].substr(9);
      }
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + erase));
      CLI::App* command = &app;
      std::size_t pos = 0;
      while (pos < args.size()) {
        auto* sub = command->get_subcommand_no_throw(args[pos]);
        if (sub == nullptr) break;
        command = sub;
        ++pos;
      }
      if (command == &app) throw UsageError("--config must follow a subcommand");
      const auto extra = read_config(path, command);
      args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos), extra.begin(), extra.end());
      break;
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const pht::io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }

  try {
    if (pht_cmd->parsed()) return run_pht(pht_input, pht_grid, pht_max_degree, pht_common);
    if (glue_run->parsed()) return run_glue(glue_args);
    if (glue_check->parsed()) return run_check(check_args);
    if (verify_cmd->parsed()) return run_verify(verify_args);
    if (sample_run->parsed()) return run_sample(sample_args);
    if (dist_cmd->parsed()) return run_distance(dist_args);
    if (render_cmd->parsed()) return run_render(render_args);
    if (fixtures_cmd->parsed()) return run_fixtures(fixture_common, fixture_level);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const pht::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const pht::io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const pht::io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kIo;
  } catch (const pht::ComplexError& e) {
    std::cerr << "invalid complex: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
