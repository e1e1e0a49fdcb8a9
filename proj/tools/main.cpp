// Command-line front end: forward data generation, aperture restriction and
// noise, full-aperture recovery, indicator imaging and file comparison.
//
// Exit codes: 0 success, 2 configuration or validation error, 3 numerical
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>

#include "aperture/errors.hpp"
#include "aperture/forward.hpp"
#include "aperture/imaging.hpp"
#include "aperture/io.hpp"
#include "aperture/msr.hpp"
#include "aperture/recovery.hpp"

namespace fs = std::filesystem;
using namespace aperture;

namespace {

struct RunConfig {
  std::string obstacle = "kite";
  double k = 6.0;
  int m = 150;
  int nq = 256;
  std::string aperture = "(0,pi/2)";
  double delta = 0.05;
  std::uint64_t seed = 7;
  std::string method = "mgf";
  int t = 5;
  double alpha = 1e-2;
  double radius = 5.0;
  std::string grid = "121x121";
  std::string bounds = "-6,6,-6,6";
  std::string indicator = "dsm";
  std::string out = "out";
  std::string config_file;
};

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--obstacle", cfg.obstacle, "Scatterer curve: kite|peanut|circle");
  cmd->add_option("--k", cfg.k, "Wavenumber");
  cmd->add_option("--m", cfg.m, "Half the number of directions (grid has 2m)");
  cmd->add_option("--nq", cfg.nq, "Boundary quadrature nodes");
  cmd->add_option("--aperture", cfg.aperture,
                  "Observation aperture: fraction in (0,1], l=N, or (0,pi/2)|(0,2pi/3)|(0,pi)");
  cmd->add_option("--delta", cfg.delta, "Relative noise level");
  cmd->add_option("--seed", cfg.seed, "Noise generator seed");
  cmd->add_option("--method", cfg.method, "Recovery method: mgf|mslp");
  cmd->add_option("--t", cfg.t, "New directions per side per recovery step");
  cmd->add_option("--alpha", cfg.alpha, "Tikhonov regularization parameter");
  cmd->add_option("--radius", cfg.radius, "Artificial boundary radius");
  cmd->add_option("--grid", cfg.grid, "Imaging grid NxM");
  cmd->add_option("--bounds", cfg.bounds, "Imaging bounds x_min,x_max,y_min,y_max");
  cmd->add_option("--indicator", cfg.indicator, "Imaging indicator: dsm|fm");
  cmd->add_option("--out", cfg.out, "Output directory");
  cmd->add_option("--config", cfg.config_file, "Flat key = value configuration file");
}

long long parse_integer(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' has a non-integer value: " + value);
  }
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' has a non-numeric value: " + value);
  }
}

// Every config key mirrors a long flag; a flag given on the command line
// wins over the file. Unknown keys fail loudly.
void apply_config_file(const CLI::App* cmd, RunConfig& cfg) {
  if (cfg.config_file.empty()) return;
  const auto kv = parse_flat_config(cfg.config_file);
  for (const auto& [key, value] : kv) {
    const CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config")
      throw ConfigError("unknown config key: " + key);
    if (opt->count() > 0) continue;  // command line overrides the file
    if (key == "obstacle") cfg.obstacle = value;
    else if (key == "k") cfg.k = parse_real(key, value);
    else if (key == "m") cfg.m = static_cast<int>(parse_integer(key, value));
    else if (key == "nq") cfg.nq = static_cast<int>(parse_integer(key, value));
    else if (key == "aperture") cfg.aperture = value;
    else if (key == "delta") cfg.delta = parse_real(key, value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_integer(key, value));
    else if (key == "method") cfg.method = value;
    else if (key == "t") cfg.t = static_cast<int>(parse_integer(key, value));
    else if (key == "alpha") cfg.alpha = parse_real(key, value);
    else if (key == "radius") cfg.radius = parse_real(key, value);
    else if (key == "grid") cfg.grid = value;
    else if (key == "bounds") cfg.bounds = value;
    else if (key == "indicator") cfg.indicator = value;
    else if (key == "out") cfg.out = value;
  }
}

int parse_aperture(const std::string& s, int two_m) {
  int l = 0;
  if (s == "(0,pi/2)")
    l = static_cast<int>(std::lround(two_m / 4.0));
  else if (s == "(0,2pi/3)")
    l = static_cast<int>(std::lround(two_m / 3.0));
  else if (s == "(0,pi)")
    l = static_cast<int>(std::lround(two_m / 2.0));
  else if (s.rfind("l=", 0) == 0) {
    try {
      l = std::stoi(s.substr(2));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse aperture column count: " + s);
    }
  } else {
    double frac = 0.0;
    try {
      std::size_t pos = 0;
      frac = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse aperture: " + s);
    }
    if (!(frac > 0.0) || frac > 1.0)
      throw ConfigError("aperture fraction must lie in (0, 1]");
    l = static_cast<int>(std::lround(frac * two_m));
  }
  if (l < 1 || l >= two_m)
    throw ConfigError("aperture must leave 1 <= l < 2m known columns, got l=" +
                      std::to_string(l));
  return l;
}

ImagingGrid make_grid(const RunConfig& cfg) {
  int nx = 0, ny = 0;
  if (std::sscanf(cfg.grid.c_str(), "%dx%d", &nx, &ny) != 2)
    throw ConfigError("cannot parse grid spec: " + cfg.grid);
  double b[4];
  if (std::sscanf(cfg.bounds.c_str(), "%lf,%lf,%lf,%lf", &b[0], &b[1], &b[2], &b[3]) != 4)
    throw ConfigError("cannot parse bounds: " + cfg.bounds);
  return ImagingGrid::make(b[0], b[1], b[2], b[3], nx, ny);
}

fs::path ensure_out_dir(const RunConfig& cfg) {
  const fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw ConfigError("cannot create output directory: " + dir.string());
  return dir;
}

void validate_positive(const RunConfig& cfg) {
  if (!(cfg.k > 0)) throw ConfigError("k must be positive");
  if (cfg.m < 1) throw ConfigError("m must be >= 1");
  if (cfg.t < 1) throw ConfigError("t must be >= 1");
  if (!(cfg.alpha > 0)) throw ConfigError("alpha must be positive");
  if (!(cfg.radius > 0)) throw ConfigError("radius must be positive");
  if (cfg.delta < 0) throw ConfigError("delta must be >= 0");
}

int cmd_forward(const RunConfig& cfg) {
  validate_positive(cfg);
  const fs::path dir = ensure_out_dir(cfg);
  const ScatteringProblem problem{cfg.k, ParametricCurve::from_name(cfg.obstacle)};
  const MsrMatrix f = assemble_msr(problem, cfg.m, cfg.nq);
  write_msr(dir / "msr_full.json", f, {{"nq", std::to_string(cfg.nq)}});
  std::cout << "wrote " << (dir / "msr_full.json").string() << "\n";
  return 0;
}

int cmd_degrade(const RunConfig& cfg, const std::string& input) {
  validate_positive(cfg);
  const fs::path dir = ensure_out_dir(cfg);
  const MsrMatrix full = read_msr(input);
  const int l = parse_aperture(cfg.aperture, full.size());
  const MsrMatrix noisy =
      add_noise(restrict_columns(full, l), {cfg.delta, cfg.seed});
  write_msr(dir / "msr_limited.json", noisy,
            {{"l", std::to_string(l)},
             {"delta", std::to_string(cfg.delta)},
             {"seed", std::to_string(cfg.seed)},
             {"noise_norm", "spectral"}});
  std::cout << "wrote " << (dir / "msr_limited.json").string() << "\n";
  return 0;
}

nlohmann::json provenance_summary(const MsrMatrix& f) {
  nlohmann::json counts;
  for (const Provenance p : {Provenance::measured, Provenance::symmetry, Provenance::mgf,
                             Provenance::mslp, Provenance::unknown}) {
    int c = 0;
    for (int i = 0; i < f.size(); ++i)
      for (int j = 0; j < f.size(); ++j)
        if (f.provenance(i, j) == p) ++c;
    counts[std::string(to_string(p))] = c;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < f.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < f.size(); ++j) row.push_back(std::string(to_string(f.provenance(i, j))));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"format", "msr-provenance-v1"},
                        {"m", f.grid().m},
                        {"counts", std::move(counts)},
                        {"provenance", std::move(rows)}};
}

int cmd_recover(const RunConfig& cfg, const std::string& input) {
  validate_positive(cfg);
  const fs::path dir = ensure_out_dir(cfg);
  const MsrMatrix limited = read_msr(input);
  const ArtificialBoundary bnd = ArtificialBoundary::disc(cfg.radius, cfg.nq);
  if (limited.curve == "kite" || limited.curve == "peanut" || limited.curve == "circle")
    bnd.require_contains(ParametricCurve::from_name(limited.curve));
  const RecoverySchedule schedule{recovery_method_from_string(cfg.method), cfg.t};
  const MsrMatrix recovered = dr_msr(limited, schedule, bnd, cfg.alpha);
  write_msr(dir / "msr_recovered.json", recovered,
            {{"method", cfg.method},
             {"t", std::to_string(cfg.t)},
             {"alpha", std::to_string(cfg.alpha)},
             {"radius", std::to_string(cfg.radius)},
             {"nq", std::to_string(cfg.nq)}});
  atomic_write_text(dir / "provenance.json", provenance_summary(recovered).dump() + "\n");
  std::cout << "wrote " << (dir / "msr_recovered.json").string() << " and provenance.json\n";
  return 0;
}

int cmd_image(const RunConfig& cfg, const std::string& input, const std::string& prefix) {
  validate_positive(cfg);
  const fs::path dir = ensure_out_dir(cfg);
  const MsrMatrix f = read_msr(input);
  ImagingGrid grid = make_grid(cfg);

  double floor_rel = 0.0;
  if (cfg.indicator == "dsm") {
    grid = f.fully_known() ? dsm_full(f, std::move(grid)) : dsm_limited(f, std::move(grid));
  } else if (cfg.indicator == "fm") {
    if (!f.fully_known())
      throw ConfigError("fm requires fully known data; recover the matrix first");
    const FmOptions opt;
    floor_rel = opt.eigenvalue_floor_rel;
    grid = fm_indicator(f, std::move(grid), opt);
  } else {
    throw ConfigError("unknown indicator: " + cfg.indicator + " (expected dsm|fm)");
  }

  write_grid_csv(dir / (prefix + "_raw.csv"), grid);
  const ImagingGrid norm = normalize(std::move(grid));
  write_grid_csv(dir / (prefix + ".csv"), norm);
  write_grid_pgm(dir / (prefix + ".pgm"), norm);
  nlohmann::json meta{{"indicator", cfg.indicator},
                      {"k", f.wavenumber()},
                      {"m", f.grid().m},
                      {"source", input}};
  if (cfg.indicator == "fm") meta["eigenvalue_floor_rel"] = floor_rel;
  atomic_write_text(dir / (prefix + "_meta.json"), meta.dump() + "\n");
  std::cout << "wrote " << (dir / (prefix + ".csv")).string() << " (+raw, pgm, meta)\n";
  return 0;
}

Mask region_mask(const MsrMatrix& a, const MsrMatrix& b, const std::string& region) {
  const int n = a.size();
  Mask mask = Mask::Constant(n, n, false);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Provenance p = b.provenance(i, j);
      if (region == "full")
        mask(i, j) = true;
      else if (region == "known")
        mask(i, j) = a.known(i, j) && b.known(i, j);
      else if (region == "recovered")
        mask(i, j) = p == Provenance::mgf || p == Provenance::mslp;
      else
        mask(i, j) = p == provenance_from_string(region);
    }
  return mask;
}

int cmd_compare(const std::string& file_a, const std::string& file_b,
                const std::string& region) {
  const bool grids = fs::path(file_a).extension() == ".csv";
  if (grids) {
    const ImagingGrid a = read_grid_csv(file_a);
    const ImagingGrid b = read_grid_csv(file_b);
    if (a.n_x != b.n_x || a.n_y != b.n_y)
      throw ConfigError("grid shapes differ");
    double max_abs = 0.0, num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      const double d = std::abs(a.values[i] - b.values[i]);
      max_abs = std::max(max_abs, d);
      num += d * d;
      den += a.values[i] * a.values[i];
    }
    const auto [ax, ay] = a.argmax();
    const auto [bx, by] = b.argmax();
    const double dist = std::hypot(a.x(ax) - b.x(bx), a.y(ay) - b.y(by));
    std::cout << "type = grid\n"
              << "max_abs = " << max_abs << "\n"
              << "rel_fro = " << (den > 0 ? std::sqrt(num / den) : std::sqrt(num)) << "\n"
              << "argmax_a = (" << a.x(ax) << ", " << a.y(ay) << ")\n"
              << "argmax_b = (" << b.x(bx) << ", " << b.y(by) << ")\n"
              << "argmax_distance = " << dist << "\n";
    return 0;
  }
  const MsrMatrix a = read_msr(file_a);
  const MsrMatrix b = read_msr(file_b);
  const ErrorMetrics m = error_metrics(a, b, region_mask(a, b, region));
  std::cout << "type = msr\n"
            << "region = " << region << "\n"
            << "max_abs = " << m.max_abs << "\n"
            << "rel_fro = " << m.rel_fro << "\n";
  return 0;
}

int cmd_demo(const RunConfig& cfg) {
  validate_positive(cfg);
  const fs::path dir = ensure_out_dir(cfg);
  std::cout << "[1/6] forward data (" << cfg.obstacle << ", k=" << cfg.k
            << ", 2m=" << 2 * cfg.m << ", nq=" << cfg.nq << ")\n";
  cmd_forward(cfg);
  std::cout << "[2/6] degrade to aperture " << cfg.aperture << ", delta=" << cfg.delta << "\n";
  cmd_degrade(cfg, (dir / "msr_full.json").string());
  std::cout << "[3/6] recover (" << cfg.method << ", t=" << cfg.t << ", alpha=" << cfg.alpha
            << ")\n";
  cmd_recover(cfg, (dir / "msr_limited.json").string());
  std::cout << "[4/6] imaging on limited data\n";
  RunConfig dsm = cfg;
  dsm.indicator = "dsm";
  cmd_image(dsm, (dir / "msr_limited.json").string(), "dsm_limited");
  std::cout << "[5/6] imaging on recovered data\n";
  cmd_image(dsm, (dir / "msr_recovered.json").string(), "dsm_recovered");
  RunConfig fm = cfg;
  fm.indicator = "fm";
  cmd_image(fm, (dir / "msr_recovered.json").string(), "fm_recovered");
  std::cout << "[6/6] recovered vs exact data\n";
  return cmd_compare((dir / "msr_full.json").string(), (dir / "msr_recovered.json").string(),
                     "full");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D acoustic far-field toolkit: multi-static data generation, "
               "limited-aperture completion and sampling-method imaging"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string input, input_b, region = "known";

  CLI::App* forward = app.add_subcommand("forward", "Generate the exact full MSR matrix");
  add_common_options(forward, cfg);

  CLI::App* degrade =
      app.add_subcommand("degrade", "Restrict to a limited aperture and add noise");
  degrade->add_option("input", input, "Full MSR file")->required();
  add_common_options(degrade, cfg);

  CLI::App* recover = app.add_subcommand("recover", "Complete a limited-aperture MSR");
  recover->add_option("input", input, "Limited MSR file")->required();
  add_common_options(recover, cfg);

  CLI::App* image = app.add_subcommand("image", "Evaluate an imaging indicator");
  image->add_option("input", input, "MSR file")->required();
  add_common_options(image, cfg);

  CLI::App* compare = app.add_subcommand("compare", "Compare two MSR or grid files");
  compare->add_option("file_a", input, "First file")->required();
  compare->add_option("file_b", input_b, "Second file")->required();
  compare->add_option("--region", region,
                      "Entry region: full|known|measured|symmetry|mgf|mslp|recovered");

  CLI::App* demo = app.add_subcommand(
      "demo", "Full pipeline: forward, degrade, recover, image, compare");
  add_common_options(demo, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    for (const CLI::App* cmd : {forward, degrade, recover, image, demo})
      if (cmd->parsed()) apply_config_file(cmd, cfg);
    if (forward->parsed()) return cmd_forward(cfg);
    if (degrade->parsed()) return cmd_degrade(cfg, input);
    if (recover->parsed()) return cmd_recover(cfg, input);
    if (image->parsed()) return cmd_image(cfg, input, cfg.indicator);
    if (compare->parsed()) return cmd_compare(input, input_b, region);
    if (demo->parsed()) return cmd_demo(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
