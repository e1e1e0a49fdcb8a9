#include "aperture/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "aperture/errors.hpp"

namespace aperture {
namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write file: " + tmp.string());
    out << content;
    if (!out) throw ConfigError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_msr(const std::filesystem::path& path, const MsrMatrix& msr, const MetaMap& meta) {
  const int n = msr.size();
  json entries = json::array();
  json mask = json::array();
  json prov = json::array();
  for (int i = 0; i < n; ++i) {
    json er = json::array(), mr = json::array(), pr = json::array();
    for (int j = 0; j < n; ++j) {
      const auto v = msr.value(i, j);
      er.push_back(json::array({v.real(), v.imag()}));
      mr.push_back(msr.known(i, j));
      pr.push_back(std::string(to_string(msr.provenance(i, j))));
    }
    entries.push_back(std::move(er));
    mask.push_back(std::move(mr));
    prov.push_back(std::move(pr));
  }
  json doc{{"format", "msr-v1"},
           {"k", msr.wavenumber()},
           {"m", msr.grid().m},
           {"curve", msr.curve},
           {"normalization", "phi-to-plane-wave"},
           {"entries", std::move(entries)},
           {"mask", std::move(mask)},
           {"provenance", std::move(prov)},
           {"meta", json(meta)}};
  atomic_write_text(path, doc.dump() + "\n");
}

MsrMatrix read_msr(const std::filesystem::path& path, MetaMap* meta) {
  const json doc = load_json(path);
  try {
    if (doc.at("format").get<std::string>() != "msr-v1")
      throw ConfigError("unsupported MSR format in " + path.string());
    const int m = doc.at("m").get<int>();
    const double k = doc.at("k").get<double>();
    MsrMatrix msr(DirectionGrid(m), k);
    msr.curve = doc.at("curve").get<std::string>();
    const auto& entries = doc.at("entries");
    const auto& mask = doc.at("mask");
    const auto& prov = doc.at("provenance");
    const int n = 2 * m;
    if (static_cast<int>(entries.size()) != n)
      throw ConfigError("entry row count mismatch in " + path.string());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto& e = entries.at(i).at(j);
        const bool known = mask.at(i).at(j).get<bool>();
        const Provenance p =
            provenance_from_string(prov.at(i).at(j).get<std::string>());
        if (known != (p != Provenance::unknown))
          throw ConfigError("mask/provenance disagreement in " + path.string());
        const std::complex<double> v(e.at(0).get<double>(), e.at(1).get<double>());
        if (known && (!std::isfinite(v.real()) || !std::isfinite(v.imag())))
          throw ConfigError("non-finite known entry in " + path.string());
        msr.set(i, j, v, p);
      }
    }
    if (meta) {
      meta->clear();
      for (const auto& [key, value] : doc.at("meta").items())
        (*meta)[key] = value.get<std::string>();
    }
    return msr;
  } catch (const json::exception& e) {
    throw ConfigError("malformed MSR file " + path.string() + ": " + e.what());
  }
}

void write_grid_csv(const std::filesystem::path& path, const ImagingGrid& grid) {
  std::string out = "x,y,value\n";
  for (int iy = 0; iy < grid.n_y; ++iy)
    for (int ix = 0; ix < grid.n_x; ++ix)
      out += format_double(grid.x(ix)) + "," + format_double(grid.y(iy)) + "," +
             format_double(grid.values[grid.index(ix, iy)]) + "\n";
  atomic_write_text(path, out);
}

ImagingGrid read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "x,y,value")
    throw ConfigError("missing grid CSV header in " + path.string());
  std::vector<double> xs, ys, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x, y, v;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &v) != 3)
      throw ConfigError("malformed grid CSV row in " + path.string());
    xs.push_back(x);
    ys.push_back(y);
    vs.push_back(v);
  }
  if (vs.empty()) throw ConfigError("empty grid CSV: " + path.string());
  int n_x = 1;
  while (n_x < static_cast<int>(ys.size()) && ys[n_x] == ys[0]) ++n_x;
  const int n_y = static_cast<int>(vs.size()) / n_x;
  if (n_x * n_y != static_cast<int>(vs.size()))
    throw ConfigError("grid CSV is not rectangular: " + path.string());
  ImagingGrid g = ImagingGrid::make(xs.front(), xs[n_x - 1], ys.front(), ys.back(), n_x, n_y);
  g.values = std::move(vs);
  return g;
}

std::map<std::string, std::string> parse_flat_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + " is not key = value in " +
                        path.string());
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty config key at line " + std::to_string(lineno));
    out[key] = value;
  }
  return out;
}

void write_grid_pgm(const std::filesystem::path& path, const ImagingGrid& grid) {
  const double m = grid.max_value();
  std::ostringstream out;
  out << "P2\n" << grid.n_x << " " << grid.n_y << "\n255\n";
  for (int iy = grid.n_y - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.n_x; ++ix) {
      const double v = m > 0.0 ? grid.values[grid.index(ix, iy)] / m : 0.0;
      out << static_cast<int>(std::lround(255.0 * v));
      out << (ix + 1 == grid.n_x ? '\n' : ' ');
    }
  }
  atomic_write_text(path, out.str());
}

}  // namespace aperture
