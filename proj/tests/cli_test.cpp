// Integration tests that drive the installed CLI binary through a small
// end-to-end pipeline and check exit codes, determinism and file formats.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "aperture/io.hpp"
#include "aperture/msr.hpp"

namespace fs = std::filesystem;
using namespace aperture;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  if (ok) {
    std::cout << "  ok: " << what << "\n";
  } else {
    ++failures;
    std::cout << "  FAILED: " << what << "\n";
  }
}

int run(const std::string& args) {
  const std::string cmd = std::string(APERTURE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "aperture_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string base = " --m 8 --nq 64 --grid 21x21 ";

  std::cout << "pipeline:\n";
  check(run("forward --obstacle kite" + base + "--out " + (dir / "a").string()) == 0,
        "forward exits 0");
  const fs::path full = dir / "a" / "msr_full.json";
  check(fs::exists(full), "forward writes msr_full.json");

  check(run("degrade " + full.string() + base + "--aperture l=4 --delta 0.05 --seed 11 --out " +
            (dir / "a").string()) == 0,
        "degrade exits 0");
  const fs::path limited = dir / "a" / "msr_limited.json";
  MetaMap meta;
  const MsrMatrix lim = read_msr(limited, &meta);
  check(lim.known_column_prefix() == 4, "degrade keeps l=4 columns");
  check(meta.at("l") == "4" && meta.at("seed") == "11", "degrade records l and seed");

  // noise scaling is verifiable from the files alone
  {
    const MsrMatrix exact = read_msr(full);
    const Eigen::MatrixXcd block = exact.entries().leftCols(4);
    const Eigen::MatrixXcd noisy_block = lim.entries().leftCols(4);
    const double ratio = spectral_norm(noisy_block - block) / spectral_norm(block);
    check(std::abs(ratio - 0.05) <= 1e-12, "file-level perturbation norm equals delta");
  }

  check(run("recover " + limited.string() + base + "--method mslp --t 2 --out " +
            (dir / "a").string()) == 0,
        "recover exits 0");
  const fs::path recovered = dir / "a" / "msr_recovered.json";
  check(read_msr(recovered).fully_known(), "recovered matrix is fully known");
  check(fs::exists(dir / "a" / "provenance.json"), "recover writes the provenance map");
  {
    std::ifstream in(dir / "a" / "provenance.json");
    nlohmann::json prov;
    in >> prov;
    const auto& counts = prov.at("counts");
    const int total = counts.value("measured", 0) + counts.value("symmetry", 0) +
                      counts.value("mgf", 0) + counts.value("mslp", 0);
    check(total == 16 * 16 && counts.value("unknown", -1) == 0,
          "provenance map partitions every entry");
  }

  check(run("image " + recovered.string() + base + "--indicator dsm --out " +
            (dir / "a").string()) == 0,
        "image dsm exits 0");
  check(run("image " + recovered.string() + base + "--indicator fm --out " +
            (dir / "a").string()) == 0,
        "image fm exits 0");
  check(fs::exists(dir / "a" / "dsm.csv") && fs::exists(dir / "a" / "dsm.pgm") &&
            fs::exists(dir / "a" / "dsm_raw.csv"),
        "image writes raw, normalized and pgm variants");

  check(run("compare " + full.string() + " " + recovered.string()) == 0, "compare exits 0");
  check(run("compare " + (dir / "a" / "dsm.csv").string() + " " +
            (dir / "a" / "dsm.csv").string()) == 0,
        "grid compare exits 0");

  std::cout << "determinism:\n";
  check(run("forward --obstacle kite" + base + "--out " + (dir / "b").string()) == 0,
        "second forward run exits 0");
  check(slurp(full) == slurp(dir / "b" / "msr_full.json"),
        "forward output is byte identical across runs");
  check(run("degrade " + full.string() + base +
            "--aperture l=4 --delta 0.05 --seed 11 --out " + (dir / "b").string()) == 0,
        "second degrade run exits 0");
  check(slurp(limited) == slurp(dir / "b" / "msr_limited.json"),
        "degrade output is byte identical for a fixed seed");

  std::cout << "thread-count independence:\n";
  {
    const std::string img = " image " + recovered.string() + base + "--indicator dsm --out ";
    const std::string one = "APERTURE_COMPLETE_THREADS=1 " + std::string(APERTURE_CLI_PATH) +
                            img + (dir / "t1").string() + " > /dev/null 2>&1";
    const std::string four = "APERTURE_COMPLETE_THREADS=4 " + std::string(APERTURE_CLI_PATH) +
                             img + (dir / "t4").string() + " > /dev/null 2>&1";
    check(WEXITSTATUS(std::system(one.c_str())) == 0 &&
              WEXITSTATUS(std::system(four.c_str())) == 0,
          "image runs under explicit thread caps");
    check(slurp(dir / "t1" / "dsm_raw.csv") == slurp(dir / "t4" / "dsm_raw.csv"),
          "grid values do not depend on the worker count");
  }

  std::cout << "aperture forms:\n";
  check(run("degrade " + full.string() + base + "--aperture 0.5 --delta 0 --out " +
            (dir / "c").string()) == 0,
        "fraction aperture accepted");
  check(read_msr(dir / "c" / "msr_limited.json").known_column_prefix() == 8,
        "fraction 0.5 of 16 directions keeps 8 columns");
  check(run("degrade " + full.string() + base + "--aperture \"(0,pi)\" --delta 0 --out " +
            (dir / "c").string()) == 0,
        "angular keyword accepted");
  check(read_msr(dir / "c" / "msr_limited.json").known_column_prefix() == 8,
        "aperture (0,pi) keeps half the columns");

  std::cout << "config file:\n";
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "obstacle = peanut\nm = 8\nnq = 64\n";
  }
  check(run("forward --config " + (dir / "run.cfg").string() + " --out " +
            (dir / "d").string()) == 0,
        "config file accepted");
  check(read_msr(dir / "d" / "msr_full.json").curve == "peanut",
        "config file sets the obstacle");
  check(run("forward --config " + (dir / "run.cfg").string() + " --obstacle kite --out " +
            (dir / "e").string()) == 0,
        "flag overrides config file");
  check(read_msr(dir / "e" / "msr_full.json").curve == "kite",
        "flag value wins over config value");
  {
    std::ofstream cfg(dir / "bad.cfg");
    cfg << "obstacle = kite\nwobble = 3\n";
  }
  check(run("forward --config " + (dir / "bad.cfg").string() + " --out " +
            (dir / "f").string()) == 2,
        "unknown config key exits 2");

  std::cout << "validation exit codes:\n";
  check(run("forward --obstacle square" + base + "--out " + (dir / "g").string()) == 2,
        "unknown obstacle exits 2");
  check(run("degrade " + full.string() + base + "--aperture l=16 --out " +
            (dir / "g").string()) == 2,
        "aperture l = 2m exits 2");
  check(run("degrade " + full.string() + base + "--aperture 1.7 --out " +
            (dir / "g").string()) == 2,
        "fraction above 1 exits 2");
  check(run("image " + limited.string() + base + "--indicator fm --out " +
            (dir / "g").string()) == 2,
        "fm on masked data exits 2");
  check(run("image " + recovered.string() + base + "--indicator blur --out " +
            (dir / "g").string()) == 2,
        "unknown indicator exits 2");
  check(run("compare " + full.string() + " missing.json") == 2, "missing input exits 2");
  check(run("recover " + full.string() + base + "--out " + (dir / "g").string()) == 2,
        "recover on full data exits 2");

  std::cout << (failures == 0 ? "all cli checks passed\n" : "cli checks FAILED\n");
  return failures == 0 ? 0 : 1;
}
