#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "msl/serialize.hpp"
#include "msl/simulate.hpp"

using namespace msl;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("seventeen significant digits round trip exactly") {
  for (double v : {1.0 / 3.0, 0.1, 1e-300, -2.5e17, 0.0, 123.456789012345678,
                   0.9999999999999999}) {
    REQUIRE(std::stod(fmt17(v)) == v);
  }
}

TEST_CASE("fit package survives a write/read cycle bit for bit") {
  FitPackage pkg;
  pkg.method = "msl";
  pkg.n = 30;
  pkg.m = 40;
  pkg.d = 2;
  pkg.lambda = 30.0 / 70.0;
  pkg.beta_raw = Vector(2);
  pkg.beta_raw << -1.0, -3.7219875341;
  pkg.beta_unit = pkg.beta_raw / pkg.beta_raw.norm();
  pkg.has_profile = true;
  pkg.profile_ll = -0.657281934728193;
  pkg.theta_knots = {-2.0, -0.5, 1.0 / 3.0};
  pkg.theta_values = {0.1, 0.45000000000000001, 0.9};
  pkg.cdf.thresholds = {-1.5, 0.25, 3.75};
  pkg.cdf.fc = {0.2, 0.71234567891234567, 1.0};
  pkg.cdf.gc = {0.5, 0.9, 1.0};
  pkg.auc = 0.84123456789012345;
  pkg.starts = 10;

  const std::string path = temp_path("msl_fit_roundtrip.json");
  write_fit_json(path, pkg);
  const FitPackage back = read_fit_json(path);
  std::remove(path.c_str());

  REQUIRE(back.method == "msl");
  REQUIRE(back.lambda == pkg.lambda);
  REQUIRE(back.beta_raw == pkg.beta_raw);
  REQUIRE(back.beta_unit == pkg.beta_unit);
  REQUIRE(back.profile_ll == pkg.profile_ll);
  REQUIRE(back.theta_knots == pkg.theta_knots);
  REQUIRE(back.theta_values == pkg.theta_values);
  REQUIRE(back.cdf.thresholds == pkg.cdf.thresholds);
  REQUIRE(back.cdf.fc == pkg.cdf.fc);
  REQUIRE(back.cdf.gc == pkg.cdf.gc);
  REQUIRE(back.auc == pkg.auc);
}

TEST_CASE("roc csv carries the auc header and the grid") {
  RocCurve curve;
  curve.s = {0.0, 0.5, 1.0};
  curve.roc = {0.0, 0.75, 1.0};
  curve.auc = 0.625;
  const std::string path = temp_path("msl_roc.csv");
  write_roc_csv(path, curve);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "# auc = 0.625");
  std::getline(in, line);
  REQUIRE(line == "s,roc");
  std::getline(in, line);
  REQUIRE(line == "0,0");
  in.close();
  std::remove(path.c_str());
}

TEST_CASE("config defaults") {
  const FitConfig cfg;
  REQUIRE(cfg.n_monte_carlo == 10000);
  REQUIRE(cfg.kernel == KernelFamily::Epanechnikov);
  REQUIRE(cfg.bandwidth_multiplier == 1.0);
  REQUIRE(cfg.multistarts == 5);
  REQUIRE(cfg.nm_tol == 1e-6);
  REQUIRE(cfg.b_max == 50.0);
  REQUIRE(cfg.roc_grid_size == 1001);
}

TEST_CASE("config parsing applies known keys and rejects unknown ones") {
  const std::string path = temp_path("msl_config.json");
  {
    std::ofstream out(path);
    out << R"({"kernel": "gaussian", "n_monte_carlo": 1234, "seed": 99,
               "stream": 3, "bandwidth_multiplier": 1.5, "multistarts": 2})";
  }
  const FitConfig cfg = fit_config_from_json(path);
  REQUIRE(cfg.kernel == KernelFamily::Gaussian);
  REQUIRE(cfg.n_monte_carlo == 1234);
  REQUIRE(cfg.seed.seed == 99);
  REQUIRE(cfg.seed.stream == 3);
  REQUIRE(cfg.bandwidth_multiplier == 1.5);
  REQUIRE(cfg.multistarts == 2);
  std::remove(path.c_str());

  const std::string bad = temp_path("msl_config_bad.json");
  {
    std::ofstream out(bad);
    out << R"({"kernal": "gaussian"})";
  }
  REQUIRE_THROWS_AS(fit_config_from_json(bad), Error);
  std::remove(bad.c_str());
}

TEST_CASE("labeled csv writer emits a parseable file") {
  Rng rng(121, 0);
  auto [X, Y] = generate_ex1(1.0, 5, 4, rng);
  const std::string path = temp_path("msl_sim.csv");
  write_labeled_csv(path, X, Y);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  REQUIRE(header == "x1,x2,label");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  REQUIRE(rows == 9);
  in.close();
  std::remove(path.c_str());
}
