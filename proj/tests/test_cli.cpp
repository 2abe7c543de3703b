#include <doctest.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sys/wait.h>
#include <unistd.h>

#include "config.hpp"
#include "oracles.hpp"
#include "report.hpp"
#include "walks.hpp"

using namespace walkspectra;
using namespace walkspectra::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("walkspectra_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string &name, const std::string &text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

int run_cli(const std::string &args) {
  const std::string cmd = std::string(WALKSPECTRA_CLI) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

void check_same_steps(const PeriodicOperator &a, const PeriodicOperator &b) {
  REQUIRE(a.steps().size() == b.steps().size());
  for (const auto &[x, c] : a.steps()) CHECK((c - b.coin(x)).cwiseAbs().maxCoeff() < 1e-15);
}

}  // namespace

TEST_CASE("presets match the documented matrices") {
  check_same_steps(preset_operator("hadamard-1d"), walks::hadamard());
  check_same_steps(preset_operator("grover-2d"), walks::grover());
  check_same_steps(preset_operator("constant-coin"), walks::constant_coin());
  check_same_steps(preset_operator("pure-shift"), walks::pure_shift());
  CHECK(find_preset("hadamard-1d").grid_n == 256);
  CHECK(find_preset("grover-2d").horizon == 1024);
  CHECK_THROWS_AS(find_preset("nope"), ConfigError);
}

TEST_CASE("preset configs fill defaults") {
  const auto cfg = parse_config_text(R"({"version": 1, "preset": "grover-2d", "grid_n": 32})");
  CHECK(cfg.dimension == 2);
  CHECK(cfg.coin_dim == 4);
  CHECK(cfg.grid_n == 32);
  CHECK(cfg.horizon == 1024);
  CHECK(probability(cfg.initial_state, LatticePoint(2)) == 1.0);
}

TEST_CASE("explicit configs round trip through emit_config") {
  const std::string text = R"({
    "version": 1, "dimension": 1, "coin_dim": 2,
    "steps": [
      {"offset": [-1], "matrix": [[[0.7071067811865476, 0], [0.7071067811865476, 0]], [[0, 0], [0, 0]]]},
      {"offset": [1], "matrix": [[[0, 0], [0, 0]], [[0.7071067811865476, 0], [-0.7071067811865476, 0]]]}
    ],
    "initial_state": [{"site": [2], "vector": [[0, 1], [0, 0]]}],
    "horizon": 40,
    "tolerances": {"cluster": 1e-9}
  })";
  const auto cfg = parse_config_text(text);
  CHECK(cfg.grid_n == 64);
  CHECK(cfg.horizon == 40);
  CHECK(cfg.tolerances.spectral.cluster == 1e-9);
  CHECK(std::abs(cfg.initial_state.at({2})(0) - Complex(0, 1)) == 0.0);
  const Json doc = emit_config(cfg);
  const auto again = parse_config(doc);
  check_same_steps(again.op(), cfg.op());
  CHECK(emit_config(again).dump() == doc.dump());
  CHECK(config_hash(doc) == config_hash(emit_config(again)));
  CHECK(config_hash(doc).size() == 16);
}

TEST_CASE("config errors name the offending field") {
  const std::vector<std::pair<std::string, std::string>> bad{
      {R"({"preset": "grover-2d"})", "version"},
      {R"({"version": 2, "preset": "grover-2d"})", "version"},
      {R"({"version": 1, "preset": "grover-2d", "colour": 3})", "colour"},
      {R"({"version": 1, "preset": "grover-2d", "dimension": 2})", "dimension"},
      {R"({"version": 1, "preset": "nope"})", "preset"},
      {R"({"version": 1, "dimension": 1, "coin_dim": 1})", "steps"},
      {R"({"version": 1, "dimension": 1, "coin_dim": 1, "steps": [{"offset": [1, 0], "matrix": [[[1, 0]]]}]})",
       "offset"},
      {R"({"version": 1, "dimension": 1, "coin_dim": 1, "steps": [{"offset": [1], "matrix": [[1]]}]})",
       "matrix"},
      {R"({"version": 1, "dimension": 1, "coin_dim": 1, "steps": [{"offset": [1], "matrix": [[[0.5, 0]]]}]})",
       "unitary"},
      {R"({"version": 1, "preset": "pure-shift", "grid_n": 1})", "grid_n"},
      {R"({"version": 1, "preset": "pure-shift", "horizon": -3})", "horizon"},
      {R"({"version": 1, "preset": "pure-shift", "tolerances": {"spread": -1}})", "spread"},
      {R"({"version": 1, "preset": "pure-shift", "initial_state": [{"site": [0]}]})", "initial_state"},
      {R"({"version": 1,)", "document"},
  };
  for (const auto &[text, field] : bad) {
    CAPTURE(text);
    try {
      parse_config_text(text);
      FAIL("accepted an invalid config");
    } catch (const ConfigError &e) {
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  }
  // Unitarity is optional at parse time for the validate command.
  CHECK_NOTHROW(parse_config_text(
      R"({"version": 1, "dimension": 1, "coin_dim": 1, "steps": [{"offset": [1], "matrix": [[[0.5, 0]]]}]})",
      false));
}

TEST_CASE("doubles print as shortest round-trip decimals") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1e-20) == "1e-20");
}

TEST_CASE("series csv layout") {
  const std::vector<LatticePoint> sites{{0, 0}, {1, -2}};
  const std::vector<std::vector<double>> p{{1.0, 0.25}, {0.0, 0.125}};
  CHECK(series_csv(sites, p) ==
        "n,x1,x2,p\n0,0,0,1\n0,1,-2,0\n1,0,0,0.25\n1,1,-2,0.125\n");
}

TEST_CASE("spectral report serializes deterministically") {
  const auto rep = analyze_spectrum(walks::grover(), TorusGrid(2, 8));
  const Json a = to_json(rep), b = to_json(rep);
  CHECK(a.dump() == b.dump());
  CHECK(a.contains("candidates"));
}

TEST_CASE("command line exit codes") {
  const auto had = write_file("had.json", R"({"version": 1, "preset": "hadamard-1d"})");
  const auto gro = write_file("gro.json", R"({"version": 1, "preset": "grover-2d"})");
  const auto bad = write_file("bad.json", R"({"version": 1, "presetx": "hadamard-1d"})");
  const auto nonu = write_file(
      "nonu.json",
      R"({"version": 1, "dimension": 1, "coin_dim": 1, "steps": [{"offset": [1], "matrix": [[[0.5, 0]]]}]})");
  const std::string out = (scratch_dir() / "out").string();

  CHECK(run_cli("validate --config " + had.string()) == 0);
  CHECK(run_cli("validate --config " + nonu.string()) == 3);
  CHECK(run_cli("spectrum --config " + nonu.string()) == 2);
  CHECK(run_cli("spectrum --config " + bad.string()) == 2);
  CHECK(run_cli("spectrum --config /nonexistent/x.json") == 2);
  CHECK(run_cli("frobnicate --config " + had.string()) == 2);
  CHECK(run_cli("spectrum --config " + gro.string() + " --grid 8 --out " + out) == 0);
  CHECK(fs::exists(fs::path(out) / "report.json"));
  CHECK(run_cli("density --config " + gro.string()) == 3);
  CHECK(run_cli("average --config " + had.string() + " --site 1,2") == 2);

  CHECK(run_cli("average --config " + had.string() + " --horizon 64 --site 0") == 0);
  CHECK(run_cli("evolve --config " + had.string() + " --horizon 40 --site 0 --site 3 --out " +
                out) == 0);
  std::ifstream csv(fs::path(out) / "series.csv");
  std::string header, first, last, line;
  std::getline(csv, header);
  std::getline(csv, first);
  while (std::getline(csv, line)) last = line;
  CHECK(header == "n,x1,p");
  CHECK(first == "0,0,1");
  CHECK(last.rfind("40,3,", 0) == 0);
  fs::remove_all(scratch_dir());
}
