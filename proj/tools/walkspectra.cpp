#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "report.hpp"
#include "walkspectra/lab.hpp"

namespace ws = walkspectra;
using namespace walkspectra::cli;

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kPrecondition = 3, kNumeric = 4 };

struct Options {
  std::string command;
  std::string config_path;
  std::vector<std::string> sites;
  std::optional<std::size_t> grid;
  std::optional<std::size_t> horizon;
  std::optional<std::string> out;
};

struct Outputs {
  Json report;
  std::optional<std::string> series;
  int status = kOk;
};

ws::LatticePoint parse_site(const std::string &text, std::size_t d) {
  std::vector<int> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      c.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw ConfigError("--site: \"" + text + "\" is not a comma-separated integer list");
    }
  }
  if (c.size() != d)
    throw ConfigError("--site: \"" + text + "\" has " + std::to_string(c.size()) +
                      " coordinates, dimension is " + std::to_string(d));
  return ws::LatticePoint(c);
}

std::vector<std::size_t> average_schedule(std::size_t horizon) {
  std::vector<std::size_t> s;
  for (std::size_t n = 16; n < horizon; n *= 2) s.push_back(n);
  s.push_back(horizon);
  return s;
}

Json run_spectrum(const WalkConfig &cfg, std::vector<ws::Complex> &certified) {
  const ws::PeriodicOperator op = cfg.op();
  const ws::SpectralReport rep =
      ws::analyze_spectrum(op, ws::TorusGrid(cfg.dimension, cfg.grid_n), cfg.tolerances.spectral);
  certified = rep.certified();
  return to_json(rep);
}

Json run_average(const WalkConfig &cfg, const std::vector<ws::LatticePoint> &sites,
                 const std::vector<ws::Complex> &certified) {
  const ws::PeriodicOperator op = cfg.op();
  const auto series = ws::probability_series(op, {cfg.initial_state}, sites, cfg.horizon);
  const auto predicted = ws::predicted_average(op, cfg.initial_state, sites, certified,
                                               cfg.grid_n, cfg.tolerances.spectral.cluster);
  const auto schedule = average_schedule(cfg.horizon);
  Json traces = Json::array();
  for (std::size_t x = 0; x < sites.size(); ++x)
    traces.push_back(to_json(ws::make_trace(sites[x], series[0][x], schedule, predicted[x])));
  Json out;
  out["certified"] = Json::array();
  for (auto w : certified) out["certified"].push_back(complex_to_json(w));
  out["traces"] = traces;
  return out;
}

Json run_decay(const WalkConfig &cfg, const std::vector<ws::LatticePoint> &sites) {
  const ws::PeriodicOperator op = cfg.op();
  const auto series = ws::probability_series(op, {cfg.initial_state}, sites, cfg.horizon);
  const std::size_t n0 = cfg.horizon / 2, n1 = cfg.horizon;
  Json out = Json::array();
  for (std::size_t x = 0; x < sites.size(); ++x) {
    Json j = to_json(ws::decay_check(series[0][x], n0, n1), n0, n1);
    j["site"] = to_json(sites[x]);
    out.push_back(j);
  }
  return out;
}

Json run_density(const WalkConfig &cfg) {
  if (cfg.dimension != 1)
    throw ws::PreconditionError("density is available for dimension 1 only");
  ws::DensityOptions opt;
  opt.cluster_tol = cfg.tolerances.spectral.cluster;
  opt.certify_tol = cfg.tolerances.spectral.certify;
  return to_json(ws::spectral_density_1d(cfg.op(), cfg.initial_state, cfg.grid_n, opt));
}

Outputs run(const Options &o) {
  const bool gate = o.command != "validate";
  WalkConfig cfg = load_config(o.config_path, gate);
  if (o.grid) {
    if (*o.grid < 2) throw ConfigError("--grid: must be at least 2");
    cfg.grid_n = *o.grid;
  }
  if (o.horizon) {
    if (*o.horizon == 0) throw ConfigError("--horizon: must be positive");
    cfg.horizon = *o.horizon;
  }
  std::vector<ws::LatticePoint> sites;
  for (const auto &s : o.sites) sites.push_back(parse_site(s, cfg.dimension));
  if (sites.empty()) sites.emplace_back(cfg.dimension);

  Outputs out;
  Json &r = out.report;
  r["command"] = o.command;
  const Json emitted = emit_config(cfg);
  r["provenance"] = Json{{"config_hash", config_hash(emitted)},
                         {"preset", cfg.preset ? Json(*cfg.preset) : Json(nullptr)},
                         {"grid_n", cfg.grid_n},
                         {"horizon", cfg.horizon}};
  const ws::PeriodicOperator op = cfg.op();
  std::vector<ws::Complex> certified;

  if (o.command == "validate" || o.command == "report") {
    const ws::UnitarityReport u = ws::validate_unitarity(op, cfg.tolerances.unitarity);
    r["unitarity"] = to_json(u);
    if (!u.passed) out.status = kPrecondition;
  }
  if (o.command == "spectrum" || o.command == "report" || o.command == "average")
    r["spectrum"] = run_spectrum(cfg, certified);
  if (o.command == "evolve") {
    const auto series = ws::probability_series(op, {cfg.initial_state}, sites, cfg.horizon);
    out.series = series_csv(sites, series[0]);
    r["evolve"] = Json{{"sites", sites.size()},
                       {"horizon", cfg.horizon},
                       {"initial_norm_squared", cfg.initial_state.norm_squared()}};
  }
  if (o.command == "average" || o.command == "report")
    r["average"] = run_average(cfg, sites, certified);
  if (o.command == "decay" || o.command == "report") r["decay"] = run_decay(cfg, sites);
  if (o.command == "density" || (o.command == "report" && cfg.dimension == 1))
    r["density"] = run_density(cfg);
  r["schedule"] = average_schedule(cfg.horizon);
  if (o.command != "average" && o.command != "report") r.erase("schedule");
  return out;
}

void write_outputs(const Options &o, const Outputs &res) {
  const std::string doc = res.report.dump(2) + "\n";
  if (!o.out) {
    std::cout << doc;
    if (res.series) std::cout << *res.series;
    return;
  }
  std::filesystem::create_directories(*o.out);
  std::ofstream(std::filesystem::path(*o.out) / "report.json") << doc;
  if (res.series) std::ofstream(std::filesystem::path(*o.out) / "series.csv") << *res.series;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Spectral analysis and simulation of periodic unitary walks on Z^d"};
  Options o;
  app.add_option("command", o.command, "validate, spectrum, evolve, average, decay, density or report")
      ->required()
      ->check(CLI::IsMember({"validate", "spectrum", "evolve", "average", "decay", "density", "report"}));
  app.add_option("--config", o.config_path, "walk configuration (JSON)")->required();
  app.add_option("--site", o.sites, "site x1,..,xd (repeatable; default origin)");
  app.add_option("--grid", o.grid, "torus grid length N");
  app.add_option("--horizon", o.horizon, "number of time steps");
  app.add_option("--out", o.out, "output directory for report.json and series.csv");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    const Outputs res = run(o);
    write_outputs(o, res);
    return res.status;
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ws::DimensionError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ws::MalformedOperator &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ws::PreconditionError &e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ws::DomainError &e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ws::EigensolverFailure &e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception &e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  }
}
