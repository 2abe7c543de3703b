#ifndef WALKSPECTRA_TOOLS_CONFIG_HPP
#define WALKSPECTRA_TOOLS_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "walkspectra/lattice.hpp"
#include "walkspectra/spectra.hpp"

namespace walkspectra::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kConfigVersion = 1;

/// Field-level problem in a configuration document.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double unitarity = 1e-10;
  SpectralTolerances spectral;
};

struct WalkConfig {
  std::optional<std::string> preset;
  std::size_t dimension = 0;
  std::size_t coin_dim = 0;
  std::map<LatticePoint, CMatrix> steps;
  LatticeState initial_state{1, 1};
  std::size_t grid_n = 0;
  std::size_t horizon = 0;
  Tolerances tolerances;

  PeriodicOperator op() const { return PeriodicOperator(dimension, coin_dim, steps); }
};

struct Preset {
  std::string name;
  std::size_t dimension;
  std::size_t coin_dim;
  std::map<LatticePoint, CMatrix> steps;
  std::size_t grid_n;
  std::size_t horizon;
};

const std::vector<Preset> &presets();
const Preset &find_preset(const std::string &name);
PeriodicOperator preset_operator(const std::string &name);

/// Validates fields, shapes and (optionally) unitarity. Throws ConfigError.
WalkConfig parse_config(const Json &doc, bool check_unitarity = true);
WalkConfig parse_config_text(const std::string &text, bool check_unitarity = true);
WalkConfig load_config(const std::string &path, bool check_unitarity = true);

/// Explicit (preset-free) document for a config.
Json emit_config(const WalkConfig &cfg);

Json complex_to_json(Complex c);
Json matrix_to_json(const CMatrix &m);
Json vector_to_json(const CVector &v);

}  // namespace walkspectra::cli

#endif  // WALKSPECTRA_TOOLS_CONFIG_HPP
