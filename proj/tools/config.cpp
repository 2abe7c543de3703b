#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace walkspectra::cli {

namespace {

CMatrix hadamard_minus() {
  CMatrix m(2, 2);
  m << 1.0, 1.0, 0.0, 0.0;
  return m / std::sqrt(2.0);
}

CMatrix hadamard_plus() {
  CMatrix m(2, 2);
  m << 0.0, 0.0, 1.0, -1.0;
  return m / std::sqrt(2.0);
}

// Chirality c in (-e1, +e1, -e2, +e2) moves by s_c; C(s_c) = E_c G with the
// Grover coin G = J/2 - I.
std::map<LatticePoint, CMatrix> grover_steps() {
  const CMatrix g = CMatrix::Constant(4, 4, 0.5) - CMatrix::Identity(4, 4);
  const LatticePoint shifts[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  std::map<LatticePoint, CMatrix> steps;
  for (int c = 0; c < 4; ++c) {
    CMatrix m = CMatrix::Zero(4, 4);
    m.row(c) = g.row(c);
    steps.emplace(shifts[c], m);
  }
  return steps;
}

std::vector<Preset> build_presets() {
  std::vector<Preset> p;
  p.push_back({"hadamard-1d", 1, 2, {{{-1}, hadamard_minus()}, {{1}, hadamard_plus()}}, 256, 2048});
  p.push_back({"grover-2d", 2, 4, grover_steps(), 64, 1024});
  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = Complex(0.0, 1.0);
  p.push_back({"constant-coin", 1, 2, {{{0}, diag}}, 64, 64});
  p.push_back({"pure-shift", 1, 1, {{{1}, CMatrix::Ones(1, 1)}}, 64, 100});
  return p;
}

void check_keys(const Json &obj, const std::string &where,
                const std::set<std::string> &allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto &[k, v] : obj.items())
    if (!allowed.count(k)) throw ConfigError(where + ": unknown field \"" + k + "\"");
}

std::size_t positive(const Json &v, const std::string &where) {
  if (!v.is_number_integer() || v.get<long long>() <= 0)
    throw ConfigError(where + ": expected a positive integer");
  return v.get<std::size_t>();
}

double nonneg_real(const Json &v, const std::string &where) {
  if (!v.is_number() || !(v.get<double>() >= 0.0))
    throw ConfigError(where + ": expected a nonnegative number");
  return v.get<double>();
}

Complex parse_complex(const Json &v, const std::string &where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(where + ": expected a [re, im] pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

LatticePoint parse_point(const Json &v, std::size_t d, const std::string &where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an integer array");
  if (v.size() != d)
    throw ConfigError(where + ": has " + std::to_string(v.size()) + " coordinates, dimension is " +
                      std::to_string(d));
  LatticePoint p(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!v[i].is_number_integer()) throw ConfigError(where + ": coordinates must be integers");
    p[i] = v[i].get<int>();
  }
  return p;
}

CMatrix parse_matrix(const Json &v, std::size_t D, const std::string &where) {
  if (!v.is_array() || v.size() != D)
    throw ConfigError(where + ": expected " + std::to_string(D) + " rows");
  CMatrix m(D, D);
  for (std::size_t i = 0; i < D; ++i) {
    const std::string rw = where + "[" + std::to_string(i) + "]";
    if (!v[i].is_array() || v[i].size() != D)
      throw ConfigError(rw + ": expected " + std::to_string(D) + " entries");
    for (std::size_t j = 0; j < D; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_complex(v[i][j], rw + "[" + std::to_string(j) + "]");
  }
  return m;
}

CVector parse_vector(const Json &v, std::size_t D, const std::string &where) {
  if (!v.is_array() || v.size() != D)
    throw ConfigError(where + ": expected " + std::to_string(D) + " entries");
  CVector x(D);
  for (std::size_t i = 0; i < D; ++i)
    x(static_cast<Eigen::Index>(i)) = parse_complex(v[i], where + "[" + std::to_string(i) + "]");
  return x;
}

}  // namespace

const std::vector<Preset> &presets() {
  static const std::vector<Preset> table = build_presets();
  return table;
}

const Preset &find_preset(const std::string &name) {
  for (const auto &p : presets())
    if (p.name == name) return p;
  throw ConfigError("preset: unknown preset \"" + name + "\"");
}

PeriodicOperator preset_operator(const std::string &name) {
  const Preset &p = find_preset(name);
  return PeriodicOperator(p.dimension, p.coin_dim, p.steps);
}

WalkConfig parse_config(const Json &doc, bool check_unitarity) {
  check_keys(doc, "config",
             {"version", "preset", "dimension", "coin_dim", "steps", "initial_state", "grid_n",
              "horizon", "tolerances"});
  if (!doc.contains("version")) throw ConfigError("version: field is mandatory");
  if (!doc["version"].is_number_integer() || doc["version"].get<int>() != kConfigVersion)
    throw ConfigError("version: unsupported, expected " + std::to_string(kConfigVersion));

  WalkConfig cfg;
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw ConfigError("preset: expected a string");
    for (const char *k : {"dimension", "coin_dim", "steps"})
      if (doc.contains(k))
        throw ConfigError(std::string(k) + ": cannot be combined with a preset");
    const Preset &p = find_preset(doc["preset"].get<std::string>());
    cfg.preset = p.name;
    cfg.dimension = p.dimension;
    cfg.coin_dim = p.coin_dim;
    cfg.steps = p.steps;
    cfg.grid_n = p.grid_n;
    cfg.horizon = p.horizon;
  } else {
    for (const char *k : {"dimension", "coin_dim", "steps"})
      if (!doc.contains(k)) throw ConfigError(std::string(k) + ": field is mandatory");
    cfg.dimension = positive(doc["dimension"], "dimension");
    cfg.coin_dim = positive(doc["coin_dim"], "coin_dim");
    const Json &steps = doc["steps"];
    if (!steps.is_array() || steps.empty())
      throw ConfigError("steps: expected a nonempty array");
    for (std::size_t s = 0; s < steps.size(); ++s) {
      const std::string w = "steps[" + std::to_string(s) + "]";
      check_keys(steps[s], w, {"offset", "matrix"});
      if (!steps[s].contains("offset") || !steps[s].contains("matrix"))
        throw ConfigError(w + ": needs offset and matrix");
      LatticePoint a = parse_point(steps[s]["offset"], cfg.dimension, w + ".offset");
      CMatrix m = parse_matrix(steps[s]["matrix"], cfg.coin_dim, w + ".matrix");
      if (!cfg.steps.emplace(a, m).second)
        throw ConfigError(w + ".offset: duplicate step " + a.str());
    }
    cfg.grid_n = 64;
    cfg.horizon = 256;
  }

  cfg.initial_state = LatticeState(cfg.dimension, cfg.coin_dim);
  if (doc.contains("initial_state")) {
    const Json &st = doc["initial_state"];
    if (!st.is_array() || st.empty())
      throw ConfigError("initial_state: expected a nonempty array");
    for (std::size_t s = 0; s < st.size(); ++s) {
      const std::string w = "initial_state[" + std::to_string(s) + "]";
      check_keys(st[s], w, {"site", "vector"});
      if (!st[s].contains("site") || !st[s].contains("vector"))
        throw ConfigError(w + ": needs site and vector");
      const LatticePoint x = parse_point(st[s]["site"], cfg.dimension, w + ".site");
      cfg.initial_state.add(x, parse_vector(st[s]["vector"], cfg.coin_dim, w + ".vector"));
    }
  } else {
    CVector e1 = CVector::Zero(static_cast<Eigen::Index>(cfg.coin_dim));
    e1(0) = 1.0;
    cfg.initial_state.set(LatticePoint(cfg.dimension), e1);
  }
  if (doc.contains("grid_n")) {
    cfg.grid_n = positive(doc["grid_n"], "grid_n");
    if (cfg.grid_n < 2) throw ConfigError("grid_n: must be at least 2");
  }
  if (doc.contains("horizon")) cfg.horizon = positive(doc["horizon"], "horizon");
  if (doc.contains("tolerances")) {
    const Json &t = doc["tolerances"];
    check_keys(t, "tolerances", {"unitarity", "cluster", "spread", "certify", "gap"});
    if (t.contains("unitarity")) cfg.tolerances.unitarity = nonneg_real(t["unitarity"], "tolerances.unitarity");
    if (t.contains("cluster")) cfg.tolerances.spectral.cluster = nonneg_real(t["cluster"], "tolerances.cluster");
    if (t.contains("spread")) cfg.tolerances.spectral.spread = nonneg_real(t["spread"], "tolerances.spread");
    if (t.contains("certify")) cfg.tolerances.spectral.certify = nonneg_real(t["certify"], "tolerances.certify");
    if (t.contains("gap")) cfg.tolerances.spectral.gap = nonneg_real(t["gap"], "tolerances.gap");
  }

  const UnitarityReport u = validate_unitarity(cfg.op(), cfg.tolerances.unitarity);
  if (check_unitarity && !u.passed) {
    std::ostringstream os;
    os << "steps: coins are not unitary (max residual " << u.max_residual << " > "
       << cfg.tolerances.unitarity << ")";
    throw ConfigError(os.str());
  }
  return cfg;
}

WalkConfig parse_config_text(const std::string &text, bool check_unitarity) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw ConfigError(std::string("document: ") + e.what());
  }
  return parse_config(doc, check_unitarity);
}

WalkConfig load_config(const std::string &path, bool check_unitarity) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), check_unitarity);
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json matrix_to_json(const CMatrix &m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json vector_to_json(const CVector &v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
  return a;
}

Json emit_config(const WalkConfig &cfg) {
  Json doc;
  doc["version"] = kConfigVersion;
  doc["dimension"] = cfg.dimension;
  doc["coin_dim"] = cfg.coin_dim;
  Json steps = Json::array();
  for (const auto &[a, m] : cfg.steps)
    steps.push_back(Json{{"offset", a.coords()}, {"matrix", matrix_to_json(m)}});
  doc["steps"] = steps;
  Json st = Json::array();
  for (const auto &[x, v] : cfg.initial_state.amplitudes())
    st.push_back(Json{{"site", x.coords()}, {"vector", vector_to_json(v)}});
  doc["initial_state"] = st;
  doc["grid_n"] = cfg.grid_n;
  doc["horizon"] = cfg.horizon;
  doc["tolerances"] = Json{{"unitarity", cfg.tolerances.unitarity},
                           {"cluster", cfg.tolerances.spectral.cluster},
                           {"spread", cfg.tolerances.spectral.spread},
                           {"certify", cfg.tolerances.spectral.certify},
                           {"gap", cfg.tolerances.spectral.gap}};
  return doc;
}

}  // namespace walkspectra::cli
