#include "report.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>

namespace walkspectra::cli {

Json to_json(const LatticePoint &x) { return Json(x.coords()); }

Json to_json(const UnitarityReport &r) {
  Json per = Json::array();
  for (const auto &[g, v] : r.per_gamma) per.push_back(Json{{"gamma", to_json(g)}, {"residual", v}});
  return Json{{"tolerance", r.tolerance},
              {"max_residual", r.max_residual},
              {"passed", r.passed},
              {"per_gamma", per}};
}

Json to_json(const SpectralReport &r) {
  Json cands = Json::array();
  for (const auto &c : r.candidates) {
    int lo = c.detected.multiplicity_profile.empty() ? 0 : c.detected.multiplicity_profile.front();
    int hi = lo;
    for (int m : c.detected.multiplicity_profile) {
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    cands.push_back(Json{{"omega", complex_to_json(c.detected.omega)},
                         {"max_grid_deviation", c.detected.max_grid_deviation},
                         {"symbolic_residual", c.certificate.residual},
                         {"certified", c.certificate.is_eigenvalue},
                         {"peeled_multiplicity", c.peeled_multiplicity},
                         {"pointwise_multiplicity_min", lo},
                         {"pointwise_multiplicity_max", hi}});
  }
  Json bands = Json::array();
  const std::size_t n = r.grid.n();
  // Samples along the first grid line (all other indices zero).
  for (std::size_t k = 0; k < n && !r.bands.bands.empty(); ++k) {
    std::vector<std::size_t> mi(r.grid.dim(), 0);
    mi[0] = k;
    Json vals = Json::array();
    for (Complex l : r.bands.bands[r.grid.linear_index(mi)]) vals.push_back(std::arg(l));
    bands.push_back(vals);
  }
  Json disc;
  disc["quotient_degree"] = r.peel.quotient.degree();
  disc["repeated_factor"] = r.bands.repeated_factor;
  disc["min_abs_discriminant"] =
      r.bands.min_abs_discriminant ? Json(*r.bands.min_abs_discriminant) : Json(nullptr);
  disc["min_eigenvalue_gap"] = r.bands.min_eigenvalue_gap;
  disc["collision_points"] = r.bands.collision_points.size();
  return Json{{"grid", Json{{"d", r.grid.dim()}, {"n", r.grid.n()}}},
              {"characteristic_degree", r.chi.degree()},
              {"candidates", cands},
              {"band_arguments_first_axis", bands},
              {"discriminant", disc}};
}

Json to_json(const AverageTrace &t) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < t.schedule.size(); ++i)
    pts.push_back(Json{{"n", t.schedule[i]}, {"mean", t.means[i]}, {"gap", t.gaps[i]}});
  return Json{{"site", to_json(t.site)},
              {"predicted", t.predicted},
              {"schedule", pts},
              {"final_gap", t.final_gap},
              {"gaps_decreasing", t.gaps_decreasing}};
}

Json to_json(const DecayResult &r, std::size_t n0, std::size_t n1) {
  return Json{{"window", Json::array({n0, n1})},
              {"sup", r.sup},
              {"argmax", r.argmax},
              {"slope", r.slope ? Json(*r.slope) : Json(nullptr)}};
}

Json to_json(const DensityProfile &p) {
  Json edges = Json::array();
  for (const auto &e : p.edges)
    edges.push_back(Json{{"t", e.t}, {"theta", e.theta}, {"curvature", e.curvature}, {"weight", e.weight}});
  std::size_t flagged = 0;
  for (bool f : p.flagged) flagged += f;
  return Json{{"samples", p.t.size()},
              {"t", p.t},
              {"gamma", p.gamma},
              {"flagged", flagged},
              {"edges", edges},
              {"integral", p.integral},
              {"continuous_norm", p.continuous_norm}};
}

std::string config_hash(const Json &doc) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : doc.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string series_csv(const std::vector<LatticePoint> &sites,
                       const std::vector<std::vector<double>> &p) {
  std::string out = "n";
  const std::size_t d = sites.empty() ? 0 : sites.front().dim();
  for (std::size_t i = 0; i < d; ++i) out += ",x" + std::to_string(i + 1);
  out += ",p\n";
  const std::size_t len = p.empty() ? 0 : p.front().size();
  for (std::size_t n = 0; n < len; ++n)
    for (std::size_t s = 0; s < sites.size(); ++s) {
      out += std::to_string(n);
      for (int c : sites[s]) out += "," + std::to_string(c);
      out += "," + format_double(p[s][n]) + "\n";
    }
  return out;
}

}  // namespace walkspectra::cli
