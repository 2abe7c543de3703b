#ifndef WALKSPECTRA_TOOLS_REPORT_HPP
#define WALKSPECTRA_TOOLS_REPORT_HPP

#include <string>
#include <vector>

#include "config.hpp"
#include "walkspectra/lab.hpp"
#include "walkspectra/spectra.hpp"

namespace walkspectra::cli {

Json to_json(const UnitarityReport &r);
Json to_json(const SpectralReport &r);
Json to_json(const AverageTrace &t);
Json to_json(const DecayResult &r, std::size_t n0, std::size_t n1);
Json to_json(const DensityProfile &p);
Json to_json(const LatticePoint &x);

/// FNV-1a of the compact serialization, as 16 hex digits.
std::string config_hash(const Json &doc);

/// Shortest round-trip decimal.
std::string format_double(double v);

/// Header "n,x1,...,xd,p"; one row per (n, site), n ascending, sites in the
/// given order.
std::string series_csv(const std::vector<LatticePoint> &sites,
                       const std::vector<std::vector<double>> &p);

}  // namespace walkspectra::cli

#endif  // WALKSPECTRA_TOOLS_REPORT_HPP
