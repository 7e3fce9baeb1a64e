#pragma once

#include <string>

#include <json.hpp>

#include "gme/criteria.hpp"
#include "gme/optimizer.hpp"

namespace gme::io {

using nlohmann::json;

/// {"dims": [d1, ..., dn], "re": [...], "im": [...]}, row-major, D^2 entries
/// each. Structural problems and failed density-matrix checks are reported
/// as ValidationError naming the failing field or check.
DensityMatrixd density_from_json(const json& j);
json density_to_json(const DensityMatrixd& rho);
DensityMatrixd load_density(const std::string& path);
void save_density(const DensityMatrixd& rho, const std::string& path);

json to_json(const CriterionReport<double>& rep);
json to_json(const ProductVectord& v);
json to_json(const Optimum& opt);

}  // namespace gme::io
