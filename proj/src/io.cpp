#include "gme/io.hpp"

#include <fstream>

namespace gme::io {

namespace {

std::vector<double> number_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw ValidationError(std::string("density file: missing array '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw ValidationError(std::string("density file: non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

DensityMatrixd density_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("density file: top level must be an object");
  if (!j.contains("dims") || !j.at("dims").is_array() || j.at("dims").empty()) {
    throw ValidationError("density file: missing or empty 'dims'");
  }
  std::vector<int> dims;
  for (const auto& v : j.at("dims")) {
    if (!v.is_number_integer()) throw ValidationError("density file: 'dims' entries must be integers");
    dims.push_back(v.get<int>());
  }
  LocalDims ld;
  try {
    ld = LocalDims(dims);
  } catch (const Error& e) {
    throw ValidationError(std::string("density file: invalid dims: ") + e.what());
  }
  const auto re = number_array(j, "re");
  const auto im = number_array(j, "im");
  const auto entries = static_cast<std::size_t>(ld.total() * ld.total());
  if (re.size() != entries) {
    throw ValidationError("density file: 're' has " + std::to_string(re.size()) + " entries, expected " +
                          std::to_string(entries));
  }
  if (im.size() != entries) {
    throw ValidationError("density file: 'im' has " + std::to_string(im.size()) + " entries, expected " +
                          std::to_string(entries));
  }
  CMatrixd m(ld.total(), ld.total());
  for (Index r = 0; r < ld.total(); ++r) {
    for (Index c = 0; c < ld.total(); ++c) {
      const auto k = static_cast<std::size_t>(r * ld.total() + c);
      m(r, c) = {re[k], im[k]};
    }
  }
  return DensityMatrixd(ld, std::move(m));
}

json density_to_json(const DensityMatrixd& rho) {
  json j;
  j["dims"] = rho.dims().values();
  std::vector<double> re, im;
  for (Index r = 0; r < rho.dim(); ++r) {
    for (Index c = 0; c < rho.dim(); ++c) {
      re.push_back(rho(r, c).real());
      im.push_back(rho(r, c).imag());
    }
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

DensityMatrixd load_density(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open state file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("state file '" + path + "' is not valid JSON: " + e.what());
  }
  return density_from_json(j);
}

void save_density(const DensityMatrixd& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << density_to_json(rho).dump() << '\n';
}

json to_json(const CriterionReport<double>& rep) {
  json terms = json::array();
  for (const auto& t : rep.terms) terms.push_back({{"label", t.label}, {"value", t.value}});
  json j{{"criterion", to_string(rep.criterion)},
         {"lhs", rep.lhs},
         {"violated", rep.violated},
         {"terms", std::move(terms)},
         {"probe", rep.probe}};
  if (!rep.partition.empty()) j["partition"] = rep.partition;
  return j;
}

json to_json(const ProductVectord& v) {
  json locals = json::array();
  for (const auto& l : v.locals()) {
    json entries = json::array();
    for (Index i = 0; i < l.size(); ++i) entries.push_back({l(i).real(), l(i).imag()});
    locals.push_back(std::move(entries));
  }
  return locals;
}

json to_json(const Optimum& opt) {
  return {{"lhs", opt.lhs},
          {"violated", opt.lhs > decision_tol},
          {"restart", opt.restart},
          {"iterations", opt.iterations},
          {"phi1", to_json(opt.phi1)},
          {"phi2", to_json(opt.phi2)}};
}

}  // namespace gme::io
