#include "gme/scan.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace gme {

std::string to_string(ProbePolicy p) {
  switch (p) {
    case ProbePolicy::fixed: return "fixed";
    case ProbePolicy::basis: return "basis";
    case ProbePolicy::optimize: return "optimize";
  }
  return "?";
}

std::optional<ProbePolicy> parse_probe_policy(const std::string& s) {
  if (s == "fixed") return ProbePolicy::fixed;
  if (s == "basis") return ProbePolicy::basis;
  if (s == "optimize") return ProbePolicy::optimize;
  return std::nullopt;
}

std::string result_label(const CriterionReport<double>& rep) {
  const std::string id = to_string(rep.criterion);
  return rep.partition.empty() ? id : id + ":" + rep.partition;
}

namespace {

int min_local_dim(const LocalDims& dims) {
  return *std::min_element(dims.values().begin(), dims.values().end());
}

template <typename F>
CriterionReport<double> best_of(const std::vector<std::pair<int, int>>& levels, F&& eval) {
  CriterionReport<double> best;
  bool first = true;
  for (const auto& [i, j] : levels) {
    auto rep = eval(i, j);
    if (first || rep.lhs > best.lhs) {
      best = std::move(rep);
      first = false;
    }
  }
  return best;
}

std::vector<std::pair<int, int>> level_pairs(int d, bool ordered) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < d; ++i) {
    for (int j = ordered ? 0 : i + 1; j < d; ++j) {
      if (i != j) out.emplace_back(i, j);
    }
  }
  return out;
}

CriterionReport<double> from_optimizer(const DensityMatrixd& rho, const OptimizationTarget& target,
                                       const ProbeSettings& probes) {
  const Optimum opt = probes.policy == ProbePolicy::basis ? best_basis_probes(rho, target, probes.optimizer)
                                                          : optimize_violation(rho, target, probes.optimizer);
  auto rep = evaluate_target(rho, target, opt.phi1, opt.phi2);
  rep.probe = to_string(probes.policy) + ":" + rep.probe + " restart=" + std::to_string(opt.restart);
  return rep;
}

CriterionReport<double> detect_II(const DensityMatrixd& rho, const std::vector<Bipartition>& parts,
                                  const ProbeSettings& probes) {
  if (probes.policy != ProbePolicy::fixed) return from_optimizer(rho, {CriterionId::II, std::nullopt}, probes);
  return best_of(level_pairs(min_local_dim(rho.dims()), false), [&](int i, int j) {
    return criterion_II(rho, ProductVectord::uniform_basis(rho.dims(), i), ProductVectord::uniform_basis(rho.dims(), j),
                        &parts);
  });
}

CriterionReport<double> detect_I(const DensityMatrixd& rho, const Bipartition& part, const ProbeSettings& probes) {
  if (probes.policy != ProbePolicy::fixed) return from_optimizer(rho, {CriterionId::I, part}, probes);
  return best_of(level_pairs(min_local_dim(rho.dims()), false), [&](int i, int j) {
    const auto [p1, p2] = swap_on_subset(ProductVectord::uniform_basis(rho.dims(), i),
                                         ProductVectord::uniform_basis(rho.dims(), j), part);
    return criterion_I(rho, part, p1, p2);
  });
}

CriterionReport<double> detect_III(const DensityMatrixd& rho, const ProbeSettings& probes) {
  if (probes.policy == ProbePolicy::optimize) return from_optimizer(rho, {CriterionId::III, std::nullopt}, probes);
  const int d = rho.dims().uniform_dim().value_or(0);
  return best_of(level_pairs(d, true), [&](int x, int y) { return criterion_III(rho, x, y); });
}

bool applicable(CriterionId id, const DensityMatrixd& rho) {
  if (id == CriterionId::III) return rho.parties() >= 3 && rho.dims().uniform_dim().has_value();
  return rho.parties() >= 2;
}

std::string number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<CriterionReport<double>> detect(const DensityMatrixd& rho, const std::vector<CriterionId>& criteria,
                                            const ProbeSettings& probes) {
  probes.optimizer.check();
  if (rho.parties() < 2) throw PreconditionError("detect: at least two parties required");
  const auto parts = enumerate_bipartitions(rho.parties());
  std::vector<CriterionReport<double>> out;
  for (CriterionId id : criteria) {
    switch (id) {
      case CriterionId::I:
        for (const auto& part : parts) out.push_back(detect_I(rho, part, probes));
        break;
      case CriterionId::II:
        out.push_back(detect_II(rho, parts, probes));
        break;
      case CriterionId::III:
        if (!applicable(id, rho)) throw PreconditionError("criterion III needs n >= 3 parties of equal dimension");
        out.push_back(detect_III(rho, probes));
        break;
      case CriterionId::PPT:
        for (const auto& part : parts) out.push_back(ppt_report(rho, part));
        break;
      case CriterionId::MLIN:
        throw PreconditionError("MLIN has no default probes; evaluate it through m_linear()");
    }
  }
  return out;
}

std::vector<double> Axis::values() const {
  if (!(step > 0)) throw PreconditionError("axis step must be positive");
  if (stop < start) throw PreconditionError("axis stop must not be below start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

Axis parse_axis(const std::string& s) {
  Axis a;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> a.start >> c1 >> a.stop >> c2 >> a.step) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw PreconditionError("axis must look like start:stop:step, got '" + s + "'");
  }
  a.values();
  return a;
}

ScanResult scan(const ScanSpec& spec) {
  spec.probes.optimizer.check();
  const auto alphas = spec.alpha.values();
  const auto betas = spec.beta.values();
  std::vector<std::pair<double, double>> grid;
  for (double a : alphas) {
    for (double b : betas) {
      if (a + b <= 1.0 + 1e-12) grid.emplace_back(a, b);
    }
  }
  if (grid.size() > spec.max_cells) {
    throw CapacityError("scan: " + std::to_string(grid.size()) + " cells exceed the cap of " +
                        std::to_string(spec.max_cells));
  }

  ScanResult result;
  result.family = spec.family.id;
  result.cells.resize(grid.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        StateFamily fam = spec.family;
        fam.alpha = grid[i].first;
        fam.beta = grid[i].second;
        const DensityMatrixd rho = build_state(fam);
        std::vector<CriterionId> crits;
        for (CriterionId id : spec.criteria) {
          if (applicable(id, rho)) crits.push_back(id);
        }
        result.cells[i] = {grid[i].first, grid[i].second, detect(rho, crits, spec.probes)};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = grid.size();
      }
    }
  };
  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(grid.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

std::string to_csv(const ScanResult& result) {
  std::string out = "alpha,beta,crit,lhs,violated\n";
  for (const auto& cell : result.cells) {
    for (const auto& rep : cell.reports) {
      const std::string label = result_label(rep);
      const bool quote = label.find(',') != std::string::npos;
      out += number(cell.alpha) + ',' + number(cell.beta) + ',' + (quote ? "\"" + label + "\"" : label) + ',' +
             number(rep.lhs) + ',' + (rep.violated ? "1" : "0") + '\n';
    }
  }
  return out;
}

io::json to_json(const ScanResult& result) {
  io::json cells = io::json::array();
  for (const auto& cell : result.cells) {
    io::json results = io::json::array();
    for (const auto& rep : cell.reports) {
      results.push_back({{"crit", result_label(rep)}, {"lhs", rep.lhs}, {"violated", rep.violated}});
    }
    cells.push_back({{"alpha", cell.alpha}, {"beta", cell.beta}, {"results", std::move(results)}});
  }
  return {{"family", result.family}, {"cells", std::move(cells)}};
}

double threshold(const ThresholdSpec& spec) {
  spec.probes.optimizer.check();
  auto lhs_at = [&](double t) {
    StateFamily fam = spec.family;
    set_param(fam, spec.param, t);
    const DensityMatrixd rho = build_state(fam);
    if (spec.part && (spec.criterion == CriterionId::I || spec.criterion == CriterionId::PPT)) {
      if (spec.part->parties() != rho.parties()) throw DimensionError("threshold: bipartition party count");
      return spec.criterion == CriterionId::I ? detect_I(rho, *spec.part, spec.probes).lhs
                                              : ppt_report(rho, *spec.part).lhs;
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& rep : detect(rho, {spec.criterion}, spec.probes)) best = std::max(best, rep.lhs);
    return best;
  };
  return threshold_bisect(lhs_at, spec.lo, spec.hi, spec.tol);
}

}  // namespace gme
