#include "gme/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gme {

void OptimizerConfig::check() const {
  if (restarts < 1) throw PreconditionError("OptimizerConfig: restarts >= 1 required");
  if (iterations < 0) throw PreconditionError("OptimizerConfig: iterations >= 0 required");
  if (!(step_decay > 0 && step_decay < 1)) throw PreconditionError("OptimizerConfig: 0 < step_decay < 1 required");
  if (!(initial_step > 0)) throw PreconditionError("OptimizerConfig: initial_step > 0 required");
  if (basis_budget < 0 || basis_starts < 0) throw PreconditionError("OptimizerConfig: negative basis budget");
}

namespace {

using LocalSet = std::vector<CVectord>;

// Offset of the stream used to subsample basis pairs; restarts use 0..restarts-1.
constexpr std::uint64_t kBasisStream = std::uint64_t{1} << 40;

struct Problem {
  const DensityMatrixd& rho;
  OptimizationTarget target;
  std::vector<Bipartition> parts;
  int n;

  Problem(const DensityMatrixd& r, const OptimizationTarget& t) : rho(r), target(t), n(r.parties()) {
    switch (t.criterion) {
      case CriterionId::II:
        parts = enumerate_bipartitions(n);
        break;
      case CriterionId::I:
        if (!t.part) throw PreconditionError("optimize_violation: criterion I needs a bipartition");
        if (t.part->parties() != n) throw DimensionError("optimize_violation: bipartition party count");
        break;
      case CriterionId::III:
        if (n < 3 || !r.dims().uniform_dim()) {
          throw PreconditionError("optimize_violation: criterion III needs n >= 3 and uniform dims");
        }
        break;
      default:
        throw PreconditionError("optimize_violation: only criteria I, II and III have probes to optimize");
    }
  }

  bool is_iii() const { return target.criterion == CriterionId::III; }

  std::vector<int> local_dims() const {
    if (is_iii()) return {*rho.dims().uniform_dim(), *rho.dims().uniform_dim()};
    std::vector<int> out = rho.dims().values();
    out.insert(out.end(), rho.dims().values().begin(), rho.dims().values().end());
    return out;
  }

  std::pair<ProductVectord, ProductVectord> probes(const LocalSet& s) const {
    if (is_iii()) return {ProductVectord({s[0]}), ProductVectord({s[1]})};
    return {ProductVectord(LocalSet(s.begin(), s.begin() + n)), ProductVectord(LocalSet(s.begin() + n, s.end()))};
  }

  double value(const LocalSet& s) const {
    if (is_iii()) return criterion_III_lhs(rho, s[0], s[1]);
    const auto [p1, p2] = probes(s);
    if (target.criterion == CriterionId::I) return criterion_I_lhs(rho, *target.part, p1, p2);
    return criterion_II_lhs(rho, p1, p2, parts);
  }

  LocalSet basis_set(Index a, Index b) const {
    const auto& dims = rho.dims();
    if (is_iii()) {
      const int d = *dims.uniform_dim();
      return {CVectord::Unit(d, static_cast<Index>(a)), CVectord::Unit(d, static_cast<Index>(b))};
    }
    LocalSet s;
    for (Index flat : {a, b}) {
      const auto idx = multi_index(dims, flat);
      for (int k = 0; k < n; ++k) s.push_back(CVectord::Unit(dims[k], idx[static_cast<std::size_t>(k)]));
    }
    return s;
  }

  /// Candidate basis pairs, enumerated or subsampled within the budget.
  std::vector<std::pair<Index, Index>> basis_pairs(const OptimizerConfig& cfg) const {
    std::vector<std::pair<Index, Index>> out;
    if (is_iii()) {
      const int d = *rho.dims().uniform_dim();
      for (int x = 0; x < d; ++x) {
        for (int y = 0; y < d; ++y) {
          if (x != y) out.emplace_back(x, y);
        }
      }
      return out;
    }
    const Index total = rho.dim();
    const Index budget = cfg.basis_budget;
    if (total <= budget / total) {
      for (Index a = 0; a < total; ++a) {
        for (Index b = 0; b < total; ++b) out.emplace_back(a, b);
      }
      return out;
    }
    Rng rng = make_rng(cfg.seed, kBasisStream);
    std::uniform_int_distribution<Index> pick(0, total - 1);
    for (Index i = 0; i < budget; ++i) {
      const Index a = pick(rng);
      out.emplace_back(a, pick(rng));
    }
    return out;
  }
};

struct Scored {
  LocalSet locals;
  double value;
};

std::vector<Scored> ranked_basis(const Problem& prob, const OptimizerConfig& cfg) {
  std::vector<Scored> out;
  for (const auto& [a, b] : prob.basis_pairs(cfg)) {
    LocalSet s = prob.basis_set(a, b);
    const double v = prob.value(s);
    out.push_back({std::move(s), v});
  }
  std::stable_sort(out.begin(), out.end(), [](const Scored& x, const Scored& y) { return x.value > y.value; });
  return out;
}

Optimum to_optimum(const Problem& prob, const LocalSet& best, int restart, int iterations) {
  Optimum opt;
  std::tie(opt.phi1, opt.phi2) = prob.probes(best);
  opt.lhs = evaluate_target(prob.rho, prob.target, opt.phi1, opt.phi2).lhs;
  opt.restart = restart;
  opt.iterations = iterations;
  return opt;
}

}  // namespace

CriterionReport<double> evaluate_target(const DensityMatrixd& rho, const OptimizationTarget& target,
                                        const ProductVectord& phi1, const ProductVectord& phi2) {
  switch (target.criterion) {
    case CriterionId::I:
      if (!target.part) throw PreconditionError("evaluate_target: criterion I needs a bipartition");
      return criterion_I(rho, *target.part, phi1, phi2);
    case CriterionId::II:
      return criterion_II(rho, phi1, phi2);
    case CriterionId::III:
      if (phi1.parties() != 1 || phi2.parties() != 1) {
        throw DimensionError("evaluate_target: criterion III probes are single local vectors x, y");
      }
      return criterion_III(rho, phi1.local(0), phi2.local(0));
    default:
      throw PreconditionError("evaluate_target: criterion has no probes");
  }
}

Optimum best_basis_probes(const DensityMatrixd& rho, const OptimizationTarget& target, const OptimizerConfig& config) {
  config.check();
  const Problem prob(rho, target);
  const auto ranked = ranked_basis(prob, config);
  if (ranked.empty()) throw PreconditionError("best_basis_probes: empty basis budget");
  return to_optimum(prob, ranked.front().locals, 0, 0);
}

Optimum optimize_violation(const DensityMatrixd& rho, const OptimizationTarget& target, const OptimizerConfig& config) {
  config.check();
  const Problem prob(rho, target);
  const auto dims = prob.local_dims();
  const auto ranked = ranked_basis(prob, config);
  const std::size_t seeded = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(config.basis_starts));
  // Growth on acceptance; the step is stationary near a 1/5 acceptance rate.
  const double growth = std::pow(config.step_decay, -4);

  LocalSet best;
  double best_value = -std::numeric_limits<double>::infinity();
  int best_restart = 0, best_iters = 0;
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng = make_rng(config.seed, static_cast<std::uint64_t>(r));
    LocalSet cur;
    if (static_cast<std::size_t>(r) < seeded) {
      cur = ranked[static_cast<std::size_t>(r)].locals;
    } else {
      for (int d : dims) cur.push_back(random_unit_vector(d, rng));
    }
    double cur_value = prob.value(cur);
    double step = config.initial_step;
    std::uniform_int_distribution<std::size_t> pick(0, cur.size() - 1);
    int used = 0;
    for (; used < config.iterations && step >= config.convergence_tol; ++used) {
      const std::size_t k = pick(rng);
      const CVectord old = cur[k];
      CVectord dir = gaussian_vector(old.size(), rng);
      dir -= old * old.dot(dir);
      const double nrm = dir.norm();
      if (nrm == 0) continue;
      CVectord moved = old + (step / nrm) * dir;
      cur[k] = moved / moved.norm();
      const double v = prob.value(cur);
      if (v > cur_value) {
        cur_value = v;
        step = std::min(step * growth, config.initial_step);
      } else {
        cur[k] = old;
        step *= config.step_decay;
      }
    }
    if (cur_value > best_value) {
      best_value = cur_value;
      best = cur;
      best_restart = r;
      best_iters = used;
    }
  }
  return to_optimum(prob, best, best_restart, best_iters);
}

double threshold_bisect(const std::function<double(double)>& lhs_at, double lo, double hi, double tol) {
  if (!(tol > 0)) throw PreconditionError("threshold_bisect: tol must be positive");
  auto detected = [&](double t) { return lhs_at(t) > decision_tol; };
  const bool at_lo = detected(lo);
  if (at_lo == detected(hi)) {
    throw BracketError(std::string("threshold_bisect: detection status is ") + (at_lo ? "violated" : "not violated") +
                       " at both ends of the bracket");
  }
  while (std::abs(hi - lo) > tol) {
    const double mid = 0.5 * (lo + hi);
    if (detected(mid) == at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gme
