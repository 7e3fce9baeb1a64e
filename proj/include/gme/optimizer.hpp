#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gme/criteria.hpp"
#include "gme/sampling.hpp"

namespace gme {

/// Greedy random-tangent hill climbing with geometric step decay. A step is
/// accepted only if it strictly increases the objective. Every rejection
/// multiplies the step by `step_decay`; every acceptance divides it by
/// `step_decay`^4, capped at `initial_step`. A restart ends after `iterations`
/// proposals or once the step drops below `convergence_tol`.
struct OptimizerConfig {
  int restarts = 32;
  int iterations = 500;
  double initial_step = 0.3;
  double step_decay = 0.95;
  double convergence_tol = 1e-9;
  std::uint64_t seed = 42;
  // Basis probe pairs scored before climbing; beyond the budget a seeded
  // random subset is scored instead of all of them.
  int basis_budget = 4096;
  // The best `basis_starts` basis pairs seed the first restarts.
  int basis_starts = 8;

  void check() const;
};

/// Which criterion the probes are tuned for. For I a cut is required. For
/// III the search runs over the two local vectors x, y; the optimum then
/// stores phi1 = (x) and phi2 = (y) as single-factor product vectors.
struct OptimizationTarget {
  CriterionId criterion = CriterionId::II;
  std::optional<Bipartition> part;
};

struct Optimum {
  ProductVectord phi1;
  ProductVectord phi2;
  double lhs = 0;
  int restart = 0;
  int iterations = 0;
};

/// Evaluates the target criterion at explicit probes (see OptimizationTarget).
CriterionReport<double> evaluate_target(const DensityMatrixd& rho, const OptimizationTarget& target,
                                        const ProductVectord& phi1, const ProductVectord& phi2);

/// Best probe pair found over all restarts; deterministic for a given seed.
/// Restart r draws from make_rng(seed, r) and its start does not depend on
/// the total restart count, so the result is monotone in `restarts`.
Optimum optimize_violation(const DensityMatrixd& rho, const OptimizationTarget& target,
                           const OptimizerConfig& config = {});

/// Best value over basis probe pairs (or the seeded budget subset of them).
Optimum best_basis_probes(const DensityMatrixd& rho, const OptimizationTarget& target,
                          const OptimizerConfig& config = {});

/// Bisects for the point where the detection status `lhs_at(t) > decision_tol`
/// flips between lo and hi. Assumes a single crossing on [lo, hi]. The
/// returned midpoint is within tol/2 of the last bracket.
double threshold_bisect(const std::function<double(double)>& lhs_at, double lo, double hi, double tol);

}  // namespace gme
