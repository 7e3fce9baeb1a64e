#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gme/criteria.hpp"
#include "gme/sampling.hpp"

namespace gme::oracle {

/// Cyclic shift of the `subset` factors across m copies of the system:
/// copy i receives what copy i+1 (mod m) held. Empty subset is the identity,
/// the full party set is the global permutation.
struct PermutationSpec {
  int m = 2;
  PartyMask subset = 0;
};

/// Explicit 0/1 matrix of the permutation on the m-copy space, copy 0 most
/// significant. Throws CapacityError above Capacity::max_oracle_entries.
CMatrixd permutation_operator(const LocalDims& dims, const PermutationSpec& spec);

/// rho (x) ... (x) rho, m factors.
CMatrixd tensor_power(const CMatrixd& rho, int m);

/// |c_0> (x) |c_1> (x) ... as a dense vector.
CVectord copies_vector(std::span<const ProductVectord> copies);

// Literal evaluations on the copied space.
double criterion_I_naive(const DensityMatrixd& rho, const Bipartition& part, const ProductVectord& phi1,
                         const ProductVectord& phi2);
double criterion_II_naive(const DensityMatrixd& rho, const ProductVectord& phi1, const ProductVectord& phi2);
double criterion_III_naive(const DensityMatrixd& rho, const CVectord& x, const CVectord& y);
double m_linear_naive(const DensityMatrixd& rho, const Bipartition& part, std::span<const ProductVectord> copies);

/// Random full-rank state G G^H / tr(G G^H) with complex Gaussian G.
DensityMatrixd random_density(const LocalDims& dims, Rng& rng);

/// Random pure state product across `part`, as a full-system vector.
CVectord random_biseparable_vector(const LocalDims& dims, const Bipartition& part, Rng& rng);

/// sum_j p_j |a_j b_j><a_j b_j|, each term product across `part` or, when
/// no partition is given, across an independently drawn random cut.
/// Weights are uniform on the simplex. Deterministic per seed.
DensityMatrixd sample_biseparable(const LocalDims& dims, std::optional<Bipartition> part, int k, std::uint64_t seed);

struct OracleSummary {
  int cases = 0;
  double max_deviation = 0;
  double max_dev_I = 0;
  double max_dev_II = 0;
  double max_dev_III = 0;
  double max_dev_mlin = 0;
  bool passed = true;
};

inline constexpr double oracle_tol = 1e-10;

/// Fuzzes reduced evaluators against the naive ones on random states and
/// probes; case t uses the stream make_rng(seed, t). Passes if every
/// deviation is below tol.
OracleSummary oracle_check(int n, int d, int m, int trials, std::uint64_t seed, double tol = oracle_tol);

}  // namespace gme::oracle
