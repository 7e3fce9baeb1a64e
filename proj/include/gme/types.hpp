#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace gme {

// Dense complex types, row-major so that flat indices match the mixed-radix
// party ordering (party 1 most significant).
template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

using CMatrixd = CMatrix<double>;
using CVectord = CVector<double>;

using Index = std::int64_t;

// Bit k set <=> party k (0-based) is selected.
using PartyMask = std::uint32_t;

struct Tolerances {
  static constexpr double herm = 1e-10;
  static constexpr double trace = 1e-10;
  static constexpr double psd = 1e-9;
  static constexpr double eig = 1e-10;
  static constexpr double normalization = 1e-10;
};

// lhs > decision_tol counts as a violation; ties resolve to "not violated".
inline constexpr double decision_tol = 1e-9;

struct Capacity {
  static constexpr Index max_dim = Index{1} << 14;          // single density matrix
  static constexpr Index max_oracle_entries = Index{1} << 20;  // per copied-space operator
  static constexpr int max_parties_enumerated = 20;
};

}  // namespace gme
