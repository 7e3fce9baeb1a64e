#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "gme/density.hpp"

namespace gme::states {

/// |v><v| on the given dims. With normalize = false, v must already have
/// unit norm within 1e-10.
template <typename Real = double>
DensityMatrix<Real> pure_density(CVector<Real> v, const LocalDims& dims, bool normalize = false) {
  if (v.size() != dims.total()) throw DimensionError("pure_density: vector length does not match dims");
  const Real nrm = v.norm();
  if (nrm == Real(0)) throw ValidationError("pure_density: zero vector");
  if (normalize) {
    v /= nrm;
  } else if (std::abs(nrm - Real(1)) > Real(Tolerances::normalization)) {
    throw ValidationError("pure_density: vector is not normalized");
  }
  return DensityMatrix<Real>(dims, v * v.adjoint());
}

/// (1/sqrt d) sum_i |i>^{(x) n}.
template <typename Real = double>
CVector<Real> ghz_vector(int d, int n) {
  if (d < 2 || n < 2) throw PreconditionError("ghz: d >= 2 and n >= 2 required");
  const LocalDims dims = LocalDims::uniform(d, n);
  CVector<Real> v = CVector<Real>::Zero(dims.total());
  const Real amp = Real(1) / std::sqrt(Real(d));
  for (int i = 0; i < d; ++i) {
    v(flat_index(dims, std::vector<int>(static_cast<std::size_t>(n), i))) = amp;
  }
  return v;
}

template <typename Real = double>
DensityMatrix<Real> ghz(int d, int n) {
  CVector<Real> v = ghz_vector<Real>(d, n);
  return pure_density(v, LocalDims::uniform(d, n));
}

/// Equal superposition of the n single-excitation qubit states.
template <typename Real = double>
DensityMatrix<Real> w_state(int n) {
  if (n < 2) throw PreconditionError("w_state: n >= 2 required");
  const LocalDims dims = LocalDims::uniform(2, n);
  CVector<Real> v = CVector<Real>::Zero(dims.total());
  const Real amp = Real(1) / std::sqrt(Real(n));
  for (int k = 0; k < n; ++k) v(dims.stride(k)) = amp;
  return pure_density(v, dims);
}

/// |0><0|_A (x) |phi+><phi+|_BC on three qutrits, phi+ = (|00>+|11>+|22>)/sqrt 3.
template <typename Real = double>
DensityMatrix<Real> bisep_qutrit() {
  const LocalDims dims = LocalDims::uniform(3, 3);
  CVector<Real> v = CVector<Real>::Zero(dims.total());
  const Real amp = Real(1) / std::sqrt(Real(3));
  for (int k = 0; k < 3; ++k) v(flat_index(dims, {0, k, k})) = amp;
  return pure_density(v, dims);
}

/// sum_k (1/sqrt d) |k, k+x, k+i, k+i+x>, arithmetic mod d.
template <typename Real = double>
CVector<Real> shifted_ghz4(int d, int x, int i) {
  const LocalDims dims = LocalDims::uniform(d, 4);
  CVector<Real> v = CVector<Real>::Zero(dims.total());
  const Real amp = Real(1) / std::sqrt(Real(d));
  for (int k = 0; k < d; ++k) {
    v(flat_index(dims, {k, (k + x) % d, (k + i) % d, (k + i + x) % d})) += amp;
  }
  return v;
}

/// Weighted mixture sum_i w_i rho_i + (1 - sum_i w_i) I/D, validated.
template <typename Real = double>
DensityMatrix<Real> noise_mix(const std::vector<std::pair<Real, DensityMatrix<Real>>>& components,
                              const LocalDims& dims) {
  Real total(0);
  CMatrix<Real> acc = CMatrix<Real>::Zero(dims.total(), dims.total());
  for (const auto& [w, rho] : components) {
    if (!(w >= Real(0))) throw PreconditionError("noise_mix: weights must be non-negative");
    if (!(rho.dims() == dims)) throw DimensionError("noise_mix: component dims differ");
    total += w;
    acc += w * rho.matrix();
  }
  if (total > Real(1) + Real(1e-12)) throw PreconditionError("noise_mix: weights sum to more than 1");
  const Real rest = std::max(Real(0), Real(1) - total);
  acc.diagonal().array() += Complex<Real>(rest / Real(dims.total()));
  return DensityMatrix<Real>(dims, std::move(acc));
}

template <typename Real = double>
DensityMatrix<Real> maximally_mixed(const LocalDims& dims) {
  return noise_mix<Real>({}, dims);
}

/// Four-qudit family (1-a-b)/d^4 I + (a/d) sum_i P[shifted_ghz4(d,1,i)]
/// + (b/d) sum_i P[shifted_ghz4(d,2,i)], i = 0..d-1. At d = 2, a = b it is
/// the Smolin state mixed with white noise.
template <typename Real = double>
DensityMatrix<Real> smolin_family(int d, Real alpha, Real beta) {
  if (d < 2) throw PreconditionError("smolin_family: d >= 2 required");
  if (!(alpha >= Real(0)) || !(beta >= Real(0)) || alpha + beta > Real(1) + Real(1e-12)) {
    throw PreconditionError("smolin_family: need alpha, beta >= 0 and alpha + beta <= 1");
  }
  const LocalDims dims = LocalDims::uniform(d, 4);
  CMatrix<Real> acc = CMatrix<Real>::Zero(dims.total(), dims.total());
  for (int i = 0; i < d; ++i) {
    const CVector<Real> v1 = shifted_ghz4<Real>(d, 1, i);
    const CVector<Real> v2 = shifted_ghz4<Real>(d, 2, i);
    acc += (alpha / Real(d)) * (v1 * v1.adjoint());
    acc += (beta / Real(d)) * (v2 * v2.adjoint());
  }
  acc.diagonal().array() += Complex<Real>((Real(1) - alpha - beta) / Real(dims.total()));
  return DensityMatrix<Real>(dims, std::move(acc));
}

/// p |ghz><ghz| + (1-p) I/d^n.
template <typename Real = double>
DensityMatrix<Real> ghz_noise(int d, int n, Real p) {
  return noise_mix<Real>({{p, ghz<Real>(d, n)}}, LocalDims::uniform(d, n));
}

/// (p/2^n) I + (1-p) |W><W|.
template <typename Real = double>
DensityMatrix<Real> w_noise(int n, Real p) {
  return noise_mix<Real>({{Real(1) - p, w_state<Real>(n)}}, LocalDims::uniform(2, n));
}

/// (1-a-b)/8 I + a GHZ + b W on three qubits.
template <typename Real = double>
DensityMatrix<Real> ghz_w_mix(Real alpha, Real beta) {
  return noise_mix<Real>({{alpha, ghz<Real>(2, 3)}, {beta, w_state<Real>(3)}}, LocalDims::uniform(2, 3));
}

/// (1-a-b)/27 I + a bisep_qutrit + b GHZ(3,3).
template <typename Real = double>
DensityMatrix<Real> gghz_qutrit_mix(Real alpha, Real beta) {
  return noise_mix<Real>({{alpha, bisep_qutrit<Real>()}, {beta, ghz<Real>(3, 3)}}, LocalDims::uniform(3, 3));
}

}  // namespace gme::states
