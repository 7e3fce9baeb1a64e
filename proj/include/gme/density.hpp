#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "gme/tensor_core.hpp"

namespace gme {

struct ValidationReport {
  double hermiticity_deviation = 0;
  double trace_deviation = 0;
  double min_eigenvalue = 0;
  bool square = true;
  bool hermitian = true;
  bool unit_trace = true;
  bool positive = true;

  bool ok() const { return square && hermitian && unit_trace && positive; }

  std::string describe() const {
    if (!square) return "matrix is not square or does not match dims";
    std::ostringstream os;
    os.precision(3);
    const char* sep = "";
    if (!hermitian) {
      os << "Hermiticity failed (max |M - M^H| = " << hermiticity_deviation << ")";
      sep = "; ";
    }
    if (!unit_trace) {
      os << sep << "trace failed (|tr M - 1| = " << trace_deviation << ")";
      sep = "; ";
    }
    if (!positive) os << sep << "PSD failed (min eigenvalue = " << min_eigenvalue << ")";
    return ok() ? std::string("ok") : os.str();
  }
};

/// Checks Hermiticity, unit trace and positivity against the library
/// tolerances. Never throws; failures are reported.
template <typename Real>
ValidationReport validate(const CMatrix<Real>& m) {
  ValidationReport rep;
  if (m.rows() != m.cols() || m.size() == 0) {
    rep.square = rep.hermitian = rep.unit_trace = rep.positive = false;
    return rep;
  }
  rep.hermiticity_deviation = static_cast<double>(hermiticity_deviation(m));
  rep.hermitian = rep.hermiticity_deviation <= Tolerances::herm;
  const Complex<Real> tr = m.trace();
  rep.trace_deviation = static_cast<double>(std::abs(tr - Complex<Real>(1)));
  rep.unit_trace = rep.trace_deviation <= Tolerances::trace;
  // Eigenvalues of the Hermitian part; a non-Hermitian input already fails.
  const CMatrix<Real> herm = (m + m.adjoint()) / Real(2);
  rep.min_eigenvalue = static_cast<double>(hermitian_eigenvalues(herm).minCoeff());
  rep.positive = rep.min_eigenvalue >= -Tolerances::psd;
  return rep;
}

template <typename Real>
ValidationReport validate(const CMatrix<Real>& m, const LocalDims& dims) {
  if (m.rows() != dims.total()) {
    ValidationReport rep;
    rep.square = rep.hermitian = rep.unit_trace = rep.positive = false;
    return rep;
  }
  return validate(m);
}

/// A validated density matrix together with its local dimensions.
template <typename Real = double>
class DensityMatrix {
 public:
  using Scalar = Complex<Real>;

  DensityMatrix(LocalDims dims, CMatrix<Real> mat) : dims_(std::move(dims)), mat_(std::move(mat)) {
    const auto rep = validate(mat_, dims_);
    if (!rep.ok()) throw ValidationError("invalid density matrix: " + rep.describe());
  }

  const LocalDims& dims() const { return dims_; }
  const CMatrix<Real>& matrix() const { return mat_; }
  Index dim() const { return dims_.total(); }
  int parties() const { return dims_.parties(); }
  Scalar operator()(Index r, Index c) const { return mat_(r, c); }

  template <typename Other>
  DensityMatrix<Other> cast() const {
    return DensityMatrix<Other>(dims_, mat_.template cast<Complex<Other>>());
  }

 private:
  LocalDims dims_;
  CMatrix<Real> mat_;
};

using DensityMatrixd = DensityMatrix<double>;

template <typename Real>
CMatrix<Real> partial_transpose(const DensityMatrix<Real>& rho, PartyMask mask) {
  return partial_transpose(rho.matrix(), rho.dims(), mask);
}

}  // namespace gme
