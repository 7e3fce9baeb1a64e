#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gme/errors.hpp"
#include "gme/types.hpp"

namespace gme {

/// Local Hilbert-space dimensions d_1..d_n of an n-partite system.
///
/// Flat indices are mixed-radix and row-major: party 1 (k = 0) is the most
/// significant digit. Every routine in the library uses this ordering.
class LocalDims {
 public:
  LocalDims() = default;

  explicit LocalDims(std::vector<int> dims, Index cap = Capacity::max_dim) : dims_(std::move(dims)) {
    if (dims_.empty()) throw DimensionError("LocalDims: at least one party required");
    if (dims_.size() > 31) throw CapacityError("LocalDims: more than 31 parties");
    strides_.assign(dims_.size(), 1);
    total_ = 1;
    for (std::size_t k = dims_.size(); k-- > 0;) {
      if (dims_[k] < 2) throw DimensionError("LocalDims: every local dimension must be >= 2");
      strides_[k] = total_;
      if (total_ > cap / dims_[k]) {
        throw CapacityError("LocalDims: total dimension exceeds cap " + std::to_string(cap));
      }
      total_ *= dims_[k];
    }
  }

  static LocalDims uniform(int d, int n, Index cap = Capacity::max_dim) {
    if (n < 1) throw DimensionError("LocalDims: at least one party required");
    return LocalDims(std::vector<int>(static_cast<std::size_t>(n), d), cap);
  }

  int parties() const { return static_cast<int>(dims_.size()); }
  int operator[](int k) const { return dims_[static_cast<std::size_t>(k)]; }
  Index total() const { return total_; }
  Index stride(int k) const { return strides_[static_cast<std::size_t>(k)]; }
  const std::vector<int>& values() const { return dims_; }

  /// Common local dimension if all parties share it.
  std::optional<int> uniform_dim() const {
    if (dims_.empty()) return std::nullopt;
    for (int d : dims_) {
      if (d != dims_.front()) return std::nullopt;
    }
    return dims_.front();
  }

  PartyMask full_mask() const { return parties() >= 32 ? ~PartyMask{0} : (PartyMask{1} << parties()) - 1; }

  /// Dimensions of the selected parties, in party order.
  std::vector<int> select(PartyMask mask) const {
    std::vector<int> out;
    for (int k = 0; k < parties(); ++k) {
      if (mask & (PartyMask{1} << k)) out.push_back(dims_[static_cast<std::size_t>(k)]);
    }
    return out;
  }

  friend bool operator==(const LocalDims& a, const LocalDims& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<Index> strides_;
  Index total_ = 0;
};

inline Index flat_index(const LocalDims& dims, std::span<const int> idx) {
  if (static_cast<int>(idx.size()) != dims.parties()) {
    throw IndexError("flat_index: multi-index has " + std::to_string(idx.size()) + " components, expected " +
                     std::to_string(dims.parties()));
  }
  Index flat = 0;
  for (int k = 0; k < dims.parties(); ++k) {
    const int i = idx[static_cast<std::size_t>(k)];
    if (i < 0 || i >= dims[k]) {
      throw IndexError("flat_index: component " + std::to_string(k) + " = " + std::to_string(i) +
                       " out of range [0, " + std::to_string(dims[k]) + ")");
    }
    flat += i * dims.stride(k);
  }
  return flat;
}

inline Index flat_index(const LocalDims& dims, std::initializer_list<int> idx) {
  return flat_index(dims, std::span<const int>(idx.begin(), idx.size()));
}

inline std::vector<int> multi_index(const LocalDims& dims, Index flat) {
  if (flat < 0 || flat >= dims.total()) throw IndexError("multi_index: flat index out of range");
  std::vector<int> idx(static_cast<std::size_t>(dims.parties()));
  for (int k = 0; k < dims.parties(); ++k) {
    idx[static_cast<std::size_t>(k)] = static_cast<int>(flat / dims.stride(k));
    flat %= dims.stride(k);
  }
  return idx;
}

template <typename Real>
CMatrix<Real> kron(const CMatrix<Real>& a, const CMatrix<Real>& b,
                   Index max_entries = Capacity::max_oracle_entries) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows != 0 && cols > max_entries / rows) {
    throw CapacityError("kron: result would exceed " + std::to_string(max_entries) + " entries");
  }
  CMatrix<Real> out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Real>
CVector<Real> kron(const CVector<Real>& a, const CVector<Real>& b) {
  CVector<Real> out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Sum over masked parties of digit_k * stride_k, for every flat index.
inline std::vector<Index> masked_offsets(const LocalDims& dims, PartyMask mask) {
  std::vector<Index> out(static_cast<std::size_t>(dims.total()), 0);
  for (int k = 0; k < dims.parties(); ++k) {
    if (!(mask & (PartyMask{1} << k))) continue;
    const Index stride = dims.stride(k);
    const Index d = dims[k];
    for (Index f = 0; f < dims.total(); ++f) out[static_cast<std::size_t>(f)] += ((f / stride) % d) * stride;
  }
  return out;
}

/// Transpose of the row/column indices belonging to the masked parties.
template <typename Real>
CMatrix<Real> partial_transpose(const CMatrix<Real>& m, const LocalDims& dims, PartyMask mask) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("partial_transpose: matrix is not D x D for the given dims");
  }
  if (mask & ~dims.full_mask()) throw DimensionError("partial_transpose: party outside range");
  const auto off = masked_offsets(dims, mask);
  const Index n = dims.total();
  CMatrix<Real> out(n, n);
  for (Index r = 0; r < n; ++r) {
    const Index mr = off[static_cast<std::size_t>(r)];
    for (Index c = 0; c < n; ++c) {
      const Index mc = off[static_cast<std::size_t>(c)];
      out(r - mr + mc, c - mc + mr) = m(r, c);
    }
  }
  return out;
}

template <typename Real>
Real hermiticity_deviation(const CMatrix<Real>& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  if (m.size() == 0) return Real(0);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, 1> hermitian_eigenvalues(const CMatrix<Real>& m) {
  using ColMajor = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<ColMajor> solver(ColMajor(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

template <typename Real>
Real hermitian_min_eigenvalue(const CMatrix<Real>& m, Real tol_herm = Real(Tolerances::herm)) {
  if (m.rows() != m.cols() || m.size() == 0) throw DimensionError("hermitian_min_eigenvalue: matrix is not square");
  if (hermiticity_deviation(m) > tol_herm) {
    throw PreconditionError("hermitian_min_eigenvalue: input is not Hermitian");
  }
  return hermitian_eigenvalues(m).minCoeff();
}

}  // namespace gme
