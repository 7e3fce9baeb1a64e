#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gme/density.hpp"

namespace gme {

/// A fully separable vector |v_1> (x) ... (x) |v_n>, one normalized local
/// vector per party.
template <typename Real = double>
class ProductVector {
 public:
  using Local = CVector<Real>;

  ProductVector() = default;

  explicit ProductVector(std::vector<Local> locals) : locals_(std::move(locals)) {
    for (std::size_t k = 0; k < locals_.size(); ++k) {
      if (locals_[k].size() < 1) throw DimensionError("ProductVector: empty local vector");
      if (std::abs(locals_[k].norm() - Real(1)) > Real(Tolerances::normalization)) {
        throw ValidationError("ProductVector: local vector " + std::to_string(k) + " is not normalized");
      }
    }
  }

  /// Normalizes each local vector; a zero local is an error.
  static ProductVector normalized(std::vector<Local> locals) {
    for (auto& v : locals) {
      const Real nrm = v.norm();
      if (nrm == Real(0)) throw ValidationError("ProductVector: zero local vector");
      v /= nrm;
    }
    return ProductVector(std::move(locals));
  }

  /// Computational-basis product state |levels_1 ... levels_n>.
  static ProductVector basis(const LocalDims& dims, std::span<const int> levels) {
    if (static_cast<int>(levels.size()) != dims.parties()) throw DimensionError("ProductVector::basis: level count");
    std::vector<Local> locals;
    for (int k = 0; k < dims.parties(); ++k) {
      const int l = levels[static_cast<std::size_t>(k)];
      if (l < 0 || l >= dims[k]) throw IndexError("ProductVector::basis: level out of range");
      locals.push_back(Local::Unit(dims[k], l));
    }
    return ProductVector(std::move(locals));
  }

  static ProductVector basis(const LocalDims& dims, std::initializer_list<int> levels) {
    return basis(dims, std::span<const int>(levels.begin(), levels.size()));
  }

  /// |level ... level>.
  static ProductVector uniform_basis(const LocalDims& dims, int level) {
    return basis(dims, std::vector<int>(static_cast<std::size_t>(dims.parties()), level));
  }

  int parties() const { return static_cast<int>(locals_.size()); }
  const Local& local(int k) const { return locals_[static_cast<std::size_t>(k)]; }
  Local& local(int k) { return locals_[static_cast<std::size_t>(k)]; }
  const std::vector<Local>& locals() const { return locals_; }

  bool matches(const LocalDims& dims) const {
    if (parties() != dims.parties()) return false;
    for (int k = 0; k < parties(); ++k) {
      if (local(k).size() != dims[k]) return false;
    }
    return true;
  }

  /// Full D-dimensional vector (Kronecker product of the locals).
  Local expand() const {
    Index total = 1;
    for (const auto& v : locals_) total *= v.size();
    Local out(total);
    out(0) = Complex<Real>(1);
    Index len = 1;
    // In place, back to front: slot i*d+c >= i, so out(i) is read before it is overwritten.
    for (const auto& v : locals_) {
      const Index d = v.size();
      for (Index i = len; i-- > 0;) {
        const Complex<Real> a = out(i);
        for (Index c = d; c-- > 0;) out(i * d + c) = a * v(c);
      }
      len *= d;
    }
    return out;
  }

  /// Number of non-zero entries of the expanded vector.
  Index nonzero_count() const {
    Index count = 1;
    for (const auto& v : locals_) count *= (v.array() != Complex<Real>(0)).count();
    return count;
  }

  /// Non-zero entries (flat index, amplitude) of the expanded vector.
  std::vector<std::pair<Index, Complex<Real>>> nonzeros() const {
    std::vector<std::pair<Index, Complex<Real>>> cur{{0, Complex<Real>(1)}};
    std::vector<std::pair<Index, Complex<Real>>> next;
    for (const auto& v : locals_) {
      next.clear();
      for (const auto& [idx, amp] : cur) {
        for (Index c = 0; c < v.size(); ++c) {
          if (v(c) != Complex<Real>(0)) next.emplace_back(idx * v.size() + c, amp * v(c));
        }
      }
      std::swap(cur, next);
    }
    return cur;
  }

  /// Compact label: "|0 1 1>" for basis states, "product(n)" otherwise.
  std::string describe() const {
    std::ostringstream os;
    os << '|';
    for (int k = 0; k < parties(); ++k) {
      Index hot = -1;
      for (Index c = 0; c < local(k).size(); ++c) {
        if (std::abs(local(k)(c)) > Real(1) - Real(1e-12)) hot = c;
      }
      if (hot < 0) return "product(" + std::to_string(parties()) + ")";
      os << (k ? " " : "") << hot;
    }
    os << '>';
    return os.str();
  }

 private:
  std::vector<Local> locals_;
};

using ProductVectord = ProductVector<double>;

/// <bra|rho|ket> contracted directly against the single-copy matrix.
/// Cost is nnz(bra) * min(nnz(ket), D), so basis probes are O(1).
template <typename Real>
Complex<Real> product_matrix_element(const DensityMatrix<Real>& rho, const ProductVector<Real>& bra,
                                     const ProductVector<Real>& ket) {
  if (!bra.matches(rho.dims()) || !ket.matches(rho.dims())) {
    throw DimensionError("product_matrix_element: probe dimensions do not match the state");
  }
  const auto& m = rho.matrix();
  const Index dim = rho.dim();
  const Index nb = bra.nonzero_count();
  const Index nk = ket.nonzero_count();
  if (nb == dim && nk == dim) return bra.expand().dot(m * ket.expand());
  const auto b = bra.nonzeros();
  Complex<Real> acc(0);
  if (nk * 4 < dim) {
    const auto k = ket.nonzeros();
    for (const auto& [i, bi] : b) {
      Complex<Real> row(0);
      for (const auto& [j, kj] : k) row += m(i, j) * kj;
      acc += std::conj(bi) * row;
    }
  } else {
    const CVector<Real> kfull = ket.expand();
    for (const auto& [i, bi] : b) acc += std::conj(bi) * (m.row(i).transpose().array() * kfull.array()).sum();
  }
  return acc;
}

/// <v|rho|v>, real by Hermiticity.
template <typename Real>
Real product_expectation(const DensityMatrix<Real>& rho, const ProductVector<Real>& v) {
  return product_matrix_element(rho, v, v).real();
}

}  // namespace gme
