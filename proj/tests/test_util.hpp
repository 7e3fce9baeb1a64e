#pragma once

#include <doctest.h>

#include "gme/oracle.hpp"
#include "gme/states.hpp"

namespace gme::test {

inline CMatrixd diag(std::initializer_list<double> values) {
  CMatrixd m = CMatrixd::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
  Index i = 0;
  for (double v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline CMatrixd random_matrix(Index rows, Index cols, Rng& rng) {
  CMatrixd m(rows, cols);
  for (Index c = 0; c < cols; ++c) m.col(c) = gaussian_vector(rows, rng);
  return m;
}

inline DensityMatrixd bell() {
  CVectord v = CVectord::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  return states::pure_density(v, LocalDims::uniform(2, 2));
}

inline DensityMatrixd product_state(const DensityMatrixd& a, const DensityMatrixd& b) {
  std::vector<int> dims = a.dims().values();
  dims.insert(dims.end(), b.dims().values().begin(), b.dims().values().end());
  return DensityMatrixd(LocalDims(dims), kron(a.matrix(), b.matrix()));
}

inline ProductVectord basis(const LocalDims& dims, std::initializer_list<int> levels) {
  return ProductVectord::basis(dims, levels);
}

}  // namespace gme::test
