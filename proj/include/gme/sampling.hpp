#pragma once

#include <cstdint>
#include <random>

#include "gme/partitions.hpp"

namespace gme {

using Rng = std::mt19937_64;

/// Deterministic stream for (seed, counter); used to give each restart, fuzz
/// case or grid cell its own generator.
inline Rng make_rng(std::uint64_t seed, std::uint64_t counter = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32)};
  return Rng(seq);
}

/// Complex standard normal vector; rotation invariant once normalized.
inline CVectord gaussian_vector(Index size, Rng& rng) {
  std::normal_distribution<double> normal;
  CVectord v(size);
  for (Index i = 0; i < size; ++i) v(i) = {normal(rng), normal(rng)};
  return v;
}

inline CVectord random_unit_vector(Index size, Rng& rng) {
  CVectord v = gaussian_vector(size, rng);
  return v / v.norm();
}

inline ProductVectord random_product(const LocalDims& dims, Rng& rng) {
  std::vector<CVectord> locals;
  for (int k = 0; k < dims.parties(); ++k) locals.push_back(random_unit_vector(dims[k], rng));
  return ProductVectord::normalized(std::move(locals));
}

}  // namespace gme
