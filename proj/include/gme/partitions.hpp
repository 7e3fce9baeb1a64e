#pragma once

#include <algorithm>
#include <bit>
#include <string>
#include <utility>
#include <vector>

#include "gme/product_vector.hpp"

namespace gme {

/// A split A|B of n parties. The canonical representative has party 1 in A,
/// so A and its complement describe the same cut only once.
class Bipartition {
 public:
  Bipartition() = default;

  /// From a mask over 0-based parties. Requires canonical form.
  Bipartition(int parties, PartyMask subset_a) : n_(parties), mask_(subset_a) {
    if (parties < 2 || parties > 31) throw PreconditionError("Bipartition: need 2..31 parties");
    const PartyMask full = (PartyMask{1} << parties) - 1;
    if (mask_ == 0 || (mask_ & ~full)) throw PreconditionError("Bipartition: A must be a non-empty subset");
    if (mask_ == full) throw PreconditionError("Bipartition: B must be non-empty");
    if (!(mask_ & 1u)) throw PreconditionError("Bipartition: canonical form requires party 1 in A");
  }

  /// From 1-based party labels, e.g. {1, 3}. Non-canonical input (party 1 in
  /// B) is replaced by its complement.
  static Bipartition from_parties(int parties, std::span<const int> a_one_based) {
    PartyMask m = 0;
    for (int p : a_one_based) {
      if (p < 1 || p > parties) throw PreconditionError("Bipartition: party label out of range");
      m |= PartyMask{1} << (p - 1);
    }
    const PartyMask full = parties >= 32 ? ~PartyMask{0} : (PartyMask{1} << parties) - 1;
    if (m != 0 && m != full && !(m & 1u)) m = full & ~m;
    return Bipartition(parties, m);
  }

  static Bipartition from_parties(int parties, std::initializer_list<int> a_one_based) {
    return from_parties(parties, std::span<const int>(a_one_based.begin(), a_one_based.size()));
  }

  int parties() const { return n_; }
  PartyMask mask() const { return mask_; }
  PartyMask complement() const { return ((PartyMask{1} << n_) - 1) & ~mask_; }
  bool in_a(int party) const { return (mask_ >> party) & 1u; }
  int size_a() const { return std::popcount(mask_); }

  std::vector<int> parties_a() const { return labels(mask_); }
  std::vector<int> parties_b() const { return labels(complement()); }

  /// "A={1,3}|B={2}".
  std::string to_string() const { return "A=" + render(parties_a()) + "|B=" + render(parties_b()); }

  friend bool operator==(const Bipartition& a, const Bipartition& b) { return a.n_ == b.n_ && a.mask_ == b.mask_; }

 private:
  std::vector<int> labels(PartyMask m) const {
    std::vector<int> out;
    for (int k = 0; k < n_; ++k) {
      if ((m >> k) & 1u) out.push_back(k + 1);
    }
    return out;
  }
  static std::string render(const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
  }

  int n_ = 0;
  PartyMask mask_ = 0;
};

/// All 2^(n-1) - 1 canonical bipartitions, ordered by |A| and then
/// lexicographically by the sorted party labels of A.
inline std::vector<Bipartition> enumerate_bipartitions(int n) {
  if (n < 2) throw PreconditionError("enumerate_bipartitions: n >= 2 required");
  if (n > Capacity::max_parties_enumerated) {
    throw CapacityError("enumerate_bipartitions: n exceeds " + std::to_string(Capacity::max_parties_enumerated));
  }
  const PartyMask full = (PartyMask{1} << n) - 1;
  std::vector<PartyMask> masks;
  masks.reserve((std::size_t{1} << (n - 1)) - 1);
  for (PartyMask rest = 0; rest < (PartyMask{1} << (n - 1)); ++rest) {
    const PartyMask m = (rest << 1) | 1u;
    if (m != full) masks.push_back(m);
  }
  // Lexicographic order on sorted labels equals reverse order on bit-reversed masks.
  auto key = [n](PartyMask m) {
    PartyMask r = 0;
    for (int k = 0; k < n; ++k) {
      if ((m >> k) & 1u) r |= PartyMask{1} << (n - 1 - k);
    }
    return r;
  };
  std::sort(masks.begin(), masks.end(), [&](PartyMask a, PartyMask b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return key(a) > key(b);
  });
  std::vector<Bipartition> out;
  out.reserve(masks.size());
  for (PartyMask m : masks) out.emplace_back(n, m);
  return out;
}

/// Exchanges the A-side locals between two probe copies, i.e. applies the
/// swap on the A factors of the doubled space to |phi1>|phi2>.
template <typename Real>
std::pair<ProductVector<Real>, ProductVector<Real>> swap_on_subset(const ProductVector<Real>& phi1,
                                                                   const ProductVector<Real>& phi2,
                                                                   const Bipartition& part) {
  if (phi1.parties() != part.parties() || phi2.parties() != part.parties()) {
    throw DimensionError("swap_on_subset: probe party count does not match bipartition");
  }
  ProductVector<Real> t1 = phi1, t2 = phi2;
  for (int k = 0; k < part.parties(); ++k) {
    if (!part.in_a(k)) continue;
    if (phi1.local(k).size() != phi2.local(k).size()) throw DimensionError("swap_on_subset: local dims differ");
    t1.local(k) = phi2.local(k);
    t2.local(k) = phi1.local(k);
  }
  return {std::move(t1), std::move(t2)};
}

template <typename Real>
CMatrix<Real> partial_transpose(const DensityMatrix<Real>& rho, const Bipartition& part) {
  if (part.parties() != rho.parties()) throw DimensionError("partial_transpose: bipartition party count");
  return partial_transpose(rho.matrix(), rho.dims(), part.mask());
}

}  // namespace gme
