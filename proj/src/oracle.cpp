#include "gme/oracle.hpp"

#include <cmath>

namespace gme::oracle {

namespace {

Index copied_dim(const LocalDims& dims, int m) {
  Index total = 1;
  for (int i = 0; i < m; ++i) {
    if (total > Capacity::max_oracle_entries / dims.total()) throw CapacityError("oracle: copied space too large");
    total *= dims.total();
  }
  if (total > 0 && total > Capacity::max_oracle_entries / total) {
    throw CapacityError("oracle: operator on the copied space exceeds " +
                        std::to_string(Capacity::max_oracle_entries) + " entries");
  }
  return total;
}

double expectation(const CVectord& bra, const CMatrixd& op, const CVectord& ket) {
  return std::abs(bra.dot(op * ket));
}

}  // namespace

CMatrixd permutation_operator(const LocalDims& dims, const PermutationSpec& spec) {
  if (spec.m < 2) throw PreconditionError("permutation_operator: m >= 2 required");
  if (spec.subset & ~dims.full_mask()) throw PreconditionError("permutation_operator: subset outside party range");
  const Index total = copied_dim(dims, spec.m);
  const Index d = dims.total();
  const auto off = masked_offsets(dims, spec.subset);
  const auto m = static_cast<std::size_t>(spec.m);
  CMatrixd op = CMatrixd::Zero(total, total);
  std::vector<Index> copy(m);
  for (Index in = 0; in < total; ++in) {
    Index rest = in;
    for (std::size_t i = m; i-- > 0;) {
      copy[i] = rest % d;
      rest /= d;
    }
    Index out = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Index own = copy[i];
      const Index next = copy[(i + 1) % m];
      out = out * d + (own - off[static_cast<std::size_t>(own)]) + off[static_cast<std::size_t>(next)];
    }
    op(out, in) = 1.0;
  }
  return op;
}

CMatrixd tensor_power(const CMatrixd& rho, int m) {
  if (m < 1) throw PreconditionError("tensor_power: m >= 1 required");
  CMatrixd out = rho;
  for (int i = 1; i < m; ++i) out = kron(out, rho);
  return out;
}

CVectord copies_vector(std::span<const ProductVectord> copies) {
  CVectord out = CVectord::Ones(1);
  for (const auto& c : copies) out = kron(out, c.expand());
  return out;
}

double m_linear_naive(const DensityMatrixd& rho, const Bipartition& part, std::span<const ProductVectord> copies) {
  const int m = static_cast<int>(copies.size());
  if (m < 2) throw PreconditionError("m_linear_naive: at least two copies required");
  const LocalDims& dims = rho.dims();
  copied_dim(dims, m);
  const CVectord phi = copies_vector(copies);
  const CMatrixd power = tensor_power(rho.matrix(), m);
  const CMatrixd pi_a = permutation_operator(dims, {m, part.mask()});
  const CMatrixd pi_b = permutation_operator(dims, {m, part.complement()});
  const CVectord shifted_a = pi_a * phi;
  const CVectord shifted_b = pi_b * phi;
  const std::complex<double> cross = shifted_b.dot(power * shifted_a);
  const double diag = phi.dot(power * phi).real();
  return std::sqrt(std::abs(cross.real())) - std::sqrt(std::max(diag, 0.0));
}

double criterion_I_naive(const DensityMatrixd& rho, const Bipartition& part, const ProductVectord& phi1,
                         const ProductVectord& phi2) {
  const std::vector<ProductVectord> copies{phi1, phi2};
  return m_linear_naive(rho, part, copies);
}

double criterion_II_naive(const DensityMatrixd& rho, const ProductVectord& phi1, const ProductVectord& phi2) {
  const LocalDims& dims = rho.dims();
  copied_dim(dims, 2);
  const std::vector<ProductVectord> copies{phi1, phi2};
  const CVectord phi = copies_vector(copies);
  const CMatrixd power = tensor_power(rho.matrix(), 2);
  const CMatrixd global = permutation_operator(dims, {2, dims.full_mask()});
  double lhs = std::sqrt(expectation(phi, power, global * phi));
  for (const auto& part : enumerate_bipartitions(dims.parties())) {
    const CVectord moved = permutation_operator(dims, {2, part.mask()}) * phi;
    lhs -= std::sqrt(expectation(moved, power, moved));
  }
  return lhs;
}

double criterion_III_naive(const DensityMatrixd& rho, const CVectord& x, const CVectord& y) {
  const LocalDims& dims = rho.dims();
  const int n = dims.parties();
  copied_dim(dims, 2);
  const CMatrixd power = tensor_power(rho.matrix(), 2);
  const CMatrixd global = permutation_operator(dims, {2, dims.full_mask()});
  std::vector<CMatrixd> single;
  for (int i = 0; i < n; ++i) single.push_back(permutation_operator(dims, {2, PartyMask{1} << i}));
  auto s = [&](int i) {
    std::vector<CVectord> locals(static_cast<std::size_t>(n), x);
    locals[static_cast<std::size_t>(i)] = y;
    return ProductVectord::normalized(std::move(locals));
  };
  double first = 0, second = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::vector<ProductVectord> copies{s(i), s(j)};
      const CVectord phi = copies_vector(copies);
      if (i != j) first += std::sqrt(expectation(phi, power, global * phi));
      const CVectord moved = single[static_cast<std::size_t>(i)] * phi;
      second += std::sqrt(expectation(moved, power, moved));
    }
  }
  return first - (n - 2) * second;
}

DensityMatrixd random_density(const LocalDims& dims, Rng& rng) {
  const Index d = dims.total();
  CMatrixd g(d, d);
  for (Index c = 0; c < d; ++c) g.col(c) = gaussian_vector(d, rng);
  CMatrixd rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Exact Hermitian symmetrization against round-off.
  const CMatrixd herm = (rho + rho.adjoint()) / 2.0;
  return DensityMatrixd(dims, herm);
}

CVectord random_biseparable_vector(const LocalDims& dims, const Bipartition& part, Rng& rng) {
  const auto a_dims = dims.select(part.mask());
  const auto b_dims = dims.select(part.complement());
  Index da = 1, db = 1;
  for (int v : a_dims) da *= v;
  for (int v : b_dims) db *= v;
  const CVectord a = random_unit_vector(da, rng);
  const CVectord b = random_unit_vector(db, rng);
  CVectord full(dims.total());
  for (Index f = 0; f < dims.total(); ++f) {
    const auto idx = multi_index(dims, f);
    Index ia = 0, ib = 0;
    for (int k = 0; k < dims.parties(); ++k) {
      if (part.in_a(k)) {
        ia = ia * dims[k] + idx[static_cast<std::size_t>(k)];
      } else {
        ib = ib * dims[k] + idx[static_cast<std::size_t>(k)];
      }
    }
    full(f) = a(ia) * b(ib);
  }
  return full;
}

DensityMatrixd sample_biseparable(const LocalDims& dims, std::optional<Bipartition> part, int k, std::uint64_t seed) {
  if (k < 1) throw PreconditionError("sample_biseparable: k >= 1 required");
  Rng rng = make_rng(seed);
  const auto cuts = enumerate_bipartitions(dims.parties());
  std::uniform_int_distribution<std::size_t> pick(0, cuts.size() - 1);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(k));
  double total = 0;
  for (auto& v : w) total += (v = expo(rng));
  CMatrixd acc = CMatrixd::Zero(dims.total(), dims.total());
  for (int j = 0; j < k; ++j) {
    const Bipartition& cut = part ? *part : cuts[pick(rng)];
    const CVectord v = random_biseparable_vector(dims, cut, rng);
    acc += (w[static_cast<std::size_t>(j)] / total) * (v * v.adjoint());
  }
  const CMatrixd herm = (acc + acc.adjoint()) / 2.0;
  return DensityMatrixd(dims, herm);
}

OracleSummary oracle_check(int n, int d, int m, int trials, std::uint64_t seed, double tol) {
  if (n < 2 || d < 2 || m < 2 || trials < 1) throw PreconditionError("oracle_check: need n, d, m >= 2 and trials >= 1");
  const LocalDims dims = LocalDims::uniform(d, n);
  copied_dim(dims, m);
  const auto cuts = enumerate_bipartitions(n);
  OracleSummary sum;
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
    const DensityMatrixd rho = random_density(dims, rng);
    std::uniform_int_distribution<std::size_t> pick(0, cuts.size() - 1);
    const Bipartition& cut = cuts[pick(rng)];
    std::vector<ProductVectord> copies;
    for (int i = 0; i < m; ++i) copies.push_back(random_product(dims, rng));

    const double mlin = std::abs(m_linear(rho, cut, std::span<const ProductVectord>(copies)).lhs -
                                 m_linear_naive(rho, cut, copies));
    sum.max_dev_mlin = std::max(sum.max_dev_mlin, mlin);
    if (m == 2) {
      const double dev_i =
          std::abs(criterion_I(rho, cut, copies[0], copies[1]).lhs - criterion_I_naive(rho, cut, copies[0], copies[1]));
      const double dev_ii =
          std::abs(criterion_II(rho, copies[0], copies[1]).lhs - criterion_II_naive(rho, copies[0], copies[1]));
      sum.max_dev_I = std::max(sum.max_dev_I, dev_i);
      sum.max_dev_II = std::max(sum.max_dev_II, dev_ii);
      if (n >= 3) {
        const CVectord x = random_unit_vector(d, rng);
        const CVectord y = random_unit_vector(d, rng);
        sum.max_dev_III =
            std::max(sum.max_dev_III, std::abs(criterion_III(rho, x, y).lhs - criterion_III_naive(rho, x, y)));
      }
    }
    ++sum.cases;
  }
  sum.max_deviation = std::max({sum.max_dev_I, sum.max_dev_II, sum.max_dev_III, sum.max_dev_mlin});
  sum.passed = sum.max_deviation < tol;
  return sum;
}

}  // namespace gme::oracle
