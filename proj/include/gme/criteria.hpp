#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gme/partitions.hpp"

namespace gme {

enum class CriterionId { I, II, III, MLIN, PPT };

inline std::string to_string(CriterionId id) {
  switch (id) {
    case CriterionId::I: return "I";
    case CriterionId::II: return "II";
    case CriterionId::III: return "III";
    case CriterionId::MLIN: return "MLIN";
    case CriterionId::PPT: return "PPT";
  }
  return "?";
}

inline std::optional<CriterionId> parse_criterion(const std::string& s) {
  if (s == "I") return CriterionId::I;
  if (s == "II") return CriterionId::II;
  if (s == "III") return CriterionId::III;
  if (s == "MLIN") return CriterionId::MLIN;
  if (s == "PPT") return CriterionId::PPT;
  return std::nullopt;
}

template <typename Real = double>
struct ReportTerm {
  std::string label;
  Real value;  // signed contribution to lhs
};

/// Outcome of one criterion evaluation. lhs is the sum of the term
/// contributions; lhs > decision_tol certifies entanglement of the kind the
/// criterion tests for.
template <typename Real = double>
struct CriterionReport {
  CriterionId criterion = CriterionId::II;
  Real lhs = 0;
  bool violated = false;
  std::vector<ReportTerm<Real>> terms;
  std::string probe;
  std::string partition;  // only for bipartite criteria

  void add(std::string label, Real value) { terms.push_back({std::move(label), value}); }

  void finish() {
    lhs = Real(0);
    for (const auto& t : terms) lhs += t.value;
    violated = lhs > Real(decision_tol);
  }
};

namespace detail {

// Diagonal elements may come out at -1e-17 for PSD states; clamp before sqrt.
template <typename Real>
Real sqrt_product(Real a, Real b) {
  return std::sqrt(std::max(a, Real(0)) * std::max(b, Real(0)));
}

template <typename Real>
void check_probe(const DensityMatrix<Real>& rho, const ProductVector<Real>& v, const char* who) {
  if (!v.matches(rho.dims())) throw DimensionError(std::string(who) + ": probe dimensions do not match the state");
}

/// Copy with A-side locals from `a_src` and B-side locals from `b_src`.
template <typename Real>
ProductVector<Real> splice(const ProductVector<Real>& a_src, const ProductVector<Real>& b_src,
                           const Bipartition& part) {
  ProductVector<Real> out = b_src;
  for (int k = 0; k < part.parties(); ++k) {
    if (part.in_a(k)) out.local(k) = a_src.local(k);
  }
  return out;
}

template <typename Real>
ProductVector<Real> with_level(ProductVector<Real> base, int slot, const CVector<Real>& v) {
  base.local(slot) = v;
  return base;
}

// Term sinks for the evaluators below. Labels are passed as callables so the
// value-only path never builds strings; both sinks sum in the same order.
template <typename Real>
struct RecordTerms {
  CriterionReport<Real>& rep;
  template <typename Label>
  void operator()(Label&& label, Real value) {
    rep.add(label(), value);
  }
};

template <typename Real>
struct SumTerms {
  Real lhs = Real(0);
  template <typename Label>
  void operator()(Label&&, Real value) {
    lhs += value;
  }
};

}  // namespace detail

namespace detail {

template <typename Real, typename Sink>
void criterion_I_terms(const DensityMatrix<Real>& rho, const Bipartition& part, const ProductVector<Real>& phi1,
                       const ProductVector<Real>& phi2, Sink& sink) {
  check_probe(rho, phi1, "criterion_I");
  check_probe(rho, phi2, "criterion_I");
  if (part.parties() != rho.parties()) throw DimensionError("criterion_I: bipartition party count");
  const auto [t1, t2] = swap_on_subset(phi1, phi2, part);
  sink([] { return std::string("|<swap1|rho|swap2>|"); }, std::abs(product_matrix_element(rho, t1, t2)));
  sink([] { return std::string("-sqrt(<phi1|rho|phi1><phi2|rho|phi2>)"); },
       -sqrt_product(product_expectation(rho, phi1), product_expectation(rho, phi2)));
}

}  // namespace detail

/// Bipartite bilinear criterion for the cut `part`:
///   |<t1|rho|t2>| - sqrt(<phi1|rho|phi1><phi2|rho|phi2>) <= 0 if separable,
/// where (t1, t2) is (phi1, phi2) with the A-side locals exchanged.
template <typename Real>
CriterionReport<Real> criterion_I(const DensityMatrix<Real>& rho, const Bipartition& part,
                                  const ProductVector<Real>& phi1, const ProductVector<Real>& phi2) {
  CriterionReport<Real> rep;
  rep.criterion = CriterionId::I;
  rep.partition = part.to_string();
  detail::RecordTerms<Real> sink{rep};
  detail::criterion_I_terms(rho, part, phi1, phi2, sink);
  rep.probe = phi1.describe() + "," + phi2.describe();
  rep.finish();
  return rep;
}

/// lhs of criterion_I without the report.
template <typename Real>
Real criterion_I_lhs(const DensityMatrix<Real>& rho, const Bipartition& part, const ProductVector<Real>& phi1,
                     const ProductVector<Real>& phi2) {
  detail::SumTerms<Real> sink;
  detail::criterion_I_terms(rho, part, phi1, phi2, sink);
  return sink.lhs;
}

/// Builds the m probe copies alpha_i (x) beta_i of the m-linear criterion from
/// halves on A (parties of part.parties_a(), in order) and on B.
template <typename Real>
std::vector<ProductVector<Real>> assemble_copies(const Bipartition& part,
                                                 std::span<const ProductVector<Real>> alphas,
                                                 std::span<const ProductVector<Real>> betas) {
  if (alphas.size() != betas.size()) throw PreconditionError("assemble_copies: mismatched copy counts");
  const auto a_parties = part.parties_a();
  const auto b_parties = part.parties_b();
  std::vector<ProductVector<Real>> out;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (alphas[i].parties() != static_cast<int>(a_parties.size()) ||
        betas[i].parties() != static_cast<int>(b_parties.size())) {
      throw DimensionError("assemble_copies: half does not match its side of the bipartition");
    }
    std::vector<CVector<Real>> locals(static_cast<std::size_t>(part.parties()));
    for (std::size_t j = 0; j < a_parties.size(); ++j) locals[a_parties[j] - 1] = alphas[i].local(static_cast<int>(j));
    for (std::size_t j = 0; j < b_parties.size(); ++j) locals[b_parties[j] - 1] = betas[i].local(static_cast<int>(j));
    out.emplace_back(std::move(locals));
  }
  return out;
}

/// m-linear bipartite criterion in reduced form. Copy i of the probe is
/// copies[i] = alpha_i (x) beta_i; the cyclic shift sends copy i+1 into slot i:
///   sqrt|Re prod_i <a_i b_{i+1}|rho|a_{i+1} b_i>| - sqrt(prod_i <a_i b_i|rho|a_i b_i>).
template <typename Real>
CriterionReport<Real> m_linear(const DensityMatrix<Real>& rho, const Bipartition& part,
                               std::span<const ProductVector<Real>> copies) {
  const std::size_t m = copies.size();
  if (m < 2) throw PreconditionError("m_linear: at least two copies required");
  if (part.parties() != rho.parties()) throw DimensionError("m_linear: bipartition party count");
  for (const auto& c : copies) detail::check_probe(rho, c, "m_linear");
  Complex<Real> cyc(1);
  Real diag(1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& cur = copies[i];
    const auto& nxt = copies[(i + 1) % m];
    const auto bra = detail::splice(cur, nxt, part);
    const auto ket = detail::splice(nxt, cur, part);
    cyc *= product_matrix_element(rho, bra, ket);
    diag *= std::max(product_expectation(rho, cur), Real(0));
  }
  CriterionReport<Real> rep;
  rep.criterion = CriterionId::MLIN;
  rep.partition = part.to_string();
  rep.probe = "m=" + std::to_string(m);
  rep.add("sqrt|Re cyclic product|", std::sqrt(std::abs(cyc.real())));
  rep.add("-sqrt(product of diagonals)", -std::sqrt(diag));
  rep.finish();
  return rep;
}

template <typename Real>
CriterionReport<Real> m_linear(const DensityMatrix<Real>& rho, const Bipartition& part,
                               std::span<const ProductVector<Real>> alphas,
                               std::span<const ProductVector<Real>> betas) {
  const auto copies = assemble_copies(part, alphas, betas);
  return m_linear(rho, part, std::span<const ProductVector<Real>>(copies));
}

namespace detail {

template <typename Real, typename Sink>
void criterion_II_terms(const DensityMatrix<Real>& rho, const ProductVector<Real>& phi1,
                        const ProductVector<Real>& phi2, const std::vector<Bipartition>& parts, Sink& sink) {
  check_probe(rho, phi1, "criterion_II");
  check_probe(rho, phi2, "criterion_II");
  sink([] { return std::string("|<phi1|rho|phi2>|"); }, std::abs(product_matrix_element(rho, phi1, phi2)));
  for (const auto& part : parts) {
    const auto [t1, t2] = swap_on_subset(phi1, phi2, part);
    sink([&] { return "-K[" + part.to_string() + "]"; },
         -sqrt_product(product_expectation(rho, t1), product_expectation(rho, t2)));
  }
}

}  // namespace detail

/// Genuine-multipartite bilinear criterion:
///   |<phi1|rho|phi2>| - sum_parts sqrt(<t1|rho|t1><t2|rho|t2>) <= 0 if biseparable,
/// with (t1, t2) = swap_on_subset(phi1, phi2, part) over all canonical cuts.
/// `parts` may be supplied to avoid re-enumeration.
template <typename Real>
CriterionReport<Real> criterion_II(const DensityMatrix<Real>& rho, const ProductVector<Real>& phi1,
                                   const ProductVector<Real>& phi2,
                                   const std::vector<Bipartition>* parts = nullptr) {
  const auto all = parts ? std::vector<Bipartition>{} : enumerate_bipartitions(rho.parties());
  CriterionReport<Real> rep;
  rep.criterion = CriterionId::II;
  rep.terms.reserve((parts ? parts->size() : all.size()) + 1);
  detail::RecordTerms<Real> sink{rep};
  detail::criterion_II_terms(rho, phi1, phi2, parts ? *parts : all, sink);
  rep.probe = phi1.describe() + "," + phi2.describe();
  rep.finish();
  return rep;
}

/// lhs of criterion_II without the report; `parts` must be the canonical cuts.
template <typename Real>
Real criterion_II_lhs(const DensityMatrix<Real>& rho, const ProductVector<Real>& phi1,
                      const ProductVector<Real>& phi2, const std::vector<Bipartition>& parts) {
  detail::SumTerms<Real> sink;
  detail::criterion_II_terms(rho, phi1, phi2, parts, sink);
  return sink.lhs;
}

namespace detail {

template <typename Real, typename Sink>
void criterion_III_terms(const DensityMatrix<Real>& rho, const CVector<Real>& x, const CVector<Real>& y, Sink& sink) {
  const int n = rho.parties();
  if (n < 3) throw PreconditionError("criterion_III: n >= 3 required");
  const auto d = rho.dims().uniform_dim();
  if (!d) throw PreconditionError("criterion_III: uniform local dimension required");
  if (x.size() != *d || y.size() != *d) throw DimensionError("criterion_III: x/y dimension mismatch");
  const ProductVector<Real> all_x(std::vector<CVector<Real>>(static_cast<std::size_t>(n), x));
  std::vector<ProductVector<Real>> s;
  for (int i = 0; i < n; ++i) s.push_back(with_level(all_x, i, y));
  const Real base = product_expectation(rho, all_x);
  const Real coeff = Real(n - 2);
  // x_ij and y_ij are symmetric in (i, j) for Hermitian rho: evaluate each pair once.
  const auto un = static_cast<std::size_t>(n);
  std::vector<Real> xs(un * un), ys(un * un);
  for (int i = 0; i < n; ++i) {
    ys[i * un + i] = std::max(product_expectation(rho, s[i]), Real(0));
    for (int j = i + 1; j < n; ++j) {
      xs[i * un + j] = xs[j * un + i] = std::abs(product_matrix_element(rho, s[i], s[j]));
      ys[i * un + j] = ys[j * un + i] = sqrt_product(base, product_expectation(rho, with_level(s[i], j, y)));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto ij = [i, j] { return "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]"; };
      if (i != j) sink([&] { return "x" + ij(); }, xs[i * un + j]);
      sink([&] { return "-(n-2)y" + ij(); }, -coeff * ys[i * un + j]);
    }
  }
}

}  // namespace detail

/// Tailored criterion built from s_i = |x..x y x..x> (y in slot i):
///   sum_{i!=j} x_ij - (n-2) sum_{i,j} y_ij <= 0 if biseparable, where
///   x_ij = |<s_i|rho|s_j>|, y_ii = <s_i|rho|s_i>,
///   y_ij = sqrt(<x..x|rho|x..x><s_ij|rho|s_ij>) for i != j.
/// x and y are arbitrary unit vectors of the common local dimension.
template <typename Real>
CriterionReport<Real> criterion_III(const DensityMatrix<Real>& rho, const CVector<Real>& x, const CVector<Real>& y) {
  CriterionReport<Real> rep;
  rep.criterion = CriterionId::III;
  rep.terms.reserve(static_cast<std::size_t>(2 * rho.parties() * rho.parties()));
  detail::RecordTerms<Real> sink{rep};
  detail::criterion_III_terms(rho, x, y, sink);
  rep.finish();
  return rep;
}

/// lhs of criterion_III without the report.
template <typename Real>
Real criterion_III_lhs(const DensityMatrix<Real>& rho, const CVector<Real>& x, const CVector<Real>& y) {
  detail::SumTerms<Real> sink;
  detail::criterion_III_terms(rho, x, y, sink);
  return sink.lhs;
}

template <typename Real>
CriterionReport<Real> criterion_III(const DensityMatrix<Real>& rho, int x_level, int y_level) {
  const auto d = rho.dims().uniform_dim();
  if (!d) throw PreconditionError("criterion_III: uniform local dimension required");
  if (x_level == y_level) throw PreconditionError("criterion_III: x_level and y_level must differ");
  if (x_level < 0 || y_level < 0 || x_level >= *d || y_level >= *d) {
    throw PreconditionError("criterion_III: level out of range");
  }
  auto rep = criterion_III(rho, CVector<Real>(CVector<Real>::Unit(*d, x_level)),
                           CVector<Real>(CVector<Real>::Unit(*d, y_level)));
  rep.probe = "x=" + std::to_string(x_level) + ",y=" + std::to_string(y_level);
  return rep;
}

/// Smallest eigenvalue of the partial transpose over A; negative means NPT.
template <typename Real>
Real ppt_min_eigenvalue(const DensityMatrix<Real>& rho, const Bipartition& part) {
  // Transposition preserves Hermiticity exactly, so the input tolerance carries over.
  return hermitian_min_eigenvalue(partial_transpose(rho, part), Real(Tolerances::herm));
}

/// PPT as a report with lhs = -min eigenvalue, so lhs > 0 means NPT.
template <typename Real>
CriterionReport<Real> ppt_report(const DensityMatrix<Real>& rho, const Bipartition& part) {
  CriterionReport<Real> rep;
  rep.criterion = CriterionId::PPT;
  rep.partition = part.to_string();
  rep.probe = "none";
  rep.add("-min_eig(PT)", -ppt_min_eigenvalue(rho, part));
  rep.finish();
  return rep;
}

}  // namespace gme
