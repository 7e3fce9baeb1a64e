#include "test_util.hpp"

using namespace gme;
using oracle::PermutationSpec;

TEST_CASE("permutation operator") {
  const LocalDims dims({2, 3});
  const Index d2 = 36;
  const CMatrixd full = oracle::permutation_operator(dims, {2, dims.full_mask()});
  SUBCASE("global swap squares to the identity") {
    CHECK((full * full - CMatrixd::Identity(d2, d2)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(full != CMatrixd::Identity(d2, d2));
  }
  SUBCASE("empty subset is the identity") {
    CHECK(oracle::permutation_operator(dims, {2, 0}) == CMatrixd::Identity(d2, d2));
  }
  SUBCASE("unitary, and the m = 3 cycle cubes to the identity") {
    for (PartyMask mask = 0; mask < 4; ++mask) {
      const CMatrixd p = oracle::permutation_operator(dims, {2, mask});
      CHECK((p * p.adjoint() - CMatrixd::Identity(d2, d2)).cwiseAbs().maxCoeff() == 0.0);
    }
    const LocalDims q2 = LocalDims::uniform(2, 2);
    const CMatrixd c = oracle::permutation_operator(q2, {3, 0b01});
    CHECK((c * c * c - CMatrixd::Identity(64, 64)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(c * c != CMatrixd::Identity(64, 64));
  }
  SUBCASE("swap of the full system exchanges the copies") {
    Rng rng = make_rng(30);
    const CVectord a = random_unit_vector(6, rng), b = random_unit_vector(6, rng);
    CHECK(((full * kron(a, b)) - kron(b, a)).cwiseAbs().maxCoeff() < 1e-15);
  }
  CHECK_THROWS_AS(oracle::permutation_operator(dims, {1, 1}), PreconditionError);
  CHECK_THROWS_AS(oracle::permutation_operator(dims, {2, 0b100}), PreconditionError);
  CHECK_THROWS_AS(oracle::permutation_operator(LocalDims::uniform(2, 6), {2, 1}), CapacityError);
}

TEST_CASE("property: permutation invariance on symmetric copies") {
  Rng rng = make_rng(31);
  const LocalDims dims({2, 2, 3});
  for (int t = 0; t < 5; ++t) {
    const CVectord v = random_unit_vector(12, rng);
    const CVectord vv = kron(v, v);
    for (PartyMask mask = 0; mask < 8; ++mask) {
      const CVectord moved = oracle::permutation_operator(dims, {2, mask}) * vv;
      const CVectord back = oracle::permutation_operator(dims, {2, mask}) * moved;
      CHECK((back - vv).cwiseAbs().maxCoeff() < 1e-15);
    }
    const CMatrixd global = oracle::permutation_operator(dims, {2, dims.full_mask()});
    CHECK((global * vv - vv).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("reduced evaluators match brute force") {
  for (int d : {2, 3}) {
    const auto two = oracle::oracle_check(2, d, 2, 20, 40 + static_cast<std::uint64_t>(d));
    CHECK(two.passed);
    CHECK(two.cases == 20);
  }
  const auto three = oracle::oracle_check(3, 2, 2, 20, 41);
  CHECK(three.passed);
  CHECK(three.max_dev_III < oracle::oracle_tol);
  const auto qutrits = oracle::oracle_check(3, 3, 2, 5, 42);
  CHECK(qutrits.passed);
  const auto cubic = oracle::oracle_check(2, 2, 3, 20, 43);
  CHECK(cubic.passed);
  CHECK(cubic.max_dev_mlin < oracle::oracle_tol);
  CHECK_THROWS_AS(oracle::oracle_check(4, 3, 2, 1, 0), CapacityError);
  CHECK_THROWS_AS(oracle::oracle_check(1, 2, 2, 1, 0), PreconditionError);
}

TEST_CASE("biseparable sampler") {
  const LocalDims dims = LocalDims::uniform(2, 3);
  const auto a = oracle::sample_biseparable(dims, std::nullopt, 4, 7);
  const auto b = oracle::sample_biseparable(dims, std::nullopt, 4, 7);
  CHECK(a.matrix() == b.matrix());
  CHECK(a.matrix() != oracle::sample_biseparable(dims, std::nullopt, 4, 8).matrix());
  CHECK(validate(a.matrix(), dims).ok());
  CHECK_THROWS_AS(oracle::sample_biseparable(dims, std::nullopt, 0, 7), PreconditionError);

  SUBCASE("k = 1 with a fixed cut is pure and product across that cut") {
    const Bipartition cut(3, 0b011);
    const auto rho = oracle::sample_biseparable(dims, cut, 1, 9);
    CHECK(std::abs((rho.matrix() * rho.matrix()).trace().real() - 1) < 1e-12);
    CHECK(ppt_min_eigenvalue(rho, cut) >= -Tolerances::eig);
    Rng rng = make_rng(10);
    for (int t = 0; t < 20; ++t) {
      CHECK(criterion_I(rho, cut, random_product(dims, rng), random_product(dims, rng)).lhs <= decision_tol);
    }
  }
}
