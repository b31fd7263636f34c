#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "posprod/bound.hpp"
#include "test_support.hpp"

using namespace posprod;
using namespace posprod::testing;

namespace {

RankOneComponent hadamard_component(Eigen::Index n) {
  return decompose(make_param(ProductKind::hadamard(n))).at(0);
}

RankOneComponent kronecker_component(Eigen::Index m, Eigen::Index n) {
  return decompose(make_param(ProductKind::kronecker(m, n))).at(0);
}

RankOneComponent convolution_component(Eigen::Index n) {
  return decompose(make_param(ProductKind::convolution(n))).at(0);
}

}  // namespace

TEST_CASE("rho_vector on the Hadamard component") {
  const RankOneComponent c = hadamard_component(2);
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK(approx_equal(rho_vector(c, i2, i2), cvec({1, 1}), 1e-12));

  const ComplexMatrix a = random_gaussian(2, 3, 1);
  const ComplexMatrix b = random_gaussian(2, 3, 2);
  const ComplexVector rho = rho_vector(c, a, b);
  const ComplexMatrix bat = b * a.transpose();
  CHECK(approx_equal(rho, ComplexVector(bat.diagonal()), 1e-12));
  const ComplexMatrix abt = a * b.transpose();
  CHECK(approx_equal(rho, ComplexVector(abt.diagonal()), 1e-12));
}

TEST_CASE("rho_vector on the Kronecker component is vec(BA^T)") {
  const RankOneComponent c = kronecker_component(2, 3);
  const ComplexMatrix a = random_gaussian(2, 2, 3);
  const ComplexMatrix b = random_gaussian(3, 2, 4);
  CHECK(approx_equal(rho_vector(c, a, b),
                     vec(ComplexMatrix(b * a.transpose())), 1e-12));
}

TEST_CASE("rho_vector is additive in A") {
  const RankOneComponent c = convolution_component(3);
  const ComplexMatrix a1 = random_gaussian(3, 2, 5);
  const ComplexMatrix a2 = random_gaussian(3, 2, 6);
  const ComplexMatrix b = random_gaussian(3, 2, 7);
  const ComplexVector lhs = rho_vector(c, a1 + a2, b);
  const ComplexVector rhs = rho_vector(c, a1, b) + rho_vector(c, a2, b);
  CHECK((lhs - rhs).norm() <= 1e-13 * (1.0 + rhs.norm()));
}

TEST_CASE("rho_vector shape checks") {
  const RankOneComponent c = hadamard_component(2);
  CHECK_THROWS_AS(
      rho_vector(c, ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(2, 2)),
      Error);
}

TEST_CASE("antidiag_sums") {
  CHECK(approx_equal(antidiag_sums(mat(2, 2, {1, 2, 3, 4})), cvec({1, 5}),
                     0.0));
  CHECK(approx_equal(antidiag_sums(ComplexMatrix::Identity(2, 2)),
                     cvec({1, 0}), 0.0));
  CHECK(antidiag_sums(ComplexMatrix::Zero(3, 3)).norm() == 0.0);
  CHECK_THROWS_AS(antidiag_sums(ComplexMatrix::Zero(2, 3)), Error);
}

TEST_CASE("span_max_rank on classical components") {
  for (Eigen::Index n = 1; n <= 4; ++n) {
    const SpanRankResult r =
        span_max_rank(hadamard_component(n), 8, kRankTol, 7);
    CHECK(r.r == n);  // the span is the diagonal matrices
    // The witness is diagonal and full-rank.
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i != j) CHECK(std::abs(r.u0(i, j)) <= 1e-14);
      }
    }
    CHECK(numeric_rank(r.u0) == n);
  }
  const SpanRankResult rk = span_max_rank(kronecker_component(2, 3), 8,
                                          kRankTol, 8);
  CHECK(rk.r == 2);  // the span is all of C^(3x2)
  const SpanRankResult rc = span_max_rank(convolution_component(3), 8,
                                          kRankTol, 9);
  CHECK(rc.r == 3);  // the full anti-diagonal is reachable
}

TEST_CASE("span_max_rank single-vector component") {
  const ComplexMatrix g = random_gaussian(4, 1, 10);
  const RankOneComponent c =
      RankOneComponent::from_vectors(2, 2, {ComplexVector(g.col(0))});
  const SpanRankResult r = span_max_rank(c, 8, kRankTol, 11);
  CHECK(r.r == numeric_rank(c.c[0]));
  CHECK(approx_equal(r.coeffs, cvec({1}), 0.0));
}

TEST_CASE("span_max_rank rejects the zero component") {
  const RankOneComponent zero = RankOneComponent::from_vectors(
      2, 2, {ComplexVector::Zero(4), ComplexVector::Zero(4)});
  CHECK_THROWS_AS(span_max_rank(zero, 8, kRankTol, 0), Error);
}

TEST_CASE("span_max_rank never degrades as trials grow") {
  std::vector<ComplexVector> vs;
  for (Eigen::Index i = 0; i < 3; ++i) {
    vs.push_back(ComplexVector(random_gaussian(9, 1, mix_seed(12, i)).col(0)));
  }
  const RankOneComponent c = RankOneComponent::from_vectors(3, 3, vs);
  Eigen::Index prev = 0;
  for (int trials = 0; trials <= 12; ++trials) {
    const SpanRankResult r = span_max_rank(c, trials, kRankTol, 99);
    CHECK(r.r >= prev);
    prev = r.r;
  }
}

TEST_CASE("lower_bound on the Hadamard identity instance") {
  const ProductParam p = make_param(ProductKind::hadamard(2));
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  const BoundReport rep = lower_bound(p, i2, i2);
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.rank_a == 2);
  CHECK(rep.rank_b == 2);
  CHECK(rep.components[0].divisor.value() == 2);
  CHECK(approx_equal(rep.lower, ComplexMatrix(0.5 * ComplexMatrix::Ones(2, 2)),
                     1e-12));

  const ComplexMatrix m = eval_product(p, i2, i2);
  const EigResult eig = eig_hermitian(m - rep.lower);
  CHECK(eig.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(eig.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("lower_bound saturates for rank-one Kronecker operands") {
  const ProductParam p = make_param(ProductKind::kronecker(3, 2));
  const ComplexMatrix a = random_gaussian(3, 1, 13);
  const ComplexMatrix b = random_gaussian(2, 1, 14);
  const BoundReport rep = lower_bound(p, a, b);
  const ComplexMatrix m = eval_product(p, a * a.adjoint(), b * b.adjoint());
  CHECK((m - rep.lower).norm() <= 1e-10);
  const ComplexVector v = vec(ComplexMatrix(b * a.transpose()));
  CHECK((rep.lower - v * v.adjoint()).norm() <= 1e-10);
}

TEST_CASE("lower_bound matches the anti-diagonal closed form") {
  const ProductParam p = make_param(ProductKind::convolution(3));
  const ComplexMatrix a = random_gaussian(3, 2, 15);
  const ComplexMatrix b = random_gaussian(3, 2, 16);
  const BoundReport rep = lower_bound(p, a, b);
  REQUIRE(rep.components.size() == 1);
  CHECK(approx_equal(rep.components[0].rho,
                     antidiag_sums(ComplexMatrix(b * a.transpose())),
                     1e-12));
}

TEST_CASE("lower_bound rejects zero operands") {
  const ProductParam p = make_param(ProductKind::hadamard(2));
  CHECK_THROWS_AS(
      lower_bound(p, ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2)),
      Error);
  try {
    lower_bound(p, ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_input);
  }
}

TEST_CASE("main inequality holds across kinds, shapes, and custom params") {
  constexpr std::array<Eigen::Index, 4> betas = {1, 2, 3, 5};
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Eigen::Index beta = betas[s % betas.size()];
    ProductParam p = [&]() -> ProductParam {
      switch (s % 4) {
        case 0:
          return make_param(ProductKind::hadamard(1 + s % 3));
        case 1:
          return make_param(ProductKind::convolution(1 + s % 3));
        case 2:
          return make_param(ProductKind::kronecker(1 + s % 3, 1 + (s / 2) % 3));
        default:
          return ProductParam(2, 2, 2, random_psd(8, 1 + s % 3, mix_seed(s, 17)));
      }
    }();
    const ComplexMatrix a = random_gaussian(p.m(), beta, mix_seed(s, 18));
    const ComplexMatrix b = random_gaussian(p.n(), beta, mix_seed(s, 19));
    const BoundReport rep = lower_bound(p, a, b, kRankTol, 8, mix_seed(s, 20));
    const ComplexMatrix m = eval_product(p, a * a.adjoint(), b * b.adjoint());
    const double scale = 1.0 + operator_norm(m);
    CHECK(eig_min_hermitian(m - rep.lower) >= -1e-8 * scale);
    CHECK(eig_min_hermitian(rep.lower) >= -1e-10 * scale);
  }
}

TEST_CASE("Hadamard bound equals the diagonal outer-product closed form") {
  const ProductParam p = make_param(ProductKind::hadamard(4));
  ComplexMatrix a = random_gaussian(4, 3, 23);
  a.col(2) = a.col(0);  // rank 2
  const ComplexMatrix b = random_gaussian(4, 3, 24);
  const BoundReport rep = lower_bound(p, a, b);
  // The span rank is N = 4 >= both operand ranks, so it never binds and the
  // bound is d d^* / min(rk A, rk B) with d the diagonal of A B^T.
  const ComplexVector d = (a * b.transpose()).diagonal();
  const ComplexMatrix want = (1.0 / 2.0) * (d * d.adjoint());
  CHECK((rep.lower - want).norm() <= 1e-12 * (1.0 + want.norm()));
}

TEST_CASE("divisors never exceed the operand ranks") {
  const ProductParam p = make_param(ProductKind::hadamard(4));
  ComplexMatrix a = random_gaussian(4, 3, 21);
  a.col(2) = a.col(0) + a.col(1);  // rank 2
  const ComplexMatrix b = random_gaussian(4, 3, 22);  // rank 3
  const BoundReport rep = lower_bound(p, a, b);
  REQUIRE(rep.components.size() == 1);
  CHECK(rep.rank_a == 2);
  CHECK(rep.rank_b == 3);
  CHECK(rep.components[0].r_span.value() == 4);
  CHECK(rep.components[0].divisor.value() == 2);
}
