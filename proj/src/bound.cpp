#include "posprod/bound.hpp"

#include <algorithm>
#include <cmath>

namespace posprod {

ComplexVector rho_vector(const RankOneComponent& c, const ComplexMatrix& a,
                         const ComplexMatrix& b) {
  if (a.rows() != c.m || b.rows() != c.n || a.cols() != b.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "rho_vector: need A " + std::to_string(c.m) +
                    " x beta and B " + std::to_string(c.n) +
                    " x beta with a shared beta");
  }
  const ComplexVector target = vec(b * a.transpose());
  ComplexVector rho(c.N);
  for (Eigen::Index i = 0; i < c.N; ++i) {
    // <vec(BA^T), v_i>, linear in the first slot; Eigen's dot conjugates
    // its callee, so v_i.dot(target) is exactly that inner product.
    rho(i) = c.v[static_cast<std::size_t>(i)].dot(target);
  }
  return rho;
}

ComplexVector antidiag_sums(const ComplexMatrix& p) {
  if (p.rows() != p.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "antidiag_sums: matrix must be square");
  }
  const Eigen::Index n = p.rows();
  ComplexVector s = ComplexVector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index i = 0; i <= k; ++i) {
      s(k) += p(i, k - i);
    }
  }
  return s;
}

SpanRankResult span_max_rank(const RankOneComponent& c, int trials, double tol,
                             std::uint64_t seed) {
  if (c.is_zero()) {
    throw Error(ErrorCode::degenerate_input,
                "span_max_rank: all component matrices are zero");
  }
  if (trials < 0) {
    throw Error(ErrorCode::invalid_parameter,
                "span_max_rank: trials must be nonnegative");
  }
  SpanRankResult best;
  best.trials = trials;

  auto consider = [&](const ComplexVector& coeffs) {
    ComplexMatrix u = ComplexMatrix::Zero(c.n, c.m);
    for (Eigen::Index i = 0; i < c.N; ++i) {
      u += coeffs(i) * c.c[static_cast<std::size_t>(i)];
    }
    const Eigen::Index r = numeric_rank(u, tol);
    if (r > best.r) {
      best.r = r;
      best.u0 = u;
      best.coeffs = coeffs;
    }
  };

  // The single matrices first, then the random probes in seed order, so a
  // longer trial budget with the same seed can only improve the result.
  for (Eigen::Index i = 0; i < c.N; ++i) {
    ComplexVector e = ComplexVector::Zero(c.N);
    e(i) = 1.0;
    consider(e);
  }
  for (int t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    ComplexVector u(c.N);
    for (Eigen::Index i = 0; i < c.N; ++i) {
      u(i) = rng.complex_gaussian();
    }
    consider(u);
  }
  return best;
}

ComplexMatrix assemble_lower_bound(const std::vector<BoundComponent>& comps,
                                   Eigen::Index side) {
  ComplexMatrix lower = ComplexMatrix::Zero(side, side);
  for (const BoundComponent& comp : comps) {
    if (!comp.divisor.has_value()) continue;  // 1/inf := 0
    lower += (comp.weight / static_cast<double>(*comp.divisor)) *
             (comp.rho * comp.rho.adjoint());
  }
  return 0.5 * (lower + ComplexMatrix(lower.adjoint()));
}

BoundReport lower_bound(const ProductParam& p, const ComplexMatrix& a,
                        const ComplexMatrix& b, double tol, int trials,
                        std::uint64_t seed) {
  if (a.norm() == 0.0 || b.norm() == 0.0) {
    throw Error(ErrorCode::degenerate_input,
                "lower_bound: A and B must be nonzero");
  }
  if (a.rows() != p.m() || b.rows() != p.n() || a.cols() != b.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "lower_bound: operand shapes do not match the product");
  }
  BoundReport report;
  // rk AA^* = rk A (and likewise for B).
  report.rank_a = numeric_rank(a, tol);
  report.rank_b = numeric_rank(b, tol);

  const std::vector<RankOneComponent> comps = decompose(p);
  std::uint64_t comp_index = 0;
  for (const RankOneComponent& c : comps) {
    BoundComponent bc;
    bc.rho = rho_vector(c, a, b);
    const SpanRankResult span =
        span_max_rank(c, trials, tol, mix_seed(seed, comp_index));
    bc.r_span = span.r;
    bc.r_span_trials = span.trials;
    bc.divisor = std::min({report.rank_a, report.rank_b, span.r});
    bc.weight = 1.0;
    report.components.push_back(std::move(bc));
    ++comp_index;
  }
  report.lower = assemble_lower_bound(report.components, p.N());
  return report;
}

}  // namespace posprod
