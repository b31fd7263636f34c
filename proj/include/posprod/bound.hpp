#pragma once

#include <optional>
#include <vector>

#include "posprod/product.hpp"

namespace posprod {

/// Max-rank probe of the span of the component's unvectorized matrices.
/// `r` is a certified lower bound for the true span max-rank; it attains it
/// with probability one per random trial.
struct SpanRankResult {
  Eigen::Index r = 0;
  ComplexMatrix u0;      // n x m span element attaining r
  ComplexVector coeffs;  // u with sum_i u_i C_i = u0
  int trials = 0;
};

/// Per-component lower-bound data. Divisors use nullopt as the infinity
/// flag (the 1/inf := 0 convention); in finite dimension they are always
/// engaged, but the Hilbert-model types share this struct.
struct BoundComponent {
  ComplexVector rho;                   // length N
  std::optional<Eigen::Index> r_span;  // probed span max-rank
  int r_span_trials = 0;
  std::optional<Eigen::Index> divisor; // min(rank A, rank B, r_span)
  double weight = 1.0;                 // spectral weight (1 in the matrix case)
};

struct BoundReport {
  std::vector<BoundComponent> components;
  ComplexMatrix lower;  // assembled sum_k weight_k/divisor_k rho_k rho_k^*
  Eigen::Index rank_a = 0;
  Eigen::Index rank_b = 0;
};

// Entry i = <vec(B A^T), v_i> in the Hilbert-Schmidt-compatible inner
// product on C^(mn). A must be m x beta, B must be n x beta.
ComplexVector rho_vector(const RankOneComponent& c, const ComplexMatrix& a,
                         const ComplexMatrix& b);

// Entry k = sum of the entries on the k-th anti-diagonal of a square matrix.
ComplexVector antidiag_sums(const ComplexMatrix& p);

// Probes max rank over span{C_1..C_N}: each C_i alone plus `trials` seeded
// random combinations. Reported r never decreases when trials grow with the
// same seed. Throws Error(degenerate_input) when all C_i vanish.
SpanRankResult span_max_rank(const RankOneComponent& c, int trials, double tol,
                             std::uint64_t seed);

// Sharp lower-bound data for A A^* (star) B B^*: decomposes p, computes
// per-component rho and span ranks, and assembles
//   L = sum_k 1/min(rk AA^*, rk BB^*, r(k)) rho_k rho_k^*.
// A and B must be nonzero (degenerate_input otherwise).
BoundReport lower_bound(const ProductParam& p, const ComplexMatrix& a,
                        const ComplexMatrix& b, double tol = kRankTol,
                        int trials = 8, std::uint64_t seed = 0);

// Assembles the bound matrix from prepared components (shared with the
// Hilbert model, where weights carry the spectral values).
ComplexMatrix assemble_lower_bound(const std::vector<BoundComponent>& comps,
                                   Eigen::Index side);

}  // namespace posprod
