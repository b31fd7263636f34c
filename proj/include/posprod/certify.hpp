#pragma once

#include <string>

#include "posprod/bound.hpp"

namespace posprod {

enum class Verdict { certified, violated };

/// Numerical witness of M1 >= M2 in the Loewner order: the minimum
/// eigenvalue of the (symmetrized) difference against a tolerance.
struct LoewnerCertificate {
  ComplexMatrix lhs;
  ComplexMatrix rhs;
  double diff_eig_min = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::violated;
  std::string context;

  bool certified() const { return verdict == Verdict::certified; }
};

/// The matrices (A, B) and direction u that attain the sharp constant 1/r0
/// for one rank-one component, built from the SVD of a max-rank span
/// element.
struct OptimalityWitness {
  ComplexMatrix a;        // m x beta
  ComplexMatrix b;        // n x beta
  ComplexVector u;        // length N, sum_j u_j C_j = u0
  ComplexMatrix u0;       // the probed max-rank span element
  Eigen::Index r0 = 0;
  double achieved_ratio = 0.0;  // <T,T> / |tr T|^2, equals 1/r0
  ComplexMatrix t_check;  // beta x beta, approx diag(I_r0, 0)
};

struct TraceRankResult {
  double lhs = 0.0;  // |tr T|^2
  double rhs = 0.0;  // rk(T) * <T,T>
  bool holds = false;
};

struct ProductCertification {
  LoewnerCertificate certificate;
  BoundReport report;
};

// Compares Hermitian matrices: certified iff
// eig_min((M1 - M2 + h.c.)/2) >= -tol.
LoewnerCertificate loewner_geq(const ComplexMatrix& m1,
                               const ComplexMatrix& m2, double tol,
                               std::string context = {});

// End-to-end pipeline: M = AA^* (star) BB^*, L from lower_bound, then both
// M >= L and L >= 0 are certified. The certificate tolerance is scaled by
// the operator norm of M (tol * (1 + |M|_2)); when the PSD side fails, that
// certificate is the one returned.
ProductCertification certify_product_bound(const ProductParam& p,
                                        const ComplexMatrix& a,
                                        const ComplexMatrix& b,
                                        double tol = kCertTol, int trials = 8,
                                        std::uint64_t seed = 0);

// Builds the sharpness witness for one component: SVD of a max-rank span
// element U0 gives A, B with B^* U0 conj(A) = diag(I_r0, 0), where
// r0 = min(beta, m, n, r(k)). Probing re-seeds when the leading singular
// block is ill-conditioned; Error(ill_conditioned) after the retry budget.
OptimalityWitness optimality_witness(const RankOneComponent& c,
                                     Eigen::Index beta, std::uint64_t seed,
                                     int trials = 8, double tol = kCertTol);

// |tr T|^2 <= rk(T) * <T,T> with slack tol * max(1, rhs).
TraceRankResult trace_rank_check(const ComplexMatrix& t, double tol = kCertTol);

}  // namespace posprod
