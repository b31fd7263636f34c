#pragma once

#include <vector>

#include "posprod/certify.hpp"

namespace posprod {

/// Finite truncation sizes for the spaces K, H1, H2; the full space
/// K (x) H1 (x) H2 is ordered K-major, so operators on it slice into
/// dK x dK grids of blocks of side dH1*dH2.
struct HilbertDims {
  Eigen::Index dK = 0;
  Eigen::Index dH1 = 0;
  Eigen::Index dH2 = 0;

  HilbertDims(Eigen::Index k, Eigen::Index h1, Eigen::Index h2);
  Eigen::Index dH() const { return dH1 * dH2; }
  Eigen::Index dTotal() const { return dK * dH(); }
};

/// Positive operator on the truncated K (x) H1 (x) H2 together with its
/// spectral resolution T = sum_n lambda_n w_n w_n^*. Eigenvalues below
/// 1e-12 * lambda_max are discarded.
class TraceClassOp {
 public:
  struct SpectralTerm {
    double lambda;    // > 0
    ComplexVector w;  // unit vector of length dTotal
  };

  TraceClassOp(const HilbertDims& dims, ComplexMatrix t,
               double tol = kPsdTol);

  const HilbertDims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return t_; }
  const std::vector<SpectralTerm>& spectral() const { return spectral_; }
  bool is_zero() const { return spectral_.empty(); }

 private:
  HilbertDims dims_;
  ComplexMatrix t_;
  std::vector<SpectralTerm> spectral_;
};

struct HilbertCertification {
  LoewnerCertificate certificate;
  BoundReport report;
};

struct TensorBoundResult {
  LoewnerCertificate certificate;
  ComplexVector rho;           // vec(B A^T)
  Eigen::Index divisor = 0;    // min(rk AA^*, rk BB^*)
};

// The dK x dK grid of blocks T_ij of side dH (row-major grid).
std::vector<ComplexMatrix> slice(const ComplexMatrix& t,
                                 const HilbertDims& dims);

// Reassembles a square grid of equal square blocks; exact inverse of slice.
ComplexMatrix stitch(const std::vector<ComplexMatrix>& blocks);

// Transposition: in the standard-basis model, conjugating the adjoint
// entrywise leaves the plain transpose.
ComplexMatrix sharp(const ComplexMatrix& a);

// Entry (i,j) = <P kron Q, T_ij>. P must be dH1 x dH1, Q dH2 x dH2.
ComplexMatrix hilbert_eval(const ComplexMatrix& t, const HilbertDims& dims,
                           const ComplexMatrix& p, const ComplexMatrix& q);
ComplexMatrix hilbert_eval(const TraceClassOp& t, const ComplexMatrix& p,
                           const ComplexMatrix& q);

// Spectral lower bound: every term (lambda_n, w_n) contributes
// lambda_n/m(n) rho_n rho_n^*, where rho_n and the span rank come from the
// slices of w_n. Certifies both AA^* (star) BB^* >= L and L >= 0.
HilbertCertification hilbert_lower_bound(const TraceClassOp& t,
                                         const ComplexMatrix& a,
                                         const ComplexMatrix& b,
                                         double tol = kCertTol, int trials = 8,
                                         std::uint64_t seed = 0);

// Direct certificate of
//   AA^* kron BB^* >= 1/min(rk AA^*, rk BB^*) vec(BA^T) vec(BA^T)^*.
TensorBoundResult tensor_bound_check(const ComplexMatrix& a,
                                     const ComplexMatrix& b,
                                     double tol = kCertTol);

// Recomputes the bound data with the K-factor basis rotated by the unitary
// U and checks that the product spectrum, the bound spectrum, the span
// ranks, and the rho norms all agree within tol.
bool basis_invariance_check(const TraceClassOp& t, const ComplexMatrix& a,
                            const ComplexMatrix& b, const ComplexMatrix& u,
                            double tol = kCertTol, int trials = 8,
                            std::uint64_t seed = 0);

}  // namespace posprod
