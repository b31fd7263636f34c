#pragma once

#include <cstdint>
#include <utility>

#include "posprod/types.hpp"

namespace posprod {

/// Spectral decomposition of a Hermitian matrix.
struct EigResult {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // columns, orthonormal
};

// Deterministic seeded RNG. mt19937_64 is fully specified by the standard;
// the Gaussian transform is done here (Box-Muller) instead of through
// std::normal_distribution, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform();   // [0, 1)
  double gaussian();  // standard normal
  Complex complex_gaussian();  // independent standard-normal re/im parts

 private:
  std::uint64_t next();
  std::uint64_t state_;
};

// Derives independent sub-seeds, e.g. per (component, trial).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

// Kronecker product: block (i,j) of the result is a_ij * B.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Hilbert-Schmidt inner product tr(A B^*) = sum_ij a_ij conj(b_ij).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Column-stacking vectorization C^(n x m) <-> C^(mn) and its inverse.
ComplexVector vec(const ComplexMatrix& c);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows,
                    Eigen::Index cols);

double frobenius_norm(const ComplexMatrix& m);
double operator_norm(const ComplexMatrix& m);  // largest singular value
double trace_norm(const ComplexMatrix& m);     // sum of singular values

// Eigendecomposition of a Hermitian matrix. The input must satisfy
// |M - M^*|_F <= herm_tol * |M|_F; it is symmetrized internally before the
// solve, so certified-Hermitian inputs round-trip.
EigResult eig_hermitian(const ComplexMatrix& m, double herm_tol = kHermTol);

double eig_min_hermitian(const ComplexMatrix& m, double herm_tol = kHermTol);

// Gram factor X (k x r, r = numeric rank) with |M - X X^*|_F <=
// tol * max(1, |M|_F). Columns are ordered by descending eigenvalue and
// phase-normalized so the largest-magnitude entry of each column is real
// positive, which makes the factorization deterministic.
// Throws Error(not_psd) when eig_min(M) < -tol * max(1, |M|_2).
ComplexMatrix psd_factor(const ComplexMatrix& m, double tol = kPsdTol);

// Hermitian PSD square root; eigenvalues in (-tol*scale, 0) are clamped to 0.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol = kPsdTol);

// Count of singular values > tol * sigma_max (0 for the zero matrix).
Eigen::Index numeric_rank(const ComplexMatrix& m, double tol = kRankTol);

// G G^* for a seeded dim x rank complex Gaussian G; Hermitian by
// construction and deterministic per seed.
ComplexMatrix random_psd(Eigen::Index dim, Eigen::Index rank,
                         std::uint64_t seed);

// Seeded matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols,
                              std::uint64_t seed);

// Haar-ish random unitary: QR of a seeded Gaussian with the R-diagonal
// phases absorbed into Q.
ComplexMatrix random_unitary(Eigen::Index dim, std::uint64_t seed);

}  // namespace posprod
