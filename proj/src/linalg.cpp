#include "posprod/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace posprod {

std::uint64_t Rng::next() {
  // splitmix64 step feeding a self-contained generator; no global state.
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  // Box-Muller; u1 is kept away from 0 so the log stays finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(seed, a), b);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_side_limit(static_cast<std::size_t>(a.rows()) *
                       static_cast<std::size_t>(b.rows()),
                   static_cast<std::size_t>(a.cols()) *
                       static_cast<std::size_t>(b.cols()),
                   "kron");
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "hs_inner: shapes " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  return a.cwiseProduct(b.conjugate()).sum();
}

ComplexVector vec(const ComplexMatrix& c) {
  ComplexVector v(c.rows() * c.cols());
  for (Eigen::Index col = 0; col < c.cols(); ++col) {
    for (Eigen::Index row = 0; row < c.rows(); ++row) {
      v(col * c.rows() + row) = c(row, col);
    }
  }
  return v;
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows,
                    Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorCode::dimension_mismatch,
                "unvec: vector of length " + std::to_string(v.size()) +
                    " cannot fill " + std::to_string(rows) + "x" +
                    std::to_string(cols));
  }
  ComplexMatrix c(rows, cols);
  for (Eigen::Index col = 0; col < cols; ++col) {
    for (Eigen::Index row = 0; row < rows; ++row) {
      c(row, col) = v(col * rows + row);
    }
  }
  return c;
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

namespace {

RealVector singular_values(const ComplexMatrix& m) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

void check_hermitian(const ComplexMatrix& m, double herm_tol,
                     const char* where) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                std::string(where) + ": matrix is not square");
  }
  const double dev = (m - m.adjoint()).norm();
  if (dev > herm_tol * std::max(1.0, m.norm())) {
    throw Error(ErrorCode::not_hermitian,
                std::string(where) + ": |M - M^*|_F = " + std::to_string(dev) +
                    " exceeds tolerance");
  }
}

}  // namespace

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m).sum();
}

EigResult eig_hermitian(const ComplexMatrix& m, double herm_tol) {
  check_hermitian(m, herm_tol, "eig_hermitian");
  const Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::invalid_parameter,
                "eig_hermitian: eigensolver failed to converge");
  }
  EigResult out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  return out;
}

double eig_min_hermitian(const ComplexMatrix& m, double herm_tol) {
  return eig_hermitian(m, herm_tol).eigenvalues(0);
}

namespace {

// Shared by psd_factor/psd_sqrt: eigendecompose and gate on PSD-ness.
EigResult psd_eig(const ComplexMatrix& m, double tol, const char* where) {
  EigResult eig = eig_hermitian(m);
  const double scale =
      std::max(1.0, std::max(std::abs(eig.eigenvalues(0)),
                             std::abs(eig.eigenvalues(eig.eigenvalues.size() - 1))));
  if (eig.eigenvalues(0) < -tol * scale) {
    throw Error(ErrorCode::not_psd,
                std::string(where) + ": eigenvalue " +
                    std::to_string(eig.eigenvalues(0)) +
                    " is negative beyond tolerance");
  }
  return eig;
}

}  // namespace

ComplexMatrix psd_factor(const ComplexMatrix& m, double tol) {
  EigResult eig = psd_eig(m, tol, "psd_factor");
  const Eigen::Index k = m.rows();
  const double lambda_max = std::max(0.0, eig.eigenvalues(k - 1));
  const double rank_cut = kRankTol * lambda_max;

  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (eig.eigenvalues(i) > rank_cut) ++r;
  }
  if (r == 0) return ComplexMatrix::Zero(k, 0);

  ComplexMatrix x(k, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    // Descending eigenvalue order.
    const Eigen::Index src = k - 1 - j;
    ComplexVector col = std::sqrt(eig.eigenvalues(src)) *
                        ComplexVector(eig.eigenvectors.col(src));
    // Fix the free global phase: largest-magnitude entry made real positive.
    Eigen::Index imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    const Complex z = col(imax);
    if (std::abs(z) > 0.0) col *= std::conj(z) / std::abs(z);
    x.col(j) = col;
  }
  return x;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol) {
  EigResult eig = psd_eig(m, tol, "psd_sqrt");
  const Eigen::Index k = m.rows();
  // Eigenvalues below the rank threshold are noise around 0; taking their
  // square root would amplify them to ~1e-8, so they become exact zeros.
  const double cut = kRankTol * std::max(0.0, eig.eigenvalues(k - 1));
  RealVector clamped = eig.eigenvalues;
  for (Eigen::Index i = 0; i < k; ++i) {
    clamped(i) = clamped(i) > cut ? std::sqrt(clamped(i)) : 0.0;
  }
  ComplexMatrix s = eig.eigenvectors * clamped.cast<Complex>().asDiagonal() *
                    eig.eigenvectors.adjoint();
  return 0.5 * (s + ComplexMatrix(s.adjoint()));
}

Eigen::Index numeric_rank(const ComplexMatrix& m, double tol) {
  const RealVector sv = singular_values(m);
  if (sv.size() == 0) return 0;
  const double cut = tol * sv(0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut && sv(i) > 0.0) ++r;
  }
  return r;
}

ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols,
                              std::uint64_t seed) {
  check_side_limit(static_cast<std::size_t>(rows),
                   static_cast<std::size_t>(cols), "random_gaussian");
  Rng rng(seed);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  return g;
}

ComplexMatrix random_psd(Eigen::Index dim, Eigen::Index rank,
                         std::uint64_t seed) {
  if (rank < 1 || rank > dim) {
    throw Error(ErrorCode::invalid_parameter,
                "random_psd: rank " + std::to_string(rank) +
                    " out of range for dimension " + std::to_string(dim));
  }
  const ComplexMatrix g = random_gaussian(dim, rank, seed);
  const ComplexMatrix m = g * g.adjoint();
  return 0.5 * (m + ComplexMatrix(m.adjoint()));
}

ComplexMatrix random_unitary(Eigen::Index dim, std::uint64_t seed) {
  const ComplexMatrix g = random_gaussian(dim, dim, seed);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace posprod
