#include "posprod/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace posprod {

HilbertDims::HilbertDims(Eigen::Index k, Eigen::Index h1, Eigen::Index h2)
    : dK(k), dH1(h1), dH2(h2) {
  if (k < 1 || h1 < 1 || h2 < 1) {
    throw Error(ErrorCode::invalid_parameter,
                "HilbertDims: dimensions must be positive");
  }
  check_side_limit(static_cast<std::size_t>(dTotal()),
                   static_cast<std::size_t>(dTotal()), "HilbertDims");
}

TraceClassOp::TraceClassOp(const HilbertDims& dims, ComplexMatrix t,
                           double tol)
    : dims_(dims), t_(std::move(t)) {
  if (t_.rows() != dims_.dTotal() || t_.cols() != dims_.dTotal()) {
    throw Error(ErrorCode::dimension_mismatch,
                "TraceClassOp: matrix side must be " +
                    std::to_string(dims_.dTotal()));
  }
  require_finite(t_, "TraceClassOp");
  if (t_.norm() == 0.0) return;

  EigResult eig = eig_hermitian(t_);
  const Eigen::Index k = t_.rows();
  const double lambda_max = eig.eigenvalues(k - 1);
  if (eig.eigenvalues(0) < -tol * std::max(1.0, std::abs(lambda_max))) {
    throw Error(ErrorCode::not_psd,
                "TraceClassOp: eigenvalue " +
                    std::to_string(eig.eigenvalues(0)) + " is negative");
  }
  const double cut = 1e-12 * std::max(0.0, lambda_max);
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    if (eig.eigenvalues(i) > cut) {
      spectral_.push_back({eig.eigenvalues(i), eig.eigenvectors.col(i)});
    }
  }
}

std::vector<ComplexMatrix> slice(const ComplexMatrix& t,
                                 const HilbertDims& dims) {
  if (t.rows() != dims.dTotal() || t.cols() != dims.dTotal()) {
    throw Error(ErrorCode::dimension_mismatch,
                "slice: matrix side must be " + std::to_string(dims.dTotal()));
  }
  const Eigen::Index dh = dims.dH();
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(dims.dK * dims.dK));
  for (Eigen::Index i = 0; i < dims.dK; ++i) {
    for (Eigen::Index j = 0; j < dims.dK; ++j) {
      blocks.push_back(t.block(i * dh, j * dh, dh, dh));
    }
  }
  return blocks;
}

ComplexMatrix stitch(const std::vector<ComplexMatrix>& blocks) {
  const auto count = static_cast<Eigen::Index>(blocks.size());
  const auto n = static_cast<Eigen::Index>(std::llround(
      std::sqrt(static_cast<double>(count))));
  if (count == 0 || n * n != count) {
    throw Error(ErrorCode::dimension_mismatch,
                "stitch: need a square grid of blocks");
  }
  const Eigen::Index dh = blocks.front().rows();
  for (const ComplexMatrix& b : blocks) {
    if (b.rows() != dh || b.cols() != dh) {
      throw Error(ErrorCode::dimension_mismatch,
                  "stitch: blocks must be square with equal shapes");
    }
  }
  check_side_limit(static_cast<std::size_t>(n * dh),
                   static_cast<std::size_t>(n * dh), "stitch");
  ComplexMatrix t(n * dh, n * dh);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      t.block(i * dh, j * dh, dh, dh) =
          blocks[static_cast<std::size_t>(i * n + j)];
    }
  }
  return t;
}

ComplexMatrix sharp(const ComplexMatrix& a) { return a.transpose(); }

ComplexMatrix hilbert_eval(const ComplexMatrix& t, const HilbertDims& dims,
                           const ComplexMatrix& p, const ComplexMatrix& q) {
  if (t.rows() != dims.dTotal() || t.cols() != dims.dTotal()) {
    throw Error(ErrorCode::dimension_mismatch,
                "hilbert_eval: operator side must be " +
                    std::to_string(dims.dTotal()));
  }
  if (p.rows() != dims.dH1 || p.cols() != dims.dH1 || q.rows() != dims.dH2 ||
      q.cols() != dims.dH2) {
    throw Error(ErrorCode::dimension_mismatch,
                "hilbert_eval: P must be dH1 x dH1 and Q dH2 x dH2");
  }
  const ComplexMatrix k = kron(p, q);
  const Eigen::Index dh = dims.dH();
  ComplexMatrix out(dims.dK, dims.dK);
  for (Eigen::Index i = 0; i < dims.dK; ++i) {
    for (Eigen::Index j = 0; j < dims.dK; ++j) {
      out(i, j) =
          k.cwiseProduct(t.block(i * dh, j * dh, dh, dh).conjugate()).sum();
    }
  }
  return out;
}

ComplexMatrix hilbert_eval(const TraceClassOp& t, const ComplexMatrix& p,
                           const ComplexMatrix& q) {
  return hilbert_eval(t.matrix(), t.dims(), p, q);
}

namespace {

struct HilbertBoundData {
  ComplexMatrix product;  // AA^* (star) BB^*
  BoundReport report;
};

HilbertBoundData compute_bound_data(const TraceClassOp& t,
                                    const ComplexMatrix& a,
                                    const ComplexMatrix& b, int trials,
                                    std::uint64_t seed) {
  const HilbertDims& dims = t.dims();
  if (a.rows() != dims.dH1 || b.rows() != dims.dH2 || a.cols() != b.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "hilbert_lower_bound: need A dH1 x beta and B dH2 x beta");
  }
  if (a.norm() == 0.0 || b.norm() == 0.0 || t.is_zero()) {
    throw Error(ErrorCode::degenerate_input,
                "hilbert_lower_bound: A, B, and T must be nonzero");
  }

  HilbertBoundData out;
  out.product = hilbert_eval(t, a * a.adjoint(), b * b.adjoint());
  out.report.rank_a = numeric_rank(a);
  out.report.rank_b = numeric_rank(b);

  const Eigen::Index dh = dims.dH();
  std::uint64_t term_index = 0;
  for (const TraceClassOp::SpectralTerm& term : t.spectral()) {
    std::vector<ComplexVector> slices;
    slices.reserve(static_cast<std::size_t>(dims.dK));
    for (Eigen::Index i = 0; i < dims.dK; ++i) {
      slices.push_back(term.w.segment(i * dh, dh));
    }
    const RankOneComponent comp =
        RankOneComponent::from_vectors(dims.dH1, dims.dH2, std::move(slices));

    BoundComponent bc;
    bc.rho = rho_vector(comp, a, b);
    const SpanRankResult span =
        span_max_rank(comp, trials, kRankTol, mix_seed(seed, term_index));
    bc.r_span = span.r;
    bc.r_span_trials = span.trials;
    bc.divisor = std::min({out.report.rank_a, out.report.rank_b, span.r});
    bc.weight = term.lambda;
    out.report.components.push_back(std::move(bc));
    ++term_index;
  }
  out.report.lower = assemble_lower_bound(out.report.components, dims.dK);
  return out;
}

}  // namespace

HilbertCertification hilbert_lower_bound(const TraceClassOp& t,
                                         const ComplexMatrix& a,
                                         const ComplexMatrix& b, double tol,
                                         int trials, std::uint64_t seed) {
  HilbertBoundData data = compute_bound_data(t, a, b, trials, seed);
  const double tol_eff = tol * (1.0 + operator_norm(data.product));

  HilbertCertification out;
  out.report = std::move(data.report);
  LoewnerCertificate main = loewner_geq(data.product, out.report.lower,
                                        tol_eff, "product >= lower bound");
  const ComplexMatrix zero =
      ComplexMatrix::Zero(t.dims().dK, t.dims().dK);
  LoewnerCertificate psd =
      loewner_geq(out.report.lower, zero, tol_eff, "lower bound >= 0");
  out.certificate = (main.certified() && !psd.certified()) ? psd : main;
  return out;
}

TensorBoundResult tensor_bound_check(const ComplexMatrix& a,
                                     const ComplexMatrix& b, double tol) {
  if (a.norm() == 0.0 || b.norm() == 0.0) {
    throw Error(ErrorCode::degenerate_input,
                "tensor_bound_check: A and B must be nonzero");
  }
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::dimension_mismatch,
                "tensor_bound_check: A and B need a shared column count");
  }
  TensorBoundResult out;
  out.rho = vec(b * a.transpose());
  out.divisor = std::min(numeric_rank(a), numeric_rank(b));
  const ComplexMatrix m = kron(a * a.adjoint(), b * b.adjoint());
  const ComplexMatrix lower =
      (1.0 / static_cast<double>(out.divisor)) * (out.rho * out.rho.adjoint());
  const double tol_eff = tol * (1.0 + operator_norm(m));
  out.certificate = loewner_geq(m, lower, tol_eff, "tensor lower bound");
  return out;
}

namespace {

RealVector sorted_spectrum(const ComplexMatrix& m) {
  return eig_hermitian(m).eigenvalues;  // ascending already
}

}  // namespace

bool basis_invariance_check(const TraceClassOp& t, const ComplexMatrix& a,
                            const ComplexMatrix& b, const ComplexMatrix& u,
                            double tol, int trials, std::uint64_t seed) {
  const HilbertDims& dims = t.dims();
  if (u.rows() != dims.dK || u.cols() != dims.dK) {
    throw Error(ErrorCode::dimension_mismatch,
                "basis_invariance_check: U must be dK x dK");
  }
  const ComplexMatrix gram = u.adjoint() * u;
  if ((gram - ComplexMatrix::Identity(dims.dK, dims.dK)).norm() > 1e-8) {
    throw Error(ErrorCode::invalid_parameter,
                "basis_invariance_check: U is not unitary");
  }

  // Rotating the K-factor basis conjugates T by U (x) I.
  const ComplexMatrix u_big =
      kron(u, ComplexMatrix::Identity(dims.dH(), dims.dH()));
  ComplexMatrix rotated = u_big.adjoint() * t.matrix() * u_big;
  rotated = 0.5 * (rotated + ComplexMatrix(rotated.adjoint()));
  const TraceClassOp t_rot(dims, rotated);

  const HilbertBoundData base = compute_bound_data(t, a, b, trials, seed);
  const HilbertBoundData rot = compute_bound_data(t_rot, a, b, trials, seed);

  if (base.report.components.size() != rot.report.components.size()) {
    return false;
  }
  const double scale = 1.0 + operator_norm(base.product);

  const RealVector sp_m = sorted_spectrum(base.product);
  const RealVector sp_m_rot = sorted_spectrum(rot.product);
  if ((sp_m - sp_m_rot).cwiseAbs().maxCoeff() > tol * scale) return false;

  const RealVector sp_l = sorted_spectrum(base.report.lower);
  const RealVector sp_l_rot = sorted_spectrum(rot.report.lower);
  if ((sp_l - sp_l_rot).cwiseAbs().maxCoeff() > tol * scale) return false;

  for (std::size_t i = 0; i < base.report.components.size(); ++i) {
    const BoundComponent& bc = base.report.components[i];
    const BoundComponent& rc = rot.report.components[i];
    if (bc.r_span != rc.r_span) return false;
    const double rho_base = bc.rho.norm();
    const double rho_rot = rc.rho.norm();
    if (std::abs(rho_base - rho_rot) > tol * (1.0 + rho_base)) return false;
  }
  return true;
}

}  // namespace posprod
