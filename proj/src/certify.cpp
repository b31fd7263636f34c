#include "posprod/certify.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace posprod {

LoewnerCertificate loewner_geq(const ComplexMatrix& m1,
                               const ComplexMatrix& m2, double tol,
                               std::string context) {
  if (m1.rows() != m1.cols() || m2.rows() != m2.cols() ||
      m1.rows() != m2.rows()) {
    throw Error(ErrorCode::dimension_mismatch,
                "loewner_geq: operands must be square with equal shapes");
  }
  for (const ComplexMatrix* m : {&m1, &m2}) {
    const double dev = (*m - m->adjoint()).norm();
    if (dev > kHermTol * std::max(1.0, m->norm())) {
      throw Error(ErrorCode::not_hermitian,
                  "loewner_geq: operand is not Hermitian");
    }
  }
  LoewnerCertificate cert;
  cert.lhs = m1;
  cert.rhs = m2;
  cert.tolerance = tol;
  cert.context = std::move(context);
  const ComplexMatrix diff = m1 - m2;
  const ComplexMatrix sym = 0.5 * (diff + ComplexMatrix(diff.adjoint()));
  cert.diff_eig_min = eig_min_hermitian(sym);
  cert.verdict =
      cert.diff_eig_min >= -tol ? Verdict::certified : Verdict::violated;
  return cert;
}

ProductCertification certify_product_bound(const ProductParam& p,
                                        const ComplexMatrix& a,
                                        const ComplexMatrix& b, double tol,
                                        int trials, std::uint64_t seed) {
  const ComplexMatrix aa = a * a.adjoint();
  const ComplexMatrix bb = b * b.adjoint();
  const ComplexMatrix m = eval_product(p, aa, bb);

  ProductCertification out;
  out.report = lower_bound(p, a, b, kRankTol, trials, seed);

  const double tol_eff = tol * (1.0 + operator_norm(m));
  LoewnerCertificate main =
      loewner_geq(m, out.report.lower, tol_eff, "product >= lower bound");
  const ComplexMatrix zero = ComplexMatrix::Zero(p.N(), p.N());
  LoewnerCertificate psd =
      loewner_geq(out.report.lower, zero, tol_eff, "lower bound >= 0");

  out.certificate = (main.certified() && !psd.certified()) ? psd : main;
  return out;
}

OptimalityWitness optimality_witness(const RankOneComponent& c,
                                     Eigen::Index beta, std::uint64_t seed,
                                     int trials, double tol) {
  if (beta < 1) {
    throw Error(ErrorCode::invalid_parameter,
                "optimality_witness: beta must be positive");
  }
  constexpr int kAttempts = 8;
  // Prefer a well-conditioned max-rank element; the witness only needs
  // *some* U0 of maximal rank, and sigma_r0/sigma_1 controls the accuracy
  // of the inverse-square-root construction below.
  constexpr double kGoodCond = 1e-3;
  constexpr double kMinCond = 1e-10;

  SpanRankResult best;
  double best_cond = -1.0;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const std::uint64_t attempt_seed =
        attempt == 0 ? seed : mix_seed(seed, static_cast<std::uint64_t>(attempt));
    SpanRankResult span = span_max_rank(c, trials, kRankTol, attempt_seed);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(span.u0);
    const RealVector sv = svd.singularValues();
    const Eigen::Index r0 = std::min({beta, c.m, c.n, span.r});
    const double cond = sv(r0 - 1) / sv(0);
    if (span.r > best.r || (span.r == best.r && cond > best_cond)) {
      best = span;
      best_cond = cond;
    }
    if (span.r == best.r && cond >= kGoodCond) break;
  }
  if (best_cond < kMinCond) {
    throw Error(ErrorCode::ill_conditioned,
                "optimality_witness: leading singular block of U0 is "
                "numerically singular after re-probing");
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      best.u0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::Index r0 = std::min({beta, c.m, c.n, best.r});
  const RealVector sv = svd.singularValues();

  const Eigen::MatrixXcd s_r = svd.matrixU().leftCols(r0);
  const Eigen::MatrixXcd r_r = svd.matrixV().leftCols(r0);
  const ComplexVector inv_sqrt =
      sv.head(r0).cwiseSqrt().cwiseInverse().cast<Complex>();

  OptimalityWitness w;
  w.u = best.coeffs;
  w.u0 = best.u0;
  w.r0 = r0;
  w.a = ComplexMatrix::Zero(c.m, beta);
  w.b = ComplexMatrix::Zero(c.n, beta);
  w.b.leftCols(r0) = s_r * inv_sqrt.asDiagonal();
  w.a.leftCols(r0) = (r_r * inv_sqrt.asDiagonal()).conjugate();

  w.t_check = w.b.adjoint() * best.u0 * w.a.conjugate();
  ComplexMatrix expected = ComplexMatrix::Zero(beta, beta);
  for (Eigen::Index i = 0; i < r0; ++i) expected(i, i) = 1.0;
  if ((w.t_check - expected).norm() > std::max(tol, 1e-6)) {
    throw Error(ErrorCode::ill_conditioned,
                "optimality_witness: T deviates from diag(I_r0, 0)");
  }
  const double hs = std::real(hs_inner(w.t_check, w.t_check));
  const Complex tr = w.t_check.trace();
  w.achieved_ratio = hs / std::norm(tr);
  return w;
}

TraceRankResult trace_rank_check(const ComplexMatrix& t, double tol) {
  TraceRankResult out;
  out.lhs = std::norm(t.trace());
  out.rhs = static_cast<double>(numeric_rank(t)) *
            std::real(hs_inner(t, t));
  out.holds = out.lhs <= out.rhs + tol * std::max(1.0, out.rhs);
  return out;
}

}  // namespace posprod
