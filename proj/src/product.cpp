#include "posprod/product.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace posprod {

const char* kind_name(ProductKindTag tag) {
  switch (tag) {
    case ProductKindTag::hadamard: return "hadamard";
    case ProductKindTag::kronecker: return "kronecker";
    case ProductKindTag::convolution: return "convolution";
    case ProductKindTag::custom: return "custom";
  }
  return "unknown";
}

namespace {

void require_positive_dims(Eigen::Index m, Eigen::Index n, Eigen::Index N,
                           const char* where) {
  if (m < 1 || n < 1 || N < 1) {
    throw Error(ErrorCode::invalid_parameter,
                std::string(where) + ": dimensions must be positive");
  }
}

}  // namespace

ProductKind ProductKind::hadamard(Eigen::Index N) {
  require_positive_dims(N, N, N, "ProductKind::hadamard");
  return {ProductKindTag::hadamard, N, N, N, {}};
}

ProductKind ProductKind::kronecker(Eigen::Index m, Eigen::Index n) {
  require_positive_dims(m, n, 1, "ProductKind::kronecker");
  return {ProductKindTag::kronecker, m, n, m * n, {}};
}

ProductKind ProductKind::convolution(Eigen::Index N) {
  require_positive_dims(N, N, N, "ProductKind::convolution");
  return {ProductKindTag::convolution, N, N, N, {}};
}

ProductKind ProductKind::custom(Eigen::Index m, Eigen::Index n, Eigen::Index N,
                                ComplexMatrix y) {
  require_positive_dims(m, n, N, "ProductKind::custom");
  return {ProductKindTag::custom, m, n, N, std::move(y)};
}

ProductParam::ProductParam(Eigen::Index m, Eigen::Index n, Eigen::Index N,
                           ComplexMatrix y)
    : m_(m), n_(n), N_(N), y_(std::move(y)) {
  require_positive_dims(m_, n_, N_, "ProductParam");
  const Eigen::Index side = m_ * n_ * N_;
  check_side_limit(static_cast<std::size_t>(side),
                   static_cast<std::size_t>(side), "ProductParam");
  if (y_.rows() != side || y_.cols() != side) {
    throw Error(ErrorCode::dimension_mismatch,
                "ProductParam: parameter matrix must have side " +
                    std::to_string(side) + ", got " +
                    std::to_string(y_.rows()) + "x" +
                    std::to_string(y_.cols()));
  }
  require_finite(y_, "ProductParam");
  const double dev = (y_ - y_.adjoint()).norm();
  if (dev > kHermTol * std::max(1.0, y_.norm())) {
    throw Error(ErrorCode::not_hermitian,
                "ProductParam: parameter matrix is not Hermitian");
  }
  // PSD gate; zero parameter matrices are legal.
  if (y_.norm() > 0.0) {
    EigResult eig = eig_hermitian(y_);
    const double scale =
        std::max(1.0, std::abs(eig.eigenvalues(eig.eigenvalues.size() - 1)));
    if (eig.eigenvalues(0) < -kPsdTol * scale) {
      throw Error(ErrorCode::not_psd,
                  "ProductParam: parameter matrix has eigenvalue " +
                      std::to_string(eig.eigenvalues(0)));
    }
  }
}

Eigen::Block<const ComplexMatrix> ProductParam::block(Eigen::Index i,
                                                      Eigen::Index j) const {
  const Eigen::Index s = block_side();
  return y_.block(i * s, j * s, s, s);
}

RankOneComponent RankOneComponent::from_vectors(
    Eigen::Index m, Eigen::Index n, std::vector<ComplexVector> vectors) {
  require_positive_dims(m, n, static_cast<Eigen::Index>(vectors.size()),
                        "RankOneComponent");
  RankOneComponent out;
  out.m = m;
  out.n = n;
  out.N = static_cast<Eigen::Index>(vectors.size());
  out.v = std::move(vectors);
  out.c.reserve(out.v.size());
  for (const ComplexVector& vi : out.v) {
    if (vi.size() != m * n) {
      throw Error(ErrorCode::dimension_mismatch,
                  "RankOneComponent: vector length " +
                      std::to_string(vi.size()) + " != m*n");
    }
    out.c.push_back(unvec(vi, n, m));
  }
  return out;
}

ComplexMatrix RankOneComponent::implied_block(Eigen::Index i,
                                              Eigen::Index j) const {
  return v[static_cast<std::size_t>(i)] *
         v[static_cast<std::size_t>(j)].adjoint();
}

ComplexMatrix RankOneComponent::implied_y() const {
  const Eigen::Index s = m * n;
  ComplexMatrix y(s * N, s * N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) {
      y.block(i * s, j * s, s, s) = implied_block(i, j);
    }
  }
  return y;
}

bool RankOneComponent::is_zero() const {
  for (const ComplexVector& vi : v) {
    if (vi.norm() > 0.0) return false;
  }
  return true;
}

namespace {

// v_i vectors of the classical rank-one parameterizations (0-based i).
std::vector<ComplexVector> classical_vectors(const ProductKind& kind) {
  std::vector<ComplexVector> vs;
  const Eigen::Index mn = kind.m * kind.n;
  vs.reserve(static_cast<std::size_t>(kind.N));
  switch (kind.tag) {
    case ProductKindTag::hadamard:
      // v_i = e_i kron e_i.
      for (Eigen::Index i = 0; i < kind.N; ++i) {
        ComplexVector v = ComplexVector::Zero(mn);
        v(i * kind.n + i) = 1.0;
        vs.push_back(std::move(v));
      }
      break;
    case ProductKindTag::kronecker:
      // v_(i1,i2) = e_i1 kron f_i2 with (i1,i2) lexicographic, which is the
      // standard basis of C^(mn) in that same order.
      for (Eigen::Index i = 0; i < kind.N; ++i) {
        ComplexVector v = ComplexVector::Zero(mn);
        v(i) = 1.0;
        vs.push_back(std::move(v));
      }
      break;
    case ProductKindTag::convolution:
      // v_i = sum_{k<=i} e_k kron e_(i-k), ones along an anti-diagonal.
      for (Eigen::Index i = 0; i < kind.N; ++i) {
        ComplexVector v = ComplexVector::Zero(mn);
        for (Eigen::Index k = 0; k <= i; ++k) {
          v(k * kind.N + (i - k)) = 1.0;
        }
        vs.push_back(std::move(v));
      }
      break;
    case ProductKindTag::custom:
      throw Error(ErrorCode::invalid_parameter,
                  "classical_vectors: custom kind has no closed form");
  }
  return vs;
}

}  // namespace

ProductParam make_param(const ProductKind& kind) {
  if (kind.tag == ProductKindTag::custom) {
    return ProductParam(kind.m, kind.n, kind.N, kind.custom_y);
  }
  const std::vector<ComplexVector> vs = classical_vectors(kind);
  const Eigen::Index mn = kind.m * kind.n;
  const Eigen::Index side = mn * kind.N;
  check_side_limit(static_cast<std::size_t>(side),
                   static_cast<std::size_t>(side), "make_param");
  ComplexVector w(side);
  for (Eigen::Index i = 0; i < kind.N; ++i) {
    w.segment(i * mn, mn) = vs[static_cast<std::size_t>(i)];
  }
  ComplexMatrix y = w * w.adjoint();
  return ProductParam(kind.m, kind.n, kind.N, std::move(y));
}

ComplexMatrix eval_product(const ProductParam& p, const ComplexMatrix& a,
                           const ComplexMatrix& b) {
  if (a.rows() != p.m() || a.cols() != p.m() || b.rows() != p.n() ||
      b.cols() != p.n()) {
    throw Error(ErrorCode::dimension_mismatch,
                "eval_product: expected A " + std::to_string(p.m()) + "x" +
                    std::to_string(p.m()) + " and B " + std::to_string(p.n()) +
                    "x" + std::to_string(p.n()));
  }
  const ComplexMatrix k = kron(a, b);
  ComplexMatrix out(p.N(), p.N());
  for (Eigen::Index i = 0; i < p.N(); ++i) {
    for (Eigen::Index j = 0; j < p.N(); ++j) {
      out(i, j) = k.cwiseProduct(p.block(i, j).conjugate()).sum();
    }
  }
  return out;
}

ComplexMatrix direct_eval(const ProductKind& kind, const ComplexMatrix& a,
                          const ComplexMatrix& b) {
  switch (kind.tag) {
    case ProductKindTag::hadamard: {
      if (a.rows() != a.cols() || a.rows() != b.rows() ||
          a.cols() != b.cols()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "direct_eval: hadamard needs equal square shapes");
      }
      return a.cwiseProduct(b);
    }
    case ProductKindTag::kronecker: {
      if (a.rows() != a.cols() || b.rows() != b.cols()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "direct_eval: kronecker needs square factors");
      }
      const Eigen::Index m = a.rows();
      const Eigen::Index n = b.rows();
      ComplexMatrix out(m * n, m * n);
      for (Eigen::Index i1 = 0; i1 < m; ++i1) {
        for (Eigen::Index i2 = 0; i2 < n; ++i2) {
          for (Eigen::Index j1 = 0; j1 < m; ++j1) {
            for (Eigen::Index j2 = 0; j2 < n; ++j2) {
              out(i1 * n + i2, j1 * n + j2) = a(i1, j1) * b(i2, j2);
            }
          }
        }
      }
      return out;
    }
    case ProductKindTag::convolution: {
      if (a.rows() != a.cols() || a.rows() != b.rows() ||
          a.cols() != b.cols()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "direct_eval: convolution needs equal square shapes");
      }
      const Eigen::Index n = a.rows();
      ComplexMatrix out = ComplexMatrix::Zero(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          Complex s = 0.0;
          for (Eigen::Index k = 0; k <= i; ++k) {
            for (Eigen::Index l = 0; l <= j; ++l) {
              s += a(k, l) * b(i - k, j - l);
            }
          }
          out(i, j) = s;
        }
      }
      return out;
    }
    case ProductKindTag::custom:
      throw Error(ErrorCode::invalid_parameter,
                  "direct_eval: no direct formula for custom products");
  }
  throw Error(ErrorCode::invalid_parameter, "direct_eval: unknown kind");
}

ComplexMatrix component_eval(const RankOneComponent& c, const ComplexMatrix& a,
                             const ComplexMatrix& b) {
  if (a.rows() != c.m || a.cols() != c.m || b.rows() != c.n ||
      b.cols() != c.n) {
    throw Error(ErrorCode::dimension_mismatch,
                "component_eval: operand shapes do not match component dims");
  }
  const ComplexMatrix k = kron(a, b);
  ComplexMatrix out(c.N, c.N);
  std::vector<ComplexVector> kv;
  kv.reserve(static_cast<std::size_t>(c.N));
  for (Eigen::Index j = 0; j < c.N; ++j) {
    kv.push_back(k * c.v[static_cast<std::size_t>(j)]);
  }
  for (Eigen::Index i = 0; i < c.N; ++i) {
    for (Eigen::Index j = 0; j < c.N; ++j) {
      out(i, j) =
          c.v[static_cast<std::size_t>(i)].dot(kv[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

std::vector<RankOneComponent> decompose(const ProductParam& p, double tol) {
  const ComplexMatrix x = psd_factor(p.y(), tol);
  const Eigen::Index mn = p.block_side();
  std::vector<RankOneComponent> out;
  out.reserve(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index kappa = 0; kappa < x.cols(); ++kappa) {
    std::vector<ComplexVector> vs;
    vs.reserve(static_cast<std::size_t>(p.N()));
    for (Eigen::Index i = 0; i < p.N(); ++i) {
      vs.push_back(x.col(kappa).segment(i * mn, mn));
    }
    out.push_back(RankOneComponent::from_vectors(p.m(), p.n(), std::move(vs)));
  }
  return out;
}

ProductParam cone_combine(double alpha, const ProductParam& p1, double beta,
                          const ProductParam& p2) {
  if (alpha < 0.0 || beta < 0.0) {
    throw Error(ErrorCode::invalid_parameter,
                "cone_combine: coefficients must be nonnegative");
  }
  if (p1.m() != p2.m() || p1.n() != p2.n() || p1.N() != p2.N()) {
    throw Error(ErrorCode::dimension_mismatch,
                "cone_combine: parameter dimensions do not match");
  }
  return ProductParam(p1.m(), p1.n(), p1.N(), alpha * p1.y() + beta * p2.y());
}

}  // namespace posprod
