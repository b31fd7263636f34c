#pragma once

#include <vector>

#include "posprod/linalg.hpp"
#include "posprod/types.hpp"

namespace posprod {

enum class ProductKindTag { hadamard, kronecker, convolution, custom };

const char* kind_name(ProductKindTag tag);

/// A product family selector. The classical kinds carry their dimensions;
/// custom carries an explicit parameter matrix.
struct ProductKind {
  ProductKindTag tag;
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  Eigen::Index N = 0;
  ComplexMatrix custom_y;  // only for custom

  static ProductKind hadamard(Eigen::Index N);
  static ProductKind kronecker(Eigen::Index m, Eigen::Index n);
  static ProductKind convolution(Eigen::Index N);
  static ProductKind custom(Eigen::Index m, Eigen::Index n, Eigen::Index N,
                            ComplexMatrix y);
};

/// A bilinear product C^(m x m) x C^(n x n) -> C^(N x N), parameterized by a
/// Hermitian PSD matrix Y of side m*n*N viewed as N x N blocks of side m*n.
/// Validated at construction; immutable afterwards.
class ProductParam {
 public:
  ProductParam(Eigen::Index m, Eigen::Index n, Eigen::Index N,
               ComplexMatrix y);

  Eigen::Index m() const { return m_; }
  Eigen::Index n() const { return n_; }
  Eigen::Index N() const { return N_; }
  Eigen::Index block_side() const { return m_ * n_; }
  const ComplexMatrix& y() const { return y_; }

  // Block Y_ij (0-based indices).
  Eigen::Block<const ComplexMatrix> block(Eigen::Index i,
                                          Eigen::Index j) const;

 private:
  Eigen::Index m_, n_, N_;
  ComplexMatrix y_;
};

/// One rank-one summand of a product: vectors v_1..v_N in C^(mn) whose
/// implied parameter matrix has blocks v_i v_j^*, together with the
/// unvectorized matrices C_i in C^(n x m).
struct RankOneComponent {
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  Eigen::Index N = 0;
  std::vector<ComplexVector> v;   // length N, each of size m*n
  std::vector<ComplexMatrix> c;   // length N, each n x m, c[i] = unvec(v[i])

  static RankOneComponent from_vectors(Eigen::Index m, Eigen::Index n,
                                       std::vector<ComplexVector> vectors);

  // Block (i,j) of the implied parameter matrix.
  ComplexMatrix implied_block(Eigen::Index i, Eigen::Index j) const;
  // Full implied parameter matrix (side m*n*N).
  ComplexMatrix implied_y() const;
  bool is_zero() const;
};

// Builds the parameter matrix of the requested product. The three classical
// kinds come out rank-one; custom input is validated (shape, Hermitian PSD).
ProductParam make_param(const ProductKind& kind);

// Entry (i,j) = <A kron B, Y_ij>. A must be m x m, B must be n x n.
ComplexMatrix eval_product(const ProductParam& p, const ComplexMatrix& a,
                           const ComplexMatrix& b);

// Classical products computed straight from their defining entry formulas,
// with no parameter matrix involved; the oracle for eval_product.
ComplexMatrix direct_eval(const ProductKind& kind, const ComplexMatrix& a,
                          const ComplexMatrix& b);

// Entry (i,j) = v_i^* (A kron B) v_j, the evaluation of the rank-one product
// implied by the component.
ComplexMatrix component_eval(const RankOneComponent& c, const ComplexMatrix& a,
                             const ComplexMatrix& b);

// Rank-one decomposition through the Gram factor of Y. Components are
// ordered by descending eigenvalue; directions below the rank threshold are
// dropped, so the list length equals the numeric rank of Y (empty for 0).
std::vector<RankOneComponent> decompose(const ProductParam& p,
                                        double tol = kPsdTol);

// alpha * Y1 + beta * Y2 with alpha, beta >= 0 (the cone operations).
ProductParam cone_combine(double alpha, const ProductParam& p1, double beta,
                          const ProductParam& p2);

}  // namespace posprod
