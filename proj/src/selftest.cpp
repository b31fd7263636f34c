#include "posprod/selftest.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "posprod/certify.hpp"
#include "posprod/hilbert.hpp"

namespace posprod::selftest {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  int checks = 0;
  std::string first_failure;

  void expect(bool cond, const std::string& what) {
    ++checks;
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Classical parameters are cached: their construction runs an
// eigendecomposition there is no point repeating per instance.
class ParamCache {
 public:
  const ProductParam& get(const ProductKind& kind) {
    const std::array<Eigen::Index, 4> key{
        static_cast<Eigen::Index>(kind.tag), kind.m, kind.n, kind.N};
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, make_param(kind)).first;
    }
    return it->second;
  }

 private:
  std::map<std::array<Eigen::Index, 4>, ProductParam> cache_;
};

// (m, n, N) with m*n*N <= 24, for custom-parameter instances.
constexpr std::array<std::array<Eigen::Index, 3>, 8> kSmallDims = {{
    {1, 2, 3},
    {2, 2, 2},
    {2, 2, 3},
    {2, 3, 2},
    {1, 4, 5},
    {2, 2, 6},
    {3, 2, 4},
    {4, 1, 6},
}};

ProductParam random_custom_param(Eigen::Index m, Eigen::Index n,
                                 Eigen::Index N, Eigen::Index rank,
                                 std::uint64_t seed) {
  const Eigen::Index side = m * n * N;
  return ProductParam(m, n, N, random_psd(side, std::min(rank, side), seed));
}

// 1. Oracle equivalence: eval through the parameter matrix matches the
//    defining entry formulas for all three classical kinds.
void criterion_oracle_equivalence(Level level, std::uint64_t seed, Check& c) {
  ParamCache cache;
  const int seeds = level == Level::full ? 50 : 10;
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t is = mix_seed(seed, 1, static_cast<std::uint64_t>(s));
    const std::array<ProductKind, 3> kinds = {
        ProductKind::hadamard(1 + s % 4),
        ProductKind::convolution(1 + s % 4),
        ProductKind::kronecker(1 + s % 4, 1 + (s / 4) % 4),
    };
    int which = 0;
    for (const ProductKind& kind : kinds) {
      const ProductParam& p = cache.get(kind);
      const ComplexMatrix a =
          random_gaussian(kind.m, kind.m, mix_seed(is, 10, which));
      const ComplexMatrix b =
          random_gaussian(kind.n, kind.n, mix_seed(is, 11, which));
      const double err = (eval_product(p, a, b) - direct_eval(kind, a, b)).norm();
      const double bound = 1e-10 * (1.0 + a.norm() * b.norm());
      c.expect(err <= bound, std::string(kind_name(kind.tag)) + " seed " +
                                 std::to_string(s) +
                                 ": |eval - direct| = " + fmt(err));
      ++which;
    }
  }
}

// 2. Positivity of P (star) Q for PSD P, Q under classical and random PSD
//    parameters of rank up to 3.
void criterion_schur_positivity(Level level, std::uint64_t seed, Check& c) {
  ParamCache cache;
  const int instances = level == Level::full ? 200 : 40;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t is = mix_seed(seed, 2, static_cast<std::uint64_t>(i));
    ProductParam custom(1, 1, 1, ComplexMatrix::Identity(1, 1));
    const ProductParam* p = nullptr;
    switch (i % 4) {
      case 0:
        p = &cache.get(ProductKind::hadamard(1 + (i / 4) % 4));
        break;
      case 1:
        p = &cache.get(ProductKind::convolution(1 + (i / 4) % 4));
        break;
      case 2:
        p = &cache.get(
            ProductKind::kronecker(1 + (i / 4) % 3, 1 + (i / 8) % 3));
        break;
      default: {
        const auto& d =
            kSmallDims[static_cast<std::size_t>(i / 4) % kSmallDims.size()];
        custom = random_custom_param(d[0], d[1], d[2], 1 + (i / 4) % 3,
                                     mix_seed(is, 20));
        p = &custom;
        break;
      }
    }
    const ComplexMatrix pm =
        random_psd(p->m(), 1 + i % p->m(), mix_seed(is, 21));
    const ComplexMatrix qm =
        random_psd(p->n(), 1 + i % p->n(), mix_seed(is, 22));
    const ComplexMatrix prod = eval_product(*p, pm, qm);
    const double scale = 1.0 + operator_norm(prod);
    const double lo = eig_min_hermitian(prod);
    c.expect(lo >= -1e-8 * scale,
             "instance " + std::to_string(i) + ": eig_min = " + fmt(lo));
  }
}

struct ClassicalDraw {
  ProductKind kind;
  ComplexMatrix a;
  ComplexMatrix b;
};

ClassicalDraw draw_classical(int i, std::uint64_t is) {
  constexpr std::array<Eigen::Index, 4> betas = {1, 2, 3, 5};
  const Eigen::Index beta = betas[static_cast<std::size_t>(i) % betas.size()];
  ProductKind kind = ProductKind::hadamard(1);
  switch (i % 3) {
    case 0:
      kind = ProductKind::hadamard(1 + (i / 3) % 4);
      break;
    case 1:
      kind = ProductKind::convolution(1 + (i / 3) % 4);
      break;
    default:
      kind = ProductKind::kronecker(1 + (i / 3) % 4, 1 + (i / 12) % 4);
      break;
  }
  return {kind, random_gaussian(kind.m, beta, mix_seed(is, 30)),
          random_gaussian(kind.n, beta, mix_seed(is, 31))};
}

// 3. The sharp lower bound certifies on random instances, and the rho
//    vectors match their closed forms per kind.
void criterion_sharp_lower_bound(Level level, std::uint64_t seed, Check& c) {
  ParamCache cache;
  const int instances = level == Level::full ? 200 : 40;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t is = mix_seed(seed, 3, static_cast<std::uint64_t>(i));
    const ClassicalDraw d = draw_classical(i, is);
    const ProductParam& p = cache.get(d.kind);

    const ProductCertification res =
        certify_product_bound(p, d.a, d.b, 1e-8, 8, mix_seed(is, 32));
    c.expect(res.certificate.certified(),
             std::string(kind_name(d.kind.tag)) + " instance " +
                 std::to_string(i) +
                 ": diff_eig_min = " + fmt(res.certificate.diff_eig_min));
    c.expect(res.report.components.size() == 1,
             "classical parameter must decompose into one component");
    if (res.report.components.size() != 1) continue;

    const ComplexVector& rho = res.report.components[0].rho;
    const ComplexMatrix bat = d.b * d.a.transpose();
    ComplexVector closed;
    switch (d.kind.tag) {
      case ProductKindTag::hadamard:
        closed = bat.diagonal();
        break;
      case ProductKindTag::kronecker:
        closed = vec(bat);
        break;
      default:
        closed = antidiag_sums(bat);
        break;
    }
    const double err = (rho - closed).norm();
    c.expect(err <= 1e-12 * (1.0 + bat.norm()),
             std::string(kind_name(d.kind.tag)) +
                 ": rho is off its closed form by " + fmt(err));
  }
}

// 4. Equality cases: rank-one tensors saturate the Kronecker bound, and the
//    Hadamard bound is tight at A = B = I.
void criterion_equality_cases(Level level, std::uint64_t seed, Check& c) {
  ParamCache cache;
  const int seeds = level == Level::full ? 20 : 6;
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t is = mix_seed(seed, 4, static_cast<std::uint64_t>(s));
    const Eigen::Index m = 1 + s % 4;
    const Eigen::Index n = 1 + (s / 4) % 4;
    const ProductParam& p = cache.get(ProductKind::kronecker(m, n));
    const ComplexMatrix a = random_gaussian(m, 1, mix_seed(is, 40));
    const ComplexMatrix b = random_gaussian(n, 1, mix_seed(is, 41));
    const BoundReport rep =
        lower_bound(p, a, b, kRankTol, 8, mix_seed(is, 42));
    const ComplexMatrix prod =
        eval_product(p, a * a.adjoint(), b * b.adjoint());
    const double err = (prod - rep.lower).norm();
    c.expect(err <= 1e-10, "kronecker rank-one seed " + std::to_string(s) +
                               ": |M - L| = " + fmt(err));
  }
  for (Eigen::Index n = 1; n <= 4; ++n) {
    const ProductParam& p = cache.get(ProductKind::hadamard(n));
    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    const ProductCertification res =
        certify_product_bound(p, eye, eye, 1e-8, 8, mix_seed(seed, 4, 99));
    const double scale = 1.0 + operator_norm(res.certificate.lhs);
    c.expect(res.certificate.certified() &&
                 std::abs(res.certificate.diff_eig_min) <= 1e-10 * scale,
             "hadamard identity N=" + std::to_string(n) +
                 ": diff_eig_min = " + fmt(res.certificate.diff_eig_min));
  }
}

void check_witness(const RankOneComponent& comp, Eigen::Index beta,
                   std::uint64_t seed, const std::string& label, Check& c) {
  const OptimalityWitness w = optimality_witness(comp, beta, seed);

  ComplexMatrix expected = ComplexMatrix::Zero(beta, beta);
  for (Eigen::Index i = 0; i < w.r0; ++i) expected(i, i) = 1.0;
  const double t_dev = (w.t_check - expected).norm();
  c.expect(t_dev <= 1e-8, label + ": |T - diag(I,0)| = " + fmt(t_dev));

  c.expect(numeric_rank(w.a) == w.r0 && numeric_rank(w.b) == w.r0,
           label + ": witness factors do not have rank r0");

  const double want = 1.0 / static_cast<double>(w.r0);
  c.expect(std::abs(w.achieved_ratio - want) <= 1e-8,
           label + ": achieved_ratio = " + fmt(w.achieved_ratio));

  const ComplexMatrix mk =
      component_eval(comp, w.a * w.a.adjoint(), w.b * w.b.adjoint());
  const ComplexVector rho = rho_vector(comp, w.a, w.b);

  // Equality of the quadratic forms at the witness direction.
  const double q_lhs = std::real(Complex(w.u.adjoint() * (mk * w.u)));
  const double q_rhs = std::norm(rho.dot(w.u)) * want;
  c.expect(std::abs(q_lhs - q_rhs) <= 1e-8 * (1.0 + std::abs(q_lhs)),
           label + ": u*Mu = " + fmt(q_lhs) + " vs " + fmt(q_rhs));

  // The constant itself certifies; inflating it by 1e-3 must not.
  const double tol_eff = 1e-8 * (1.0 + operator_norm(mk));
  const ComplexMatrix outer = rho * rho.adjoint();
  const LoewnerCertificate exact =
      loewner_geq(mk, want * outer, tol_eff, label);
  c.expect(exact.certified(), label + ": sharp constant did not certify");
  const LoewnerCertificate inflated =
      loewner_geq(mk, (want + 1e-3) * outer, tol_eff, label);
  c.expect(!inflated.certified(),
           label + ": inflated constant still certified (diff_eig_min = " +
               fmt(inflated.diff_eig_min) + ")");
}

// 5. Optimality witnesses attain the sharp constant for classical kinds and
//    random rank-one components, and the constant cannot be improved.
void criterion_optimality(Level level, std::uint64_t seed, Check& c) {
  ParamCache cache;
  std::vector<std::pair<std::string, RankOneComponent>> comps;
  for (Eigen::Index n = 1; n <= 4; ++n) {
    comps.emplace_back("hadamard N=" + std::to_string(n),
                       decompose(cache.get(ProductKind::hadamard(n))).at(0));
    comps.emplace_back(
        "convolution N=" + std::to_string(n),
        decompose(cache.get(ProductKind::convolution(n))).at(0));
  }
  for (Eigen::Index m = 1; m <= 4; ++m) {
    for (Eigen::Index n = 1; n <= 4; ++n) {
      comps.emplace_back(
          "kronecker " + std::to_string(m) + "x" + std::to_string(n),
          decompose(cache.get(ProductKind::kronecker(m, n))).at(0));
    }
  }

  const std::vector<Eigen::Index> betas =
      level == Level::full ? std::vector<Eigen::Index>{1, 2, 3, 4, 5}
                           : std::vector<Eigen::Index>{1, 3, 5};
  int idx = 0;
  for (const auto& [label, comp] : comps) {
    for (const Eigen::Index beta : betas) {
      check_witness(comp, beta, mix_seed(seed, 5, idx++),
                    label + " beta=" + std::to_string(beta), c);
    }
  }

  const int randoms = level == Level::full ? 20 : 5;
  for (int i = 0; i < randoms; ++i) {
    const std::uint64_t is = mix_seed(seed, 5, 1000 + i);
    const Eigen::Index m = 1 + i % 4;
    const Eigen::Index n = 1 + (i / 2) % 4;
    const Eigen::Index nn = 1 + (i / 3) % 4;
    std::vector<ComplexVector> vs;
    for (Eigen::Index k = 0; k < nn; ++k) {
      ComplexMatrix g = random_gaussian(m * n, 1, mix_seed(is, 50, k));
      vs.push_back(g.col(0));
    }
    const RankOneComponent comp =
        RankOneComponent::from_vectors(m, n, std::move(vs));
    const Eigen::Index beta = 1 + i % 5;
    check_witness(comp, beta, mix_seed(is, 51),
                  "random component " + std::to_string(i), c);
  }
}

// 6. Trace-rank inequality on random matrices; equality on scaled
//    projections.
void criterion_trace_rank(Level level, std::uint64_t seed, Check& c) {
  const int randoms = level == Level::full ? 500 : 100;
  for (int i = 0; i < randoms; ++i) {
    const std::uint64_t is = mix_seed(seed, 6, static_cast<std::uint64_t>(i));
    const Eigen::Index d = 1 + i % 6;
    const TraceRankResult r = trace_rank_check(random_gaussian(d, d, is), 1e-8);
    c.expect(r.holds, "random " + std::to_string(i) + ": lhs " + fmt(r.lhs) +
                          " > rhs " + fmt(r.rhs));
  }
  const int projections = level == Level::full ? 50 : 10;
  for (int i = 0; i < projections; ++i) {
    const std::uint64_t is = mix_seed(seed, 6, 1000 + i);
    const Eigen::Index d = 1 + i % 6;
    const Eigen::Index r = 1 + i % d;
    const ComplexMatrix u = random_unitary(d, is);
    ComplexMatrix proj = ComplexMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < r; ++k) {
      proj += u.col(k) * u.col(k).adjoint();
    }
    Rng rng(mix_seed(is, 60));
    const ComplexMatrix t = rng.complex_gaussian() * proj;
    const TraceRankResult res = trace_rank_check(t, 1e-8);
    const double gap = std::abs(res.lhs - res.rhs);
    c.expect(res.holds && gap <= 1e-8 * std::max(1.0, res.rhs),
             "projection " + std::to_string(i) + ": |lhs - rhs| = " + fmt(gap));
  }
}

// 7. Hilbert model: slicing round trip, slice norm bounds, the vectorization
//    identity, certified spectral lower bounds, the tensor bound, and the
//    mu-norm bounds.
void criterion_hilbert(Level level, std::uint64_t seed, Check& c) {
  constexpr std::array<std::array<Eigen::Index, 3>, 5> dims_table = {{
      {1, 1, 1},
      {2, 2, 1},
      {3, 2, 2},
      {2, 3, 3},
      {3, 3, 3},
  }};

  // Slice/stitch round trip, bitwise.
  for (std::size_t i = 0; i < dims_table.size(); ++i) {
    const HilbertDims dims(dims_table[i][0], dims_table[i][1],
                           dims_table[i][2]);
    const ComplexMatrix t =
        random_gaussian(dims.dTotal(), dims.dTotal(), mix_seed(seed, 7, i));
    const ComplexMatrix back = stitch(slice(t, dims));
    c.expect(back == t, "slice/stitch round trip is not bitwise");
  }

  // Slice norm bounds |T_{u,v}|_mu <= |T|_mu |u| |v| for mu in {1,2,op}.
  const int norm_seeds = level == Level::full ? 20 : 6;
  for (int s = 0; s < norm_seeds; ++s) {
    const std::uint64_t is = mix_seed(seed, 7, 100 + s);
    const auto& dt = dims_table[static_cast<std::size_t>(s) % dims_table.size()];
    const HilbertDims dims(dt[0], dt[1], dt[2]);
    const ComplexMatrix t =
        random_gaussian(dims.dTotal(), dims.dTotal(), mix_seed(is, 70));
    const ComplexMatrix uv = random_gaussian(dims.dK, 2, mix_seed(is, 71));
    const std::vector<ComplexMatrix> blocks = slice(t, dims);
    ComplexMatrix tuv = ComplexMatrix::Zero(dims.dH(), dims.dH());
    for (Eigen::Index i = 0; i < dims.dK; ++i) {
      for (Eigen::Index j = 0; j < dims.dK; ++j) {
        tuv += std::conj(uv(i, 0)) * uv(j, 1) *
               blocks[static_cast<std::size_t>(i * dims.dK + j)];
      }
    }
    const double uu = uv.col(0).norm();
    const double vv = uv.col(1).norm();
    const double slack = 1.0 + 1e-8;
    c.expect(trace_norm(tuv) <= trace_norm(t) * uu * vv * slack,
             "slice trace-norm bound failed");
    c.expect(tuv.norm() <= t.norm() * uu * vv * slack,
             "slice Frobenius bound failed");
    c.expect(operator_norm(tuv) <= operator_norm(t) * uu * vv * slack,
             "slice operator-norm bound failed");
  }

  // Vectorization identity.
  const int vec_seeds = level == Level::full ? 20 : 6;
  for (int s = 0; s < vec_seeds; ++s) {
    const std::uint64_t is = mix_seed(seed, 7, 200 + s);
    const Eigen::Index m = 1 + s % 4;
    const Eigen::Index n = 1 + (s / 2) % 4;
    const Eigen::Index beta = 1 + s % 3;
    const ComplexMatrix a = random_gaussian(m, beta, mix_seed(is, 72));
    const ComplexMatrix b = random_gaussian(n, beta, mix_seed(is, 73));
    const ComplexMatrix x = random_gaussian(n, m, mix_seed(is, 74));
    const ComplexMatrix aa = a * a.adjoint();
    const ComplexMatrix bb = b * b.adjoint();
    const ComplexVector lhs = kron(aa, bb) * vec(x);
    const ComplexVector rhs = vec(bb * x * aa.conjugate());
    const double err = (lhs - rhs).norm();
    c.expect(err <= 1e-10 * (1.0 + rhs.norm()),
             "vec identity off by " + fmt(err));
  }

  // Certified spectral lower bounds.
  const int lb_instances = level == Level::full ? 100 : 20;
  for (int i = 0; i < lb_instances; ++i) {
    const std::uint64_t is = mix_seed(seed, 7, 300 + i);
    const HilbertDims dims(1 + i % 3, 1 + (i / 2) % 3, 1 + (i / 5) % 3);
    const Eigen::Index rank = std::min<Eigen::Index>(1 + i % 4, dims.dTotal());
    const TraceClassOp t(dims,
                         random_psd(dims.dTotal(), rank, mix_seed(is, 75)));
    const Eigen::Index beta = 1 + i % 3;
    const ComplexMatrix a = random_gaussian(dims.dH1, beta, mix_seed(is, 76));
    const ComplexMatrix b = random_gaussian(dims.dH2, beta, mix_seed(is, 77));
    const HilbertCertification res =
        hilbert_lower_bound(t, a, b, 1e-8, 8, mix_seed(is, 78));
    c.expect(res.certificate.certified(),
             "hilbert bound instance " + std::to_string(i) +
                 ": diff_eig_min = " + fmt(res.certificate.diff_eig_min));
  }

  // Tensor bound.
  const int tb_instances = level == Level::full ? 100 : 20;
  for (int i = 0; i < tb_instances; ++i) {
    const std::uint64_t is = mix_seed(seed, 7, 400 + i);
    const Eigen::Index d1 = 1 + i % 4;
    const Eigen::Index d2 = 1 + (i / 2) % 4;
    const Eigen::Index beta = 1 + i % 4;
    const TensorBoundResult res =
        tensor_bound_check(random_gaussian(d1, beta, mix_seed(is, 79)),
                           random_gaussian(d2, beta, mix_seed(is, 80)), 1e-8);
    c.expect(res.certificate.certified(),
             "tensor bound instance " + std::to_string(i) +
                 ": diff_eig_min = " + fmt(res.certificate.diff_eig_min));
  }

  // Norm bounds |P (star) Q|_mu <= |P|_2 |T|_mu |Q|_2.
  const int nb_instances = level == Level::full ? 30 : 8;
  for (int i = 0; i < nb_instances; ++i) {
    const std::uint64_t is = mix_seed(seed, 7, 500 + i);
    const auto& dt = dims_table[static_cast<std::size_t>(i) % dims_table.size()];
    const HilbertDims dims(dt[0], dt[1], dt[2]);
    const Eigen::Index rank = std::min<Eigen::Index>(1 + i % 4, dims.dTotal());
    const ComplexMatrix t =
        random_psd(dims.dTotal(), rank, mix_seed(is, 81));
    const ComplexMatrix p = random_gaussian(dims.dH1, dims.dH1, mix_seed(is, 82));
    const ComplexMatrix q = random_gaussian(dims.dH2, dims.dH2, mix_seed(is, 83));
    const ComplexMatrix prod = hilbert_eval(t, dims, p, q);
    const double slack = 1.0 + 1e-8;
    c.expect(trace_norm(prod) <= p.norm() * trace_norm(t) * q.norm() * slack,
             "trace-norm bound failed at instance " + std::to_string(i));
    c.expect(prod.norm() <= p.norm() * t.norm() * q.norm() * slack,
             "Frobenius bound failed at instance " + std::to_string(i));
  }
}

// 8. Basis independence of the spectral bound data under rotations of the
//    K-factor basis.
void criterion_basis_invariance(Level level, std::uint64_t seed, Check& c) {
  const int instances = level == Level::full ? 20 : 5;
  const int unitaries = level == Level::full ? 50 : 10;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t is = mix_seed(seed, 8, static_cast<std::uint64_t>(i));
    const HilbertDims dims(1 + i % 3, 1 + (i / 2) % 3, 1 + (i / 4) % 3);
    const Eigen::Index rank = std::min<Eigen::Index>(1 + i % 3, dims.dTotal());
    const TraceClassOp t(dims,
                         random_psd(dims.dTotal(), rank, mix_seed(is, 90)));
    const Eigen::Index beta = 1 + i % 3;
    const ComplexMatrix a = random_gaussian(dims.dH1, beta, mix_seed(is, 91));
    const ComplexMatrix b = random_gaussian(dims.dH2, beta, mix_seed(is, 92));
    for (int k = 0; k < unitaries; ++k) {
      const ComplexMatrix u = random_unitary(dims.dK, mix_seed(is, 93, k));
      const bool same =
          basis_invariance_check(t, a, b, u, 1e-8, 8, mix_seed(is, 94));
      c.expect(same, "instance " + std::to_string(i) + " unitary " +
                         std::to_string(k) + " broke invariance");
    }
  }
}

// 9. Cone structure: combinations stay PSD-valid, decomposition reconstructs
//    the parameter, and component counts match the numeric rank.
void criterion_cone(Level level, std::uint64_t seed, Check& c) {
  const int instances = level == Level::full ? 100 : 25;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t is = mix_seed(seed, 9, static_cast<std::uint64_t>(i));
    const auto& d =
        kSmallDims[static_cast<std::size_t>(i) % kSmallDims.size()];
    const ProductParam p1 =
        random_custom_param(d[0], d[1], d[2], 1 + i % 3, mix_seed(is, 95));
    const ProductParam p2 =
        random_custom_param(d[0], d[1], d[2], 1 + (i / 2) % 3,
                            mix_seed(is, 96));
    Rng rng(mix_seed(is, 97));
    const double alpha = 0.1 + 1.9 * rng.uniform();
    const double beta = 0.1 + 1.9 * rng.uniform();
    const ProductParam comb = cone_combine(alpha, p1, beta, p2);

    const std::vector<RankOneComponent> comps = decompose(comb);
    ComplexMatrix sum =
        ComplexMatrix::Zero(comb.y().rows(), comb.y().cols());
    for (const RankOneComponent& comp : comps) {
      sum += comp.implied_y();
    }
    const double err = (sum - comb.y()).norm();
    c.expect(err <= 1e-9 * std::max(1.0, comb.y().norm()),
             "instance " + std::to_string(i) +
                 ": reconstruction error " + fmt(err));
    c.expect(static_cast<Eigen::Index>(comps.size()) ==
                 numeric_rank(comb.y()),
             "instance " + std::to_string(i) + ": " +
                 std::to_string(comps.size()) + " components vs rank " +
                 std::to_string(numeric_rank(comb.y())));
  }
}

struct Criterion {
  int number;
  const char* name;
  double budget_s;
  void (*fn)(Level, std::uint64_t, Check&);
};

constexpr std::array<Criterion, 9> kCriteria = {{
    {1, "oracle-equivalence", 5.0, criterion_oracle_equivalence},
    {2, "schur-positivity", 30.0, criterion_schur_positivity},
    {3, "sharp-lower-bound", 60.0, criterion_sharp_lower_bound},
    {4, "equality-cases", 5.0, criterion_equality_cases},
    {5, "optimality-witness", 60.0, criterion_optimality},
    {6, "trace-rank", 5.0, criterion_trace_rank},
    {7, "hilbert-model", 120.0, criterion_hilbert},
    {8, "basis-invariance", 60.0, criterion_basis_invariance},
    {9, "cone-structure", 10.0, criterion_cone},
}};

}  // namespace

int run(Level level, std::uint64_t seed, const LineSink& sink,
        std::vector<CriterionResult>* results) {
  int failures = 0;
  for (const Criterion& crit : kCriteria) {
    Check check;
    const auto start = Clock::now();
    try {
      crit.fn(level, seed, check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();

    CriterionResult res;
    res.number = crit.number;
    res.name = crit.name;
    res.elapsed_s = elapsed;
    res.budget_s = crit.budget_s;
    res.passed = check.ok;
    if (level == Level::full && elapsed > crit.budget_s) {
      res.passed = false;
      check.first_failure = "runtime " + fmt(elapsed) + "s exceeds budget " +
                            fmt(crit.budget_s) + "s";
    }
    res.detail = res.passed ? std::to_string(check.checks) + " checks"
                            : check.first_failure;
    if (!res.passed) ++failures;

    if (sink) {
      std::ostringstream line;
      line << (res.passed ? "PASS" : "FAIL") << "  " << res.number << " "
           << res.name << "  (" << fmt(res.elapsed_s) << "s / budget "
           << fmt(res.budget_s) << "s)  " << res.detail;
      sink(line.str());
    }
    if (results) results->push_back(std::move(res));
  }
  return failures;
}

}  // namespace posprod::selftest
