#include "posprod.h"

#include <map>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "posprod/certify.hpp"
#include "posprod/hilbert.hpp"
#include "posprod/selftest.hpp"

using json = nlohmann::ordered_json;

struct pp_matrix {
  posprod::ComplexMatrix m;
};

struct pp_param {
  posprod::ProductParam p;
};

struct pp_report {
  json doc;
  std::map<std::string, posprod::ComplexMatrix> matrices;
  int certified = -1;
  double diff_eig_min = std::numeric_limits<double>::quiet_NaN();
  mutable std::string dumped;
};

namespace {

thread_local std::string g_last_error;

pp_status status_from(const posprod::Error& e) {
  using posprod::ErrorCode;
  switch (e.code()) {
    case ErrorCode::dimension_mismatch: return PP_ERR_DIMENSION;
    case ErrorCode::not_hermitian: return PP_ERR_NOT_HERMITIAN;
    case ErrorCode::not_psd: return PP_ERR_NOT_PSD;
    case ErrorCode::invalid_parameter: return PP_ERR_PARAMETER;
    case ErrorCode::degenerate_input: return PP_ERR_DEGENERATE;
    case ErrorCode::ill_conditioned: return PP_ERR_ILL_CONDITIONED;
    case ErrorCode::size_limit: return PP_ERR_SIZE_LIMIT;
    case ErrorCode::io_error: return PP_ERR_IO;
  }
  return PP_ERR_INTERNAL;
}

template <typename Fn>
pp_status guarded(Fn&& fn) {
  try {
    fn();
    return PP_OK;
  } catch (const posprod::Error& e) {
    g_last_error = e.what();
    return status_from(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PP_ERR_INTERNAL;
  }
}

pp_status required(const void* p, const char* what) {
  if (p != nullptr) return PP_OK;
  g_last_error = std::string(what) + " must not be null";
  return PP_ERR_PARAMETER;
}

json complex_vector_json(const posprod::ComplexVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    arr.push_back({v(i).real(), v(i).imag()});
  }
  return arr;
}

json bound_report_json(const posprod::BoundReport& rep) {
  json j;
  j["rank_a"] = rep.rank_a;
  j["rank_b"] = rep.rank_b;
  json comps = json::array();
  for (const posprod::BoundComponent& c : rep.components) {
    json cj;
    cj["rho"] = complex_vector_json(c.rho);
    cj["rho_norm"] = c.rho.norm();
    if (c.r_span.has_value()) {
      cj["r_span"] = *c.r_span;
    } else {
      cj["r_span"] = nullptr;  // the infinity flag
    }
    cj["r_span_trials"] = c.r_span_trials;
    if (c.divisor.has_value()) {
      cj["divisor"] = *c.divisor;
    } else {
      cj["divisor"] = nullptr;
    }
    cj["weight"] = c.weight;
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  return j;
}

void fill_certificate(pp_report& report, const posprod::LoewnerCertificate& c) {
  report.doc["verdict"] = c.certified() ? "certified" : "violated";
  report.doc["diff_eig_min"] = c.diff_eig_min;
  report.doc["tolerance"] = c.tolerance;
  report.doc["context"] = c.context;
  report.certified = c.certified() ? 1 : 0;
  report.diff_eig_min = c.diff_eig_min;
}

posprod::ComplexMatrix to_matrix(size_t rows, size_t cols,
                                 const double* interleaved) {
  posprod::check_side_limit(rows, cols, "pp_matrix_create");
  posprod::ComplexMatrix m(static_cast<Eigen::Index>(rows),
                           static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const std::size_t k =
          2 * (static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j));
      m(i, j) = posprod::Complex(interleaved[k], interleaved[k + 1]);
    }
  }
  posprod::require_finite(m, "pp_matrix_create");
  return m;
}

}  // namespace

extern "C" {

const char* pp_version(void) { return "1.0.0"; }

const char* pp_status_name(pp_status status) {
  switch (status) {
    case PP_OK: return "ok";
    case PP_ERR_DIMENSION: return "dimension-mismatch";
    case PP_ERR_NOT_HERMITIAN: return "not-hermitian";
    case PP_ERR_NOT_PSD: return "not-psd";
    case PP_ERR_PARAMETER: return "invalid-parameter";
    case PP_ERR_DEGENERATE: return "degenerate-input";
    case PP_ERR_ILL_CONDITIONED: return "ill-conditioned";
    case PP_ERR_SIZE_LIMIT: return "size-limit";
    case PP_ERR_IO: return "io-error";
    case PP_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* pp_last_error(void) { return g_last_error.c_str(); }

pp_status pp_set_max_side(size_t side) {
  return guarded([&] { posprod::set_max_matrix_side(side); });
}

size_t pp_max_side(void) { return posprod::max_matrix_side(); }

pp_status pp_matrix_create(size_t rows, size_t cols, const double* interleaved,
                           pp_matrix** out) {
  if (pp_status s = required(interleaved, "data"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] { *out = new pp_matrix{to_matrix(rows, cols, interleaved)}; });
}

void pp_matrix_free(pp_matrix* m) { delete m; }

size_t pp_matrix_rows(const pp_matrix* m) {
  return m ? static_cast<size_t>(m->m.rows()) : 0;
}

size_t pp_matrix_cols(const pp_matrix* m) {
  return m ? static_cast<size_t>(m->m.cols()) : 0;
}

pp_status pp_matrix_copy_data(const pp_matrix* m, double* interleaved) {
  if (pp_status s = required(m, "matrix"); s != PP_OK) return s;
  if (pp_status s = required(interleaved, "data"); s != PP_OK) return s;
  for (Eigen::Index i = 0; i < m->m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m->m.cols(); ++j) {
      const std::size_t k = 2 * (static_cast<std::size_t>(i) *
                                     static_cast<std::size_t>(m->m.cols()) +
                                 static_cast<std::size_t>(j));
      interleaved[k] = m->m(i, j).real();
      interleaved[k + 1] = m->m(i, j).imag();
    }
  }
  return PP_OK;
}

pp_status pp_matrix_random_gaussian(size_t rows, size_t cols, uint64_t seed,
                                    pp_matrix** out) {
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    *out = new pp_matrix{posprod::random_gaussian(
        static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols),
        seed)};
  });
}

pp_status pp_matrix_random_psd(size_t dim, size_t rank, uint64_t seed,
                               pp_matrix** out) {
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    *out = new pp_matrix{posprod::random_psd(static_cast<Eigen::Index>(dim),
                                             static_cast<Eigen::Index>(rank),
                                             seed)};
  });
}

pp_status pp_matrix_numeric_rank(const pp_matrix* m, size_t* out) {
  if (pp_status s = required(m, "matrix"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded(
      [&] { *out = static_cast<size_t>(posprod::numeric_rank(m->m)); });
}

pp_status pp_param_hadamard(size_t n, pp_param** out) {
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    *out = new pp_param{posprod::make_param(
        posprod::ProductKind::hadamard(static_cast<Eigen::Index>(n)))};
  });
}

pp_status pp_param_kronecker(size_t m, size_t n, pp_param** out) {
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    *out = new pp_param{posprod::make_param(posprod::ProductKind::kronecker(
        static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)))};
  });
}

pp_status pp_param_convolution(size_t n, pp_param** out) {
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    *out = new pp_param{posprod::make_param(
        posprod::ProductKind::convolution(static_cast<Eigen::Index>(n)))};
  });
}

pp_status pp_param_custom(size_t m, size_t n, size_t big_n, const pp_matrix* y,
                          pp_param** out) {
  if (pp_status s = required(y, "parameter matrix"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    *out = new pp_param{posprod::make_param(posprod::ProductKind::custom(
        static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n),
        static_cast<Eigen::Index>(big_n), y->m))};
  });
}

pp_status pp_param_combine(double alpha, const pp_param* p1, double beta,
                           const pp_param* p2, pp_param** out) {
  if (pp_status s = required(p1, "p1"); s != PP_OK) return s;
  if (pp_status s = required(p2, "p2"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    *out = new pp_param{posprod::cone_combine(alpha, p1->p, beta, p2->p)};
  });
}

void pp_param_free(pp_param* p) { delete p; }

void pp_param_dims(const pp_param* p, size_t* m, size_t* n, size_t* big_n) {
  if (!p) return;
  if (m) *m = static_cast<size_t>(p->p.m());
  if (n) *n = static_cast<size_t>(p->p.n());
  if (big_n) *big_n = static_cast<size_t>(p->p.N());
}

pp_status pp_param_matrix(const pp_param* p, pp_matrix** y_out) {
  if (pp_status s = required(p, "param"); s != PP_OK) return s;
  if (pp_status s = required(y_out, "out"); s != PP_OK) return s;
  return guarded([&] { *y_out = new pp_matrix{p->p.y()}; });
}

pp_status pp_param_rank(const pp_param* p, size_t* out) {
  if (pp_status s = required(p, "param"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded(
      [&] { *out = static_cast<size_t>(posprod::numeric_rank(p->p.y())); });
}

pp_status pp_eval(const pp_param* p, const pp_matrix* a, const pp_matrix* b,
                  pp_matrix** out) {
  if (pp_status s = required(p, "param"); s != PP_OK) return s;
  if (pp_status s = required(a, "A"); s != PP_OK) return s;
  if (pp_status s = required(b, "B"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded(
      [&] { *out = new pp_matrix{posprod::eval_product(p->p, a->m, b->m)}; });
}

pp_status pp_direct_eval(pp_kind kind, const pp_matrix* a, const pp_matrix* b,
                         pp_matrix** out) {
  if (pp_status s = required(a, "A"); s != PP_OK) return s;
  if (pp_status s = required(b, "B"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    posprod::ProductKind pk = [&] {
      switch (kind) {
        case PP_KIND_HADAMARD:
          return posprod::ProductKind::hadamard(a->m.rows());
        case PP_KIND_KRONECKER:
          return posprod::ProductKind::kronecker(a->m.rows(), b->m.rows());
        case PP_KIND_CONVOLUTION:
          return posprod::ProductKind::convolution(a->m.rows());
        default:
          throw posprod::Error(posprod::ErrorCode::invalid_parameter,
                               "pp_direct_eval: custom kind has no formula");
      }
    }();
    *out = new pp_matrix{posprod::direct_eval(pk, a->m, b->m)};
  });
}

void pp_report_free(pp_report* r) { delete r; }

const char* pp_report_json(const pp_report* r) {
  if (!r) return "";
  r->dumped = r->doc.dump(2);
  return r->dumped.c_str();
}

int pp_report_certified(const pp_report* r) { return r ? r->certified : -1; }

double pp_report_diff_eig_min(const pp_report* r) {
  return r ? r->diff_eig_min : std::numeric_limits<double>::quiet_NaN();
}

pp_status pp_report_matrix(const pp_report* r, const char* key,
                           pp_matrix** out) {
  if (pp_status s = required(r, "report"); s != PP_OK) return s;
  if (pp_status s = required(key, "key"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  const auto it = r->matrices.find(key);
  if (it == r->matrices.end()) {
    g_last_error = std::string("report has no matrix named '") + key + "'";
    return PP_ERR_PARAMETER;
  }
  *out = new pp_matrix{it->second};
  return PP_OK;
}

pp_status pp_lower_bound(const pp_param* p, const pp_matrix* a,
                         const pp_matrix* b, double tol, int trials,
                         uint64_t seed, pp_report** out) {
  if (pp_status s = required(p, "param"); s != PP_OK) return s;
  if (pp_status s = required(a, "A"); s != PP_OK) return s;
  if (pp_status s = required(b, "B"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    const posprod::BoundReport rep =
        posprod::lower_bound(p->p, a->m, b->m, tol, trials, seed);
    auto* r = new pp_report;
    r->doc["type"] = "bound";
    r->doc["bound"] = bound_report_json(rep);
    r->matrices["L"] = rep.lower;
    *out = r;
  });
}

pp_status pp_certify(const pp_param* p, const pp_matrix* a, const pp_matrix* b,
                     double tol, int trials, uint64_t seed, pp_report** out) {
  if (pp_status s = required(p, "param"); s != PP_OK) return s;
  if (pp_status s = required(a, "A"); s != PP_OK) return s;
  if (pp_status s = required(b, "B"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    const posprod::ProductCertification res =
        posprod::certify_product_bound(p->p, a->m, b->m, tol, trials, seed);
    auto* r = new pp_report;
    r->doc["type"] = "certify";
    fill_certificate(*r, res.certificate);
    r->doc["bound"] = bound_report_json(res.report);
    r->matrices["M"] = res.certificate.lhs;
    r->matrices["L"] = res.report.lower;
    *out = r;
  });
}

pp_status pp_witness(const pp_param* p, size_t component, size_t beta,
                     int trials, uint64_t seed, pp_report** out) {
  if (pp_status s = required(p, "param"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    const std::vector<posprod::RankOneComponent> comps =
        posprod::decompose(p->p);
    if (component >= comps.size()) {
      throw posprod::Error(posprod::ErrorCode::invalid_parameter,
                           "pp_witness: component index " +
                               std::to_string(component) + " out of range (" +
                               std::to_string(comps.size()) + " components)");
    }
    const posprod::OptimalityWitness w = posprod::optimality_witness(
        comps[component], static_cast<Eigen::Index>(beta), seed, trials);
    auto* r = new pp_report;
    r->doc["type"] = "witness";
    r->doc["component"] = component;
    r->doc["beta"] = beta;
    r->doc["r0"] = w.r0;
    r->doc["achieved_ratio"] = w.achieved_ratio;
    r->doc["u"] = complex_vector_json(w.u);
    r->matrices["A"] = w.a;
    r->matrices["B"] = w.b;
    r->matrices["T_check"] = w.t_check;
    r->matrices["U0"] = w.u0;
    *out = r;
  });
}

pp_status pp_loewner_geq(const pp_matrix* lhs, const pp_matrix* rhs,
                         double tol, pp_report** out) {
  if (pp_status s = required(lhs, "lhs"); s != PP_OK) return s;
  if (pp_status s = required(rhs, "rhs"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    const posprod::LoewnerCertificate cert =
        posprod::loewner_geq(lhs->m, rhs->m, tol, "loewner_geq");
    auto* r = new pp_report;
    r->doc["type"] = "loewner";
    fill_certificate(*r, cert);
    *out = r;
  });
}

pp_status pp_hilbert_slice(const pp_matrix* t, size_t dk, size_t dh1,
                           size_t dh2, size_t i, size_t j, pp_matrix** out) {
  if (pp_status s = required(t, "T"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    const posprod::HilbertDims dims(static_cast<Eigen::Index>(dk),
                                    static_cast<Eigen::Index>(dh1),
                                    static_cast<Eigen::Index>(dh2));
    if (i >= dk || j >= dk) {
      throw posprod::Error(posprod::ErrorCode::invalid_parameter,
                           "pp_hilbert_slice: block index out of range");
    }
    const std::vector<posprod::ComplexMatrix> blocks =
        posprod::slice(t->m, dims);
    *out = new pp_matrix{blocks[i * dk + j]};
  });
}

pp_status pp_hilbert_eval(const pp_matrix* t, size_t dk, size_t dh1,
                          size_t dh2, const pp_matrix* p, const pp_matrix* q,
                          pp_matrix** out) {
  if (pp_status s = required(t, "T"); s != PP_OK) return s;
  if (pp_status s = required(p, "P"); s != PP_OK) return s;
  if (pp_status s = required(q, "Q"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    const posprod::HilbertDims dims(static_cast<Eigen::Index>(dk),
                                    static_cast<Eigen::Index>(dh1),
                                    static_cast<Eigen::Index>(dh2));
    *out = new pp_matrix{posprod::hilbert_eval(t->m, dims, p->m, q->m)};
  });
}

pp_status pp_hilbert_certify(const pp_matrix* t, size_t dk, size_t dh1,
                             size_t dh2, const pp_matrix* a,
                             const pp_matrix* b, double tol, int trials,
                             uint64_t seed, pp_report** out) {
  if (pp_status s = required(t, "T"); s != PP_OK) return s;
  if (pp_status s = required(a, "A"); s != PP_OK) return s;
  if (pp_status s = required(b, "B"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    const posprod::HilbertDims dims(static_cast<Eigen::Index>(dk),
                                    static_cast<Eigen::Index>(dh1),
                                    static_cast<Eigen::Index>(dh2));
    const posprod::TraceClassOp top(dims, t->m);
    const posprod::HilbertCertification res =
        posprod::hilbert_lower_bound(top, a->m, b->m, tol, trials, seed);
    auto* r = new pp_report;
    r->doc["type"] = "hilbert-certify";
    fill_certificate(*r, res.certificate);
    r->doc["bound"] = bound_report_json(res.report);
    r->matrices["M"] = res.certificate.lhs;
    r->matrices["L"] = res.report.lower;
    *out = r;
  });
}

pp_status pp_tensor_check(const pp_matrix* a, const pp_matrix* b, double tol,
                          pp_report** out) {
  if (pp_status s = required(a, "A"); s != PP_OK) return s;
  if (pp_status s = required(b, "B"); s != PP_OK) return s;
  if (pp_status s = required(out, "out"); s != PP_OK) return s;
  return guarded([&] {
    const posprod::TensorBoundResult res =
        posprod::tensor_bound_check(a->m, b->m, tol);
    auto* r = new pp_report;
    r->doc["type"] = "tensor-check";
    fill_certificate(*r, res.certificate);
    r->doc["divisor"] = res.divisor;
    r->doc["rho"] = complex_vector_json(res.rho);
    *out = r;
  });
}

int pp_selftest(int level, uint64_t seed, pp_line_sink sink, void* user) {
  const auto lvl = level == 0 ? posprod::selftest::Level::quick
                              : posprod::selftest::Level::full;
  posprod::selftest::LineSink cpp_sink;
  if (sink) {
    cpp_sink = [sink, user](const std::string& line) {
      sink(line.c_str(), user);
    };
  }
  try {
    return posprod::selftest::run(lvl, seed, cpp_sink);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return -1;
  }
}

}  // extern "C"
