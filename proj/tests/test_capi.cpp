#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "posprod.h"

namespace {

struct MatrixGuard {
  pp_matrix* m = nullptr;
  ~MatrixGuard() { pp_matrix_free(m); }
};
struct ParamGuard {
  pp_param* p = nullptr;
  ~ParamGuard() { pp_param_free(p); }
};
struct ReportGuard {
  pp_report* r = nullptr;
  ~ReportGuard() { pp_report_free(r); }
};

std::vector<double> identity_data(std::size_t n) {
  std::vector<double> d(2 * n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[2 * (i * n + i)] = 1.0;
  return d;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(pp_version()) > 0);
  CHECK(std::string(pp_status_name(PP_OK)) == "ok");
  CHECK(std::string(pp_status_name(PP_ERR_NOT_PSD)) == "not-psd");
}

TEST_CASE("matrix create, dims, and data round trip") {
  const std::vector<double> data = {1.0, 0.5, -2.0, 0.0, 3.0, -1.0, 0.0, 4.0};
  MatrixGuard m;
  REQUIRE(pp_matrix_create(2, 2, data.data(), &m.m) == PP_OK);
  CHECK(pp_matrix_rows(m.m) == 2);
  CHECK(pp_matrix_cols(m.m) == 2);
  std::vector<double> out(8, 0.0);
  REQUIRE(pp_matrix_copy_data(m.m, out.data()) == PP_OK);
  CHECK(out == data);
}

TEST_CASE("matrix create rejects null and non-finite input") {
  MatrixGuard m;
  CHECK(pp_matrix_create(2, 2, nullptr, &m.m) == PP_ERR_PARAMETER);
  std::vector<double> bad = identity_data(2);
  bad[0] = std::nan("");
  CHECK(pp_matrix_create(2, 2, bad.data(), &m.m) == PP_ERR_PARAMETER);
  CHECK(std::strlen(pp_last_error()) > 0);
}

TEST_CASE("random matrices are deterministic per seed") {
  MatrixGuard a, b;
  REQUIRE(pp_matrix_random_gaussian(3, 2, 7, &a.m) == PP_OK);
  REQUIRE(pp_matrix_random_gaussian(3, 2, 7, &b.m) == PP_OK);
  std::vector<double> da(12), db(12);
  REQUIRE(pp_matrix_copy_data(a.m, da.data()) == PP_OK);
  REQUIRE(pp_matrix_copy_data(b.m, db.data()) == PP_OK);
  CHECK(da == db);

  MatrixGuard psd;
  REQUIRE(pp_matrix_random_psd(4, 2, 3, &psd.m) == PP_OK);
  std::size_t rank = 0;
  REQUIRE(pp_matrix_numeric_rank(psd.m, &rank) == PP_OK);
  CHECK(rank == 2);

  CHECK(pp_matrix_random_psd(3, 5, 0, &psd.m) == PP_ERR_PARAMETER);
}

TEST_CASE("parameter constructors and dims") {
  ParamGuard had;
  REQUIRE(pp_param_hadamard(2, &had.p) == PP_OK);
  std::size_t m = 0, n = 0, N = 0;
  pp_param_dims(had.p, &m, &n, &N);
  CHECK(m == 2);
  CHECK(n == 2);
  CHECK(N == 2);
  MatrixGuard y;
  REQUIRE(pp_param_matrix(had.p, &y.m) == PP_OK);
  CHECK(pp_matrix_rows(y.m) == 8);
  std::size_t rank = 0;
  REQUIRE(pp_param_rank(had.p, &rank) == PP_OK);
  CHECK(rank == 1);

  ParamGuard kro;
  REQUIRE(pp_param_kronecker(2, 3, &kro.p) == PP_OK);
  pp_param_dims(kro.p, &m, &n, &N);
  CHECK(m == 2);
  CHECK(n == 3);
  CHECK(N == 6);
}

TEST_CASE("custom parameters validate positivity") {
  std::vector<double> diag = identity_data(8);
  diag[2 * 9] = -1.0;  // entry (1,1) = -1
  MatrixGuard y;
  REQUIRE(pp_matrix_create(8, 8, diag.data(), &y.m) == PP_OK);
  ParamGuard p;
  CHECK(pp_param_custom(2, 2, 2, y.m, &p.p) == PP_ERR_NOT_PSD);
  CHECK(pp_param_custom(2, 2, 3, y.m, &p.p) == PP_ERR_DIMENSION);
}

TEST_CASE("combine respects the cone constraints") {
  ParamGuard had, con, sum;
  REQUIRE(pp_param_hadamard(2, &had.p) == PP_OK);
  REQUIRE(pp_param_convolution(2, &con.p) == PP_OK);
  REQUIRE(pp_param_combine(1.0, had.p, 1.0, con.p, &sum.p) == PP_OK);
  std::size_t rank = 0;
  REQUIRE(pp_param_rank(sum.p, &rank) == PP_OK);
  CHECK(rank == 2);
  ParamGuard bad;
  CHECK(pp_param_combine(-1.0, had.p, 1.0, con.p, &bad.p) ==
        PP_ERR_PARAMETER);
}

TEST_CASE("eval agrees with the direct formulas") {
  ParamGuard con;
  REQUIRE(pp_param_convolution(3, &con.p) == PP_OK);
  MatrixGuard a, b;
  REQUIRE(pp_matrix_random_gaussian(3, 3, 11, &a.m) == PP_OK);
  REQUIRE(pp_matrix_random_gaussian(3, 3, 12, &b.m) == PP_OK);
  MatrixGuard via_y, direct;
  REQUIRE(pp_eval(con.p, a.m, b.m, &via_y.m) == PP_OK);
  REQUIRE(pp_direct_eval(PP_KIND_CONVOLUTION, a.m, b.m, &direct.m) == PP_OK);
  std::vector<double> d1(18), d2(18);
  REQUIRE(pp_matrix_copy_data(via_y.m, d1.data()) == PP_OK);
  REQUIRE(pp_matrix_copy_data(direct.m, d2.data()) == PP_OK);
  for (std::size_t k = 0; k < d1.size(); ++k) {
    CHECK(std::abs(d1[k] - d2[k]) <= 1e-10);
  }
}

TEST_CASE("certify returns a certificate with report data") {
  ParamGuard had;
  REQUIRE(pp_param_hadamard(2, &had.p) == PP_OK);
  MatrixGuard eye;
  const std::vector<double> id = identity_data(2);
  REQUIRE(pp_matrix_create(2, 2, id.data(), &eye.m) == PP_OK);

  ReportGuard rep;
  REQUIRE(pp_certify(had.p, eye.m, eye.m, 1e-8, 8, 0, &rep.r) == PP_OK);
  CHECK(pp_report_certified(rep.r) == 1);
  CHECK(std::abs(pp_report_diff_eig_min(rep.r)) <= 1e-10);

  const nlohmann::json j = nlohmann::json::parse(pp_report_json(rep.r));
  CHECK(j["verdict"] == "certified");
  CHECK(j["bound"]["rank_a"] == 2);
  CHECK(j["bound"]["components"].size() == 1);
  CHECK(j["bound"]["components"][0]["divisor"] == 2);

  MatrixGuard lower;
  REQUIRE(pp_report_matrix(rep.r, "L", &lower.m) == PP_OK);
  CHECK(pp_matrix_rows(lower.m) == 2);
  MatrixGuard missing;
  CHECK(pp_report_matrix(rep.r, "nope", &missing.m) == PP_ERR_PARAMETER);
}

TEST_CASE("certify flags degenerate input") {
  ParamGuard had;
  REQUIRE(pp_param_hadamard(2, &had.p) == PP_OK);
  std::vector<double> zero(8, 0.0);
  MatrixGuard z, eye;
  REQUIRE(pp_matrix_create(2, 2, zero.data(), &z.m) == PP_OK);
  const std::vector<double> id = identity_data(2);
  REQUIRE(pp_matrix_create(2, 2, id.data(), &eye.m) == PP_OK);
  ReportGuard rep;
  CHECK(pp_certify(had.p, z.m, eye.m, 1e-8, 8, 0, &rep.r) ==
        PP_ERR_DEGENERATE);
}

TEST_CASE("loewner_geq verdicts through the C API") {
  MatrixGuard eye, zero;
  const std::vector<double> id = identity_data(2);
  const std::vector<double> zd(8, 0.0);
  REQUIRE(pp_matrix_create(2, 2, id.data(), &eye.m) == PP_OK);
  REQUIRE(pp_matrix_create(2, 2, zd.data(), &zero.m) == PP_OK);

  ReportGuard pos, neg;
  REQUIRE(pp_loewner_geq(eye.m, zero.m, 1e-10, &pos.r) == PP_OK);
  CHECK(pp_report_certified(pos.r) == 1);
  REQUIRE(pp_loewner_geq(zero.m, eye.m, 1e-10, &neg.r) == PP_OK);
  CHECK(pp_report_certified(neg.r) == 0);
  CHECK(pp_report_diff_eig_min(neg.r) == doctest::Approx(-1.0));
}

TEST_CASE("witness reports the sharp ratio") {
  ParamGuard had;
  REQUIRE(pp_param_hadamard(2, &had.p) == PP_OK);
  ReportGuard rep;
  REQUIRE(pp_witness(had.p, 0, 2, 8, 7, &rep.r) == PP_OK);
  const nlohmann::json j = nlohmann::json::parse(pp_report_json(rep.r));
  CHECK(j["r0"] == 2);
  CHECK(std::abs(j["achieved_ratio"].get<double>() - 0.5) <= 1e-8);
  MatrixGuard t_check;
  REQUIRE(pp_report_matrix(rep.r, "T_check", &t_check.m) == PP_OK);
  CHECK(pp_matrix_rows(t_check.m) == 2);

  CHECK(pp_witness(had.p, 5, 2, 8, 7, &rep.r) == PP_ERR_PARAMETER);
}

TEST_CASE("hilbert operations through the C API") {
  MatrixGuard t;
  REQUIRE(pp_matrix_random_psd(8, 3, 21, &t.m) == PP_OK);

  MatrixGuard block;
  REQUIRE(pp_hilbert_slice(t.m, 2, 2, 2, 0, 1, &block.m) == PP_OK);
  CHECK(pp_matrix_rows(block.m) == 4);
  CHECK(pp_hilbert_slice(t.m, 2, 2, 2, 2, 0, &block.m) == PP_ERR_PARAMETER);
  CHECK(pp_hilbert_slice(t.m, 3, 2, 2, 0, 0, &block.m) == PP_ERR_DIMENSION);

  MatrixGuard a, b;
  REQUIRE(pp_matrix_random_gaussian(2, 2, 22, &a.m) == PP_OK);
  REQUIRE(pp_matrix_random_gaussian(2, 2, 23, &b.m) == PP_OK);
  ReportGuard rep;
  REQUIRE(pp_hilbert_certify(t.m, 2, 2, 2, a.m, b.m, 1e-8, 8, 0, &rep.r) ==
          PP_OK);
  CHECK(pp_report_certified(rep.r) == 1);

  ReportGuard tensor;
  REQUIRE(pp_tensor_check(a.m, b.m, 1e-8, &tensor.r) == PP_OK);
  CHECK(pp_report_certified(tensor.r) == 1);
}

TEST_CASE("size cap is adjustable through the C API") {
  const std::size_t original = pp_max_side();
  REQUIRE(pp_set_max_side(4) == PP_OK);
  CHECK(pp_max_side() == 4);
  ParamGuard p;
  CHECK(pp_param_hadamard(2, &p.p) == PP_ERR_SIZE_LIMIT);  // side would be 8
  REQUIRE(pp_set_max_side(original) == PP_OK);
  CHECK(pp_set_max_side(0) == PP_ERR_PARAMETER);
}

TEST_CASE("quick selftest passes through the C API") {
  int lines = 0;
  const int failures = pp_selftest(
      0, 0,
      [](const char*, void* user) { ++*static_cast<int*>(user); }, &lines);
  CHECK(failures == 0);
  CHECK(lines == 9);
}
