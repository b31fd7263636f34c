// posprod CLI: instance generation, product evaluation, bound computation,
// certification, witness construction, Hilbert-model checks, and JSON
// reporting. Talks to the library exclusively through the C API.
//
// Exit codes: 0 success/certified, 1 violated or failed selftest, 2 input
// error.

#include <chrono>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "matrix_file.hpp"
#include "posprod.h"

namespace {

using posprod_cli::MatrixFileData;
using ordered_json = nlohmann::ordered_json;

struct MatrixDeleter {
  void operator()(pp_matrix* m) const { pp_matrix_free(m); }
};
struct ParamDeleter {
  void operator()(pp_param* p) const { pp_param_free(p); }
};
struct ReportDeleter {
  void operator()(pp_report* r) const { pp_report_free(r); }
};
using MatrixPtr = std::unique_ptr<pp_matrix, MatrixDeleter>;
using ParamPtr = std::unique_ptr<pp_param, ParamDeleter>;
using ReportPtr = std::unique_ptr<pp_report, ReportDeleter>;

class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(const std::string& message) {
  throw CommandError(message);
}

[[noreturn]] void fail_api(const char* what, pp_status status) {
  fail(std::string(what) + ": " + pp_status_name(status) + " (" +
       pp_last_error() + ")");
}

// Collects {path, digest} records for the report.
class InputLog {
 public:
  void note(const std::string& label, const std::string& path,
            const std::string& bytes) {
    ordered_json rec;
    rec["path"] = path;
    rec["fnv1a64"] = posprod_cli::fnv1a64_hex(bytes);
    records_[label] = std::move(rec);
  }
  const ordered_json& json() const { return records_; }

 private:
  ordered_json records_ = ordered_json::object();
};

MatrixPtr load_matrix(const std::string& label, const std::string& path,
                      InputLog& log) {
  const std::string bytes = posprod_cli::read_file_bytes(path);
  log.note(label, path, bytes);
  MatrixFileData data;
  try {
    data = posprod_cli::parse_matrix_json(nlohmann::json::parse(bytes), path);
  } catch (const nlohmann::json::parse_error& e) {
    fail(path + ": " + e.what());
  }
  pp_matrix* raw = nullptr;
  if (const pp_status s =
          pp_matrix_create(data.rows, data.cols, data.data.data(), &raw);
      s != PP_OK) {
    fail_api(path.c_str(), s);
  }
  return MatrixPtr(raw);
}

void save_matrix(const std::string& path, const pp_matrix* m) {
  MatrixFileData data;
  data.rows = pp_matrix_rows(m);
  data.cols = pp_matrix_cols(m);
  data.data.resize(2 * data.rows * data.cols);
  if (const pp_status s = pp_matrix_copy_data(m, data.data.data());
      s != PP_OK) {
    fail_api(path.c_str(), s);
  }
  posprod_cli::write_matrix_file(path, data);
}

std::string sidecar_path(const std::string& param_path) {
  return param_path + ".meta.json";
}

struct ParamMeta {
  std::string kind;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t big_n = 0;
};

ParamPtr load_param(const std::string& path, InputLog& log, ParamMeta* meta) {
  const MatrixPtr y = load_matrix("param", path, log);

  const std::string meta_path = sidecar_path(path);
  const std::string meta_bytes = posprod_cli::read_file_bytes(meta_path);
  log.note("param_meta", meta_path, meta_bytes);
  ordered_json mj;
  try {
    mj = ordered_json::parse(meta_bytes);
  } catch (const nlohmann::json::parse_error& e) {
    fail(meta_path + ": " + e.what());
  }
  if (!mj.contains("m") || !mj.contains("n") || !mj.contains("N")) {
    fail(meta_path + ": sidecar must carry m, n, N");
  }
  ParamMeta pm;
  pm.kind = mj.value("kind", "custom");
  pm.m = mj["m"].get<std::size_t>();
  pm.n = mj["n"].get<std::size_t>();
  pm.big_n = mj["N"].get<std::size_t>();
  if (meta) *meta = pm;

  pp_param* raw = nullptr;
  if (const pp_status s =
          pp_param_custom(pm.m, pm.n, pm.big_n, y.get(), &raw);
      s != PP_OK) {
    fail_api(path.c_str(), s);
  }
  return ParamPtr(raw);
}

class ReportWriter {
 public:
  ReportWriter(std::string command, const std::string& json_path)
      : command_(std::move(command)),
        json_path_(json_path),
        start_(std::chrono::steady_clock::now()) {}

  void finish(const InputLog& inputs, const ordered_json& result,
              int exit_code) const {
    if (json_path_.empty()) return;
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["command"] = command_;
    doc["inputs"] = inputs.json();
    doc["result"] = result;
    doc["exit_code"] = exit_code;
    doc["timing_ms"] = ms;
    std::ofstream out(json_path_, std::ios::binary);
    if (!out) fail("cannot open '" + json_path_ + "' for writing");
    out << doc.dump(2) << "\n";
  }

 private:
  std::string command_;
  std::string json_path_;
  std::chrono::steady_clock::time_point start_;
};

ordered_json report_result_json(const pp_report* r) {
  return ordered_json::parse(pp_report_json(r));
}

int certificate_exit_code(const pp_report* r) {
  const int certified = pp_report_certified(r);
  if (certified == 1) return 0;
  if (certified == 0) {
    std::fprintf(stderr,
                 "verdict: violated (diff_eig_min = %.3e) -- this would "
                 "falsify the certified inequality numerically; suspected "
                 "numerical issue, inspect tolerances and inputs\n",
                 pp_report_diff_eig_min(r));
    return 1;
  }
  return 0;
}

// ---- subcommands ---------------------------------------------------------

struct CommonOpts {
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int trials = 8;
  std::string json_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_trials = true) {
  cmd->add_option("--tol", o.tol, "certification tolerance")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  if (with_trials) {
    cmd->add_option("--trials", o.trials, "span-rank probe trials")
        ->capture_default_str();
  }
  cmd->add_option("--json", o.json_path, "write a JSON report to PATH");
}

int cmd_make_param(const std::string& kind, std::size_t m, std::size_t n,
                   const std::string& out, const std::string& json_path) {
  ReportWriter writer("make-param", json_path);
  pp_param* raw = nullptr;
  pp_status s = PP_ERR_PARAMETER;
  if (kind == "hadamard") {
    s = pp_param_hadamard(n, &raw);
  } else if (kind == "kronecker") {
    if (m == 0) fail("kronecker needs --m");
    s = pp_param_kronecker(m, n, &raw);
  } else if (kind == "convolution") {
    s = pp_param_convolution(n, &raw);
  } else {
    fail("unknown kind '" + kind +
         "' (expected hadamard, kronecker, or convolution)");
  }
  if (s != PP_OK) fail_api("make-param", s);
  const ParamPtr param(raw);

  pp_matrix* y_raw = nullptr;
  if (const pp_status ys = pp_param_matrix(param.get(), &y_raw); ys != PP_OK) {
    fail_api("make-param", ys);
  }
  const MatrixPtr y(y_raw);
  save_matrix(out, y.get());

  std::size_t pm = 0, pn = 0, pN = 0;
  pp_param_dims(param.get(), &pm, &pn, &pN);
  ordered_json meta;
  meta["kind"] = kind;
  meta["m"] = pm;
  meta["n"] = pn;
  meta["N"] = pN;
  std::ofstream meta_out(sidecar_path(out), std::ios::binary);
  if (!meta_out) fail("cannot write sidecar for '" + out + "'");
  meta_out << meta.dump(2) << "\n";

  std::printf("wrote %zux%zu parameter matrix (%s, m=%zu n=%zu N=%zu) to %s\n",
              pp_matrix_rows(y.get()), pp_matrix_cols(y.get()), kind.c_str(),
              pm, pn, pN, out.c_str());
  ordered_json result;
  result["out"] = out;
  result["meta"] = meta;
  writer.finish(InputLog{}, result, 0);
  return 0;
}

int cmd_eval(const std::string& param_path, const std::string& a_path,
             const std::string& b_path, const std::string& out, bool direct,
             const std::string& json_path) {
  ReportWriter writer("eval", json_path);
  InputLog log;
  ParamMeta meta;
  const ParamPtr param = load_param(param_path, log, &meta);
  const MatrixPtr a = load_matrix("a", a_path, log);
  const MatrixPtr b = load_matrix("b", b_path, log);

  pp_matrix* raw = nullptr;
  if (direct) {
    pp_kind kind;
    if (meta.kind == "hadamard") {
      kind = PP_KIND_HADAMARD;
    } else if (meta.kind == "kronecker") {
      kind = PP_KIND_KRONECKER;
    } else if (meta.kind == "convolution") {
      kind = PP_KIND_CONVOLUTION;
    } else {
      fail("--direct needs a classical parameter, got kind '" + meta.kind +
           "'");
    }
    if (const pp_status s = pp_direct_eval(kind, a.get(), b.get(), &raw);
        s != PP_OK) {
      fail_api("eval", s);
    }
  } else {
    if (const pp_status s = pp_eval(param.get(), a.get(), b.get(), &raw);
        s != PP_OK) {
      fail_api("eval", s);
    }
  }
  const MatrixPtr result(raw);
  save_matrix(out, result.get());
  std::printf("wrote %zux%zu product to %s\n", pp_matrix_rows(result.get()),
              pp_matrix_cols(result.get()), out.c_str());
  ordered_json rj;
  rj["out"] = out;
  rj["direct"] = direct;
  writer.finish(log, rj, 0);
  return 0;
}

int cmd_bound(const std::string& param_path, const std::string& a_path,
              const std::string& b_path, const std::string& out,
              const CommonOpts& o) {
  ReportWriter writer("bound", o.json_path);
  InputLog log;
  const ParamPtr param = load_param(param_path, log, nullptr);
  const MatrixPtr a = load_matrix("a", a_path, log);
  const MatrixPtr b = load_matrix("b", b_path, log);

  pp_report* raw = nullptr;
  if (const pp_status s = pp_lower_bound(param.get(), a.get(), b.get(), o.tol,
                                         o.trials, o.seed, &raw);
      s != PP_OK) {
    fail_api("bound", s);
  }
  const ReportPtr report(raw);
  if (!out.empty()) {
    pp_matrix* l_raw = nullptr;
    if (const pp_status s = pp_report_matrix(report.get(), "L", &l_raw);
        s != PP_OK) {
      fail_api("bound", s);
    }
    const MatrixPtr lower(l_raw);
    save_matrix(out, lower.get());
    std::printf("wrote lower-bound matrix to %s\n", out.c_str());
  }
  std::printf("%s\n", pp_report_json(report.get()));
  writer.finish(log, report_result_json(report.get()), 0);
  return 0;
}

int cmd_certify(const std::string& param_path, const std::string& a_path,
                const std::string& b_path, const CommonOpts& o) {
  ReportWriter writer("certify", o.json_path);
  InputLog log;
  const ParamPtr param = load_param(param_path, log, nullptr);
  const MatrixPtr a = load_matrix("a", a_path, log);
  const MatrixPtr b = load_matrix("b", b_path, log);

  pp_report* raw = nullptr;
  if (const pp_status s = pp_certify(param.get(), a.get(), b.get(), o.tol,
                                     o.trials, o.seed, &raw);
      s != PP_OK) {
    fail_api("certify", s);
  }
  const ReportPtr report(raw);
  const int code = certificate_exit_code(report.get());
  std::printf("verdict: %s (diff_eig_min = %.6e)\n",
              code == 0 ? "certified" : "violated",
              pp_report_diff_eig_min(report.get()));
  writer.finish(log, report_result_json(report.get()), code);
  return code;
}

int cmd_witness(const std::string& param_path, std::size_t component,
                std::size_t beta, const std::string& out_prefix,
                const CommonOpts& o) {
  ReportWriter writer("witness", o.json_path);
  InputLog log;
  const ParamPtr param = load_param(param_path, log, nullptr);

  pp_report* raw = nullptr;
  if (const pp_status s =
          pp_witness(param.get(), component, beta, o.trials, o.seed, &raw);
      s != PP_OK) {
    fail_api("witness", s);
  }
  const ReportPtr report(raw);
  if (!out_prefix.empty()) {
    for (const char* key : {"A", "B", "T_check", "U0"}) {
      pp_matrix* m_raw = nullptr;
      if (const pp_status s = pp_report_matrix(report.get(), key, &m_raw);
          s != PP_OK) {
        fail_api("witness", s);
      }
      const MatrixPtr m(m_raw);
      save_matrix(out_prefix + "_" + key + ".json", m.get());
    }
    std::printf("wrote witness matrices with prefix %s\n", out_prefix.c_str());
  }
  std::printf("%s\n", pp_report_json(report.get()));
  writer.finish(log, report_result_json(report.get()), 0);
  return 0;
}

int cmd_hilbert_slice(const std::string& t_path, std::size_t dk,
                      std::size_t dh1, std::size_t dh2,
                      const std::string& out_prefix,
                      const std::string& json_path) {
  ReportWriter writer("hilbert-slice", json_path);
  InputLog log;
  const MatrixPtr t = load_matrix("t", t_path, log);
  ordered_json files = ordered_json::array();
  for (std::size_t i = 0; i < dk; ++i) {
    for (std::size_t j = 0; j < dk; ++j) {
      pp_matrix* raw = nullptr;
      if (const pp_status s =
              pp_hilbert_slice(t.get(), dk, dh1, dh2, i, j, &raw);
          s != PP_OK) {
        fail_api("hilbert-slice", s);
      }
      const MatrixPtr block(raw);
      const std::string path = out_prefix + "_" + std::to_string(i) + "_" +
                               std::to_string(j) + ".json";
      save_matrix(path, block.get());
      files.push_back(path);
    }
  }
  std::printf("wrote %zu slice blocks with prefix %s\n", dk * dk,
              out_prefix.c_str());
  ordered_json rj;
  rj["files"] = std::move(files);
  writer.finish(log, rj, 0);
  return 0;
}

int cmd_hilbert_certify(const std::string& t_path, std::size_t dk,
                        std::size_t dh1, std::size_t dh2,
                        const std::string& a_path, const std::string& b_path,
                        const CommonOpts& o) {
  ReportWriter writer("hilbert-certify", o.json_path);
  InputLog log;
  const MatrixPtr t = load_matrix("t", t_path, log);
  const MatrixPtr a = load_matrix("a", a_path, log);
  const MatrixPtr b = load_matrix("b", b_path, log);

  pp_report* raw = nullptr;
  if (const pp_status s =
          pp_hilbert_certify(t.get(), dk, dh1, dh2, a.get(), b.get(), o.tol,
                             o.trials, o.seed, &raw);
      s != PP_OK) {
    fail_api("hilbert-certify", s);
  }
  const ReportPtr report(raw);
  const int code = certificate_exit_code(report.get());
  std::printf("verdict: %s (diff_eig_min = %.6e)\n",
              code == 0 ? "certified" : "violated",
              pp_report_diff_eig_min(report.get()));
  writer.finish(log, report_result_json(report.get()), code);
  return code;
}

int cmd_tensor_check(const std::string& a_path, const std::string& b_path,
                     const CommonOpts& o) {
  ReportWriter writer("tensor-check", o.json_path);
  InputLog log;
  const MatrixPtr a = load_matrix("a", a_path, log);
  const MatrixPtr b = load_matrix("b", b_path, log);

  pp_report* raw = nullptr;
  if (const pp_status s = pp_tensor_check(a.get(), b.get(), o.tol, &raw);
      s != PP_OK) {
    fail_api("tensor-check", s);
  }
  const ReportPtr report(raw);
  const int code = certificate_exit_code(report.get());
  std::printf("verdict: %s (diff_eig_min = %.6e)\n",
              code == 0 ? "certified" : "violated",
              pp_report_diff_eig_min(report.get()));
  writer.finish(log, report_result_json(report.get()), code);
  return code;
}

int cmd_random(std::size_t rows, std::size_t cols, bool psd, std::size_t rank,
               std::uint64_t seed, const std::string& out,
               const std::string& json_path) {
  ReportWriter writer("random", json_path);
  pp_matrix* raw = nullptr;
  pp_status s;
  if (psd) {
    if (rows != cols) fail("--psd needs rows == cols");
    s = pp_matrix_random_psd(rows, rank == 0 ? rows : rank, seed, &raw);
  } else {
    s = pp_matrix_random_gaussian(rows, cols, seed, &raw);
  }
  if (s != PP_OK) fail_api("random", s);
  const MatrixPtr m(raw);
  save_matrix(out, m.get());
  std::printf("wrote %zux%zu %s matrix to %s\n", rows, cols,
              psd ? "PSD" : "Gaussian", out.c_str());
  ordered_json rj;
  rj["out"] = out;
  writer.finish(InputLog{}, rj, 0);
  return 0;
}

int cmd_selftest(const std::string& level, std::uint64_t seed) {
  const int lvl = level == "full" ? 1 : 0;
  const int failures = pp_selftest(
      lvl, seed,
      [](const char* line, void*) { std::printf("%s\n", line); }, nullptr);
  if (failures < 0) fail(pp_last_error());
  std::printf(failures == 0 ? "selftest passed\n"
                            : "selftest failed (%d suites)\n",
              failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positive bilinear matrix products and their sharp Loewner "
               "lower bounds"};
  app.require_subcommand(1);
  std::size_t max_side = 0;
  app.add_option("--max-side", max_side,
                 "override the matrix size cap (per side)");

  // make-param
  auto* mk = app.add_subcommand("make-param",
                                "write a parameter matrix and its sidecar");
  std::string mk_kind, mk_out, mk_json;
  std::size_t mk_m = 0, mk_n = 0;
  mk->add_option("--kind", mk_kind, "hadamard | kronecker | convolution")
      ->required();
  mk->add_option("--n", mk_n, "N (hadamard/convolution) or n (kronecker)")
      ->required();
  mk->add_option("--m", mk_m, "m (kronecker only)");
  mk->add_option("--out", mk_out, "output matrix file")->required();
  mk->add_option("--json", mk_json, "write a JSON report to PATH");

  // eval
  auto* ev = app.add_subcommand("eval", "evaluate A (star) B");
  std::string ev_param, ev_a, ev_b, ev_out, ev_json;
  bool ev_direct = false;
  ev->add_option("--param", ev_param)->required();
  ev->add_option("--a", ev_a)->required();
  ev->add_option("--b", ev_b)->required();
  ev->add_option("--out", ev_out)->required();
  ev->add_flag("--direct", ev_direct,
               "use the classical entry formula instead of the parameter");
  ev->add_option("--json", ev_json, "write a JSON report to PATH");

  // bound
  auto* bd = app.add_subcommand("bound", "compute the sharp lower bound");
  std::string bd_param, bd_a, bd_b, bd_out;
  CommonOpts bd_o;
  bd->add_option("--param", bd_param)->required();
  bd->add_option("--a", bd_a)->required();
  bd->add_option("--b", bd_b)->required();
  bd->add_option("--out", bd_out, "write the bound matrix L to PATH");
  add_common(bd, bd_o);

  // certify
  auto* cf = app.add_subcommand(
      "certify", "certify AA* (star) BB* >= L >= 0 (exit 0/1/2)");
  std::string cf_param, cf_a, cf_b;
  CommonOpts cf_o;
  cf->add_option("--param", cf_param)->required();
  cf->add_option("--a", cf_a)->required();
  cf->add_option("--b", cf_b)->required();
  add_common(cf, cf_o);

  // witness
  auto* wt = app.add_subcommand("witness",
                                "construct a sharpness witness for a "
                                "rank-one component");
  std::string wt_param, wt_prefix;
  std::size_t wt_component = 0, wt_beta = 1;
  CommonOpts wt_o;
  wt->add_option("--param", wt_param)->required();
  wt->add_option("--component", wt_component, "component index (0-based)")
      ->capture_default_str();
  wt->add_option("--beta", wt_beta, "column count of the witness matrices")
      ->required();
  wt->add_option("--out-prefix", wt_prefix,
                 "write A/B/T_check/U0 matrix files with this prefix");
  add_common(wt, wt_o);

  // hilbert-slice
  auto* hs = app.add_subcommand("hilbert-slice",
                                "write the block slices of an operator");
  std::string hs_t, hs_prefix, hs_json;
  std::size_t hs_dk = 0, hs_dh1 = 0, hs_dh2 = 0;
  hs->add_option("--t", hs_t)->required();
  hs->add_option("--dk", hs_dk)->required();
  hs->add_option("--dh1", hs_dh1)->required();
  hs->add_option("--dh2", hs_dh2)->required();
  hs->add_option("--out-prefix", hs_prefix)->required();
  hs->add_option("--json", hs_json, "write a JSON report to PATH");

  // hilbert-certify
  auto* hc = app.add_subcommand(
      "hilbert-certify", "certify the spectral lower bound (exit 0/1/2)");
  std::string hc_t, hc_a, hc_b;
  std::size_t hc_dk = 0, hc_dh1 = 0, hc_dh2 = 0;
  CommonOpts hc_o;
  hc->add_option("--t", hc_t)->required();
  hc->add_option("--dk", hc_dk)->required();
  hc->add_option("--dh1", hc_dh1)->required();
  hc->add_option("--dh2", hc_dh2)->required();
  hc->add_option("--a", hc_a)->required();
  hc->add_option("--b", hc_b)->required();
  add_common(hc, hc_o);

  // tensor-check
  auto* tc = app.add_subcommand(
      "tensor-check", "certify the Kronecker lower bound (exit 0/1/2)");
  std::string tc_a, tc_b;
  CommonOpts tc_o;
  tc->add_option("--a", tc_a)->required();
  tc->add_option("--b", tc_b)->required();
  add_common(tc, tc_o, /*with_trials=*/false);

  // random
  auto* rd = app.add_subcommand("random", "write a seeded random matrix");
  std::string rd_out, rd_json;
  std::size_t rd_rows = 0, rd_cols = 0, rd_rank = 0;
  std::uint64_t rd_seed = 0;
  bool rd_psd = false;
  rd->add_option("--rows", rd_rows)->required();
  rd->add_option("--cols", rd_cols)->required();
  rd->add_flag("--psd", rd_psd, "Gram matrix G G* instead of plain Gaussian");
  rd->add_option("--rank", rd_rank, "rank of the PSD draw (default: full)");
  rd->add_option("--seed", rd_seed)->capture_default_str();
  rd->add_option("--out", rd_out)->required();
  rd->add_option("--json", rd_json, "write a JSON report to PATH");

  // selftest
  auto* st = app.add_subcommand("selftest", "run the bundled property suites");
  std::string st_level = "quick";
  std::uint64_t st_seed = 0;
  st->add_option("--level", st_level, "quick | full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();
  st->add_option("--seed", st_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (max_side != 0) {
      if (const pp_status s = pp_set_max_side(max_side); s != PP_OK) {
        fail_api("--max-side", s);
      }
    }
    if (mk->parsed()) {
      return cmd_make_param(mk_kind, mk_m, mk_n, mk_out, mk_json);
    }
    if (ev->parsed()) {
      return cmd_eval(ev_param, ev_a, ev_b, ev_out, ev_direct, ev_json);
    }
    if (bd->parsed()) return cmd_bound(bd_param, bd_a, bd_b, bd_out, bd_o);
    if (cf->parsed()) return cmd_certify(cf_param, cf_a, cf_b, cf_o);
    if (wt->parsed()) {
      return cmd_witness(wt_param, wt_component, wt_beta, wt_prefix, wt_o);
    }
    if (hs->parsed()) {
      return cmd_hilbert_slice(hs_t, hs_dk, hs_dh1, hs_dh2, hs_prefix,
                               hs_json);
    }
    if (hc->parsed()) {
      return cmd_hilbert_certify(hc_t, hc_dk, hc_dh1, hc_dh2, hc_a, hc_b,
                                 hc_o);
    }
    if (tc->parsed()) return cmd_tensor_check(tc_a, tc_b, tc_o);
    if (rd->parsed()) {
      return cmd_random(rd_rows, rd_cols, rd_psd, rd_rank, rd_seed, rd_out,
                        rd_json);
    }
    if (st->parsed()) return cmd_selftest(st_level, st_seed);
  } catch (const CommandError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
