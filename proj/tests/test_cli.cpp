// Drives the installed CLI binary end to end; the binary path arrives as
// the last command-line argument (see tests/CMakeLists.txt).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "../tools/matrix_file.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_dir;

int run(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string path(const std::string& name) { return (g_dir / name).string(); }

}  // namespace

TEST_CASE("matrix files round trip bitwise") {
  posprod_cli::MatrixFileData m;
  m.rows = 2;
  m.cols = 3;
  // Values with non-terminating binary expansions stress the encoder.
  m.data = {1.0 / 3.0, -2.0 / 7.0, 1e-300, 3.141592653589793,
            -1.0 / 9.0, 0.1,      2e17,   -0.3,
            5e-17,      1.75,     0.0,    -0.0};
  const std::string file = path("roundtrip.json");
  posprod_cli::write_matrix_file(file, m);
  const posprod_cli::MatrixFileData back =
      posprod_cli::read_matrix_file(file);
  REQUIRE(back.rows == m.rows);
  REQUIRE(back.cols == m.cols);
  REQUIRE(back.data.size() == m.data.size());
  CHECK(std::memcmp(back.data.data(), m.data.data(),
                    m.data.size() * sizeof(double)) == 0);
}

TEST_CASE("make-param writes the matrix and sidecar") {
  CHECK(run("make-param --kind hadamard --n 2 --out " + path("had.json")) ==
        0);
  const posprod_cli::MatrixFileData y =
      posprod_cli::read_matrix_file(path("had.json"));
  CHECK(y.rows == 8);
  CHECK(y.cols == 8);
  const nlohmann::json meta = nlohmann::json::parse(
      posprod_cli::read_file_bytes(path("had.json.meta.json")));
  CHECK(meta["kind"] == "hadamard");
  CHECK(meta["N"] == 2);

  CHECK(run("make-param --kind kronecker --m 2 --n 3 --out " +
            path("kro.json")) == 0);
  CHECK(posprod_cli::read_matrix_file(path("kro.json")).rows == 36);

  CHECK(run("make-param --kind foo --n 2 --out " + path("foo.json")) == 2);
  CHECK(run("make-param --kind kronecker --n 3 --out " + path("k2.json")) ==
        2);  // missing --m
}

TEST_CASE("random, eval, and the direct oracle") {
  REQUIRE(run("make-param --kind convolution --n 3 --out " +
              path("con.json")) == 0);
  REQUIRE(run("random --rows 3 --cols 3 --seed 5 --out " + path("a.json")) ==
          0);
  REQUIRE(run("random --rows 3 --cols 3 --seed 6 --out " + path("b.json")) ==
          0);
  REQUIRE(run("eval --param " + path("con.json") + " --a " + path("a.json") +
              " --b " + path("b.json") + " --out " + path("prod.json")) == 0);
  REQUIRE(run("eval --param " + path("con.json") + " --a " + path("a.json") +
              " --b " + path("b.json") + " --direct --out " +
              path("prod_direct.json")) == 0);

  const posprod_cli::MatrixFileData via =
      posprod_cli::read_matrix_file(path("prod.json"));
  const posprod_cli::MatrixFileData direct =
      posprod_cli::read_matrix_file(path("prod_direct.json"));
  REQUIRE(via.data.size() == direct.data.size());
  for (std::size_t k = 0; k < via.data.size(); ++k) {
    CHECK(std::abs(via.data[k] - direct.data[k]) <= 1e-10);
  }

  // --direct has no formula for custom parameters.
  REQUIRE(run("random --rows 8 --cols 8 --psd --rank 2 --seed 30 --out " +
              path("custom.json")) == 0);
  std::ofstream meta(path("custom.json.meta.json"));
  meta << R"({"kind": "custom", "m": 2, "n": 2, "N": 2})" << "\n";
  meta.close();
  REQUIRE(run("random --rows 2 --cols 2 --seed 31 --out " + path("ha2.json")) ==
          0);
  REQUIRE(run("random --rows 2 --cols 2 --seed 32 --out " + path("hb2.json")) ==
          0);
  CHECK(run("eval --param " + path("custom.json") + " --a " +
            path("ha2.json") + " --b " + path("hb2.json") + " --out " +
            path("x.json")) == 0);
  CHECK(run("eval --param " + path("custom.json") + " --a " +
            path("ha2.json") + " --b " + path("hb2.json") + " --out " +
            path("x.json") + " --direct") == 2);
}

TEST_CASE("certify exit codes and report schema") {
  REQUIRE(run("make-param --kind hadamard --n 2 --out " + path("h2.json")) ==
          0);
  REQUIRE(run("random --rows 2 --cols 2 --seed 9 --out " + path("ca.json")) ==
          0);
  REQUIRE(run("random --rows 2 --cols 2 --seed 10 --out " + path("cb.json")) ==
          0);
  CHECK(run("certify --param " + path("h2.json") + " --a " + path("ca.json") +
            " --b " + path("cb.json") + " --json " + path("report.json")) ==
        0);

  const nlohmann::json rep = nlohmann::json::parse(
      posprod_cli::read_file_bytes(path("report.json")));
  CHECK(rep["schema_version"] == 1);
  CHECK(rep["command"] == "certify");
  CHECK(rep["result"]["verdict"] == "certified");
  CHECK(rep["inputs"].contains("param"));
  CHECK(rep["inputs"]["a"].contains("fnv1a64"));
  CHECK(rep.contains("timing_ms"));

  // Shape mismatch is an input error.
  REQUIRE(run("random --rows 3 --cols 2 --seed 11 --out " +
              path("wrong.json")) == 0);
  CHECK(run("certify --param " + path("h2.json") + " --a " +
            path("wrong.json") + " --b " + path("cb.json")) == 2);
  // Missing file likewise.
  CHECK(run("certify --param " + path("h2.json") + " --a " +
            path("missing.json") + " --b " + path("cb.json")) == 2);

  // An unsatisfiable tolerance flips the verdict; exit code 1.
  CHECK(run("certify --param " + path("h2.json") + " --a " + path("ca.json") +
            " --b " + path("cb.json") + " --tol -1") == 1);
}

TEST_CASE("bound writes the lower-bound matrix") {
  REQUIRE(run("make-param --kind kronecker --m 2 --n 2 --out " +
              path("k22.json")) == 0);
  REQUIRE(run("random --rows 2 --cols 1 --seed 12 --out " + path("ba.json")) ==
          0);
  REQUIRE(run("random --rows 2 --cols 1 --seed 13 --out " + path("bb.json")) ==
          0);
  CHECK(run("bound --param " + path("k22.json") + " --a " + path("ba.json") +
            " --b " + path("bb.json") + " --out " + path("L.json") +
            " --json " + path("bound_report.json")) == 0);
  const posprod_cli::MatrixFileData lower =
      posprod_cli::read_matrix_file(path("L.json"));
  CHECK(lower.rows == 4);
  const nlohmann::json rep = nlohmann::json::parse(
      posprod_cli::read_file_bytes(path("bound_report.json")));
  CHECK(rep["result"]["bound"]["components"][0]["divisor"] == 1);
}

TEST_CASE("witness emits matrices and the ratio") {
  REQUIRE(run("make-param --kind hadamard --n 3 --out " + path("h3.json")) ==
          0);
  CHECK(run("witness --param " + path("h3.json") +
            " --component 0 --beta 2 --out-prefix " + path("wit") +
            " --json " + path("wit.json")) == 0);
  CHECK(posprod_cli::read_matrix_file(path("wit_A.json")).rows == 3);
  CHECK(posprod_cli::read_matrix_file(path("wit_T_check.json")).rows == 2);
  const nlohmann::json rep =
      nlohmann::json::parse(posprod_cli::read_file_bytes(path("wit.json")));
  CHECK(rep["result"]["r0"] == 2);
}

TEST_CASE("hilbert commands") {
  REQUIRE(run("random --rows 8 --cols 8 --psd --rank 3 --seed 20 --out " +
              path("T.json")) == 0);
  CHECK(run("hilbert-slice --t " + path("T.json") +
            " --dk 2 --dh1 2 --dh2 2 --out-prefix " + path("slice")) == 0);
  CHECK(posprod_cli::read_matrix_file(path("slice_1_1.json")).rows == 4);

  REQUIRE(run("random --rows 2 --cols 2 --seed 21 --out " + path("ha.json")) ==
          0);
  REQUIRE(run("random --rows 2 --cols 2 --seed 22 --out " + path("hb.json")) ==
          0);
  CHECK(run("hilbert-certify --t " + path("T.json") +
            " --dk 2 --dh1 2 --dh2 2 --a " + path("ha.json") + " --b " +
            path("hb.json")) == 0);
  CHECK(run("tensor-check --a " + path("ha.json") + " --b " + path("hb.json")) ==
        0);
}

TEST_CASE("size cap override") {
  CHECK(run("--max-side 4 make-param --kind hadamard --n 2 --out " +
            path("capped.json")) == 2);  // parameter side 8 > cap 4
  CHECK(run("--max-side 16 make-param --kind hadamard --n 2 --out " +
            path("capped.json")) == 0);
}

TEST_CASE("quick selftest exits zero") {
  CHECK(run("selftest --level quick") == 0);
}

int main(int argc, char** argv) {
  doctest::Context context;
  int doctest_argc = argc;
  if (argc > 1 && argv[argc - 1][0] != '-') {
    g_cli = argv[argc - 1];
    doctest_argc = argc - 1;
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli [doctest options] <cli-binary>\n");
    return 2;
  }
  g_dir = fs::temp_directory_path() /
          ("posprod_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(g_dir);
  context.applyCommandLine(doctest_argc, argv);
  const int res = context.run();
  fs::remove_all(g_dir);
  return res;
}
