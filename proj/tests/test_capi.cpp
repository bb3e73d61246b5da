// Exercises the shared library through its C header alone: no core
// headers, so everything observable must round-trip the extern "C" wall.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qae/qae.h>

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<int> counter{0};
    path = fs::temp_directory_path() /
           ("qae_capi_" + std::to_string(counter.fetch_add(1)) + "_" +
            std::to_string(static_cast<unsigned>(::getpid())));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string write_file(const TempDir& dir, const std::string& name, const std::string& body) {
  const fs::path p = dir.path / name;
  std::ofstream os(p);
  os << body;
  return p.string();
}

struct Matrix {
  qae_matrix* m = nullptr;
  ~Matrix() { qae_matrix_free(m); }
};

struct Summary {
  char* text = nullptr;
  ~Summary() { qae_string_free(text); }
  bool contains(const char* needle) const {
    return text != nullptr && std::strstr(text, needle) != nullptr;
  }
};

std::vector<double> matrix_data(const qae_matrix* m) {
  std::vector<double> out(2 * qae_matrix_rows(m) * qae_matrix_cols(m));
  REQUIRE(qae_matrix_copy_data(m, out.data()) == QAE_OK);
  return out;
}

const char* kEncodeConfig = R"json({
  "kind": "encode",
  "ensemble": {
    "states": [{"basis": "RH"}, {"basis": "LV"}],
    "trash": "path"
  }
})json";

}  // namespace

TEST_CASE("version and error text") {
  CHECK(std::strcmp(qae_version(), "1.0.0") == 0);
  REQUIRE(qae_last_error() != nullptr);

  qae_matrix* out = nullptr;
  CHECK(qae_gate_matrix("toffoli", &out) == QAE_ERR_DOMAIN);
  CHECK(std::strstr(qae_last_error(), "toffoli") != nullptr);
}

TEST_CASE("matrix lifecycle and data round trip") {
  const std::vector<double> data = {1.0, 0.5, -2.0, 0.0, 0.0, 3.5,
                                    4.0, -1.0, 5.0, 0.0, -6.0, 2.0};
  Matrix m;
  REQUIRE(qae_matrix_create(2, 3, data.data(), &m.m) == QAE_OK);
  CHECK(qae_matrix_rows(m.m) == 2);
  CHECK(qae_matrix_cols(m.m) == 3);
  CHECK(matrix_data(m.m) == data);

  // Null data means zeros.
  Matrix z;
  REQUIRE(qae_matrix_create(2, 2, nullptr, &z.m) == QAE_OK);
  for (double v : matrix_data(z.m)) CHECK(v == 0.0);

  CHECK(qae_matrix_create(0, 2, nullptr, &z.m) == QAE_ERR_ARGUMENT);
  CHECK(qae_matrix_create(2, 2, nullptr, nullptr) == QAE_ERR_ARGUMENT);
  CHECK(qae_matrix_copy_data(nullptr, nullptr) == QAE_ERR_ARGUMENT);
  CHECK(qae_matrix_rows(nullptr) == 0);
  qae_matrix_free(nullptr);  // must be a no-op
}

TEST_CASE("matrix file round trip") {
  TempDir dir;
  const std::vector<double> data = {0.25, -1.0 / 3.0, 1e-17, 2.0,
                                    -7.0, 0.125, 1.0, -1.0};
  Matrix m;
  REQUIRE(qae_matrix_create(2, 2, data.data(), &m.m) == QAE_OK);
  const std::string path = (dir.path / "m.txt").string();
  REQUIRE(qae_matrix_save(m.m, path.c_str()) == QAE_OK);

  Matrix back;
  REQUIRE(qae_matrix_load(path.c_str(), &back.m) == QAE_OK);
  CHECK(qae_matrix_rows(back.m) == 2);
  CHECK(matrix_data(back.m) == data);  // shortest round-trip format is exact

  Matrix missing;
  CHECK(qae_matrix_load((dir.path / "absent.txt").string().c_str(), &missing.m) ==
        QAE_ERR_RUNTIME);
  CHECK(qae_matrix_save(m.m, "/nonexistent_qae_dir/m.txt") == QAE_ERR_RUNTIME);
  CHECK(qae_matrix_load(nullptr, &missing.m) == QAE_ERR_ARGUMENT);
}

TEST_CASE("gate library enumeration") {
  REQUIRE(qae_gate_count() == 9);
  for (size_t i = 0; i < qae_gate_count(); ++i) {
    const char* name = qae_gate_name(i);
    REQUIRE(name != nullptr);
    Matrix g;
    REQUIRE(qae_gate_matrix(name, &g.m) == QAE_OK);
    CHECK(qae_matrix_rows(g.m) == 4);
    CHECK(qae_matrix_cols(g.m) == 4);
    double d = 1.0;
    REQUIRE(qae_gate_distance(g.m, g.m, &d) == QAE_OK);
    CHECK(d <= 1e-15);
  }
  CHECK(qae_gate_name(qae_gate_count()) == nullptr);

  // Lookup is case-insensitive.
  Matrix upper, lower;
  REQUIRE(qae_gate_matrix("SWAP", &upper.m) == QAE_OK);
  REQUIRE(qae_gate_matrix("swap", &lower.m) == QAE_OK);
  CHECK(matrix_data(upper.m) == matrix_data(lower.m));

  Matrix identity;
  REQUIRE(qae_gate_matrix("identity", &identity.m) == QAE_OK);
  double d = 0.0;
  REQUIRE(qae_gate_distance(identity.m, upper.m, &d) == QAE_OK);
  CHECK(d > 0.1);

  Matrix small;
  REQUIRE(qae_matrix_create(2, 2, nullptr, &small.m) == QAE_OK);
  CHECK(qae_gate_distance(identity.m, small.m, &d) == QAE_ERR_DOMAIN);
  CHECK(qae_gate_distance(nullptr, upper.m, &d) == QAE_ERR_ARGUMENT);
}

TEST_CASE("tomography through the C boundary") {
  Matrix identity;
  REQUIRE(qae_gate_matrix("identity", &identity.m) == QAE_OK);
  Matrix chi;
  REQUIRE(qae_chi_of_unitary(identity.m, &chi.m) == QAE_OK);
  REQUIRE(qae_matrix_rows(chi.m) == 16);
  REQUIRE(qae_matrix_cols(chi.m) == 16);

  // chi of the identity channel is a single unit entry at (0, 0).
  const std::vector<double> data = matrix_data(chi.m);
  CHECK(std::abs(data[0] - 1.0) <= 1e-12);
  double rest = 0.0;
  for (size_t i = 1; i < data.size(); ++i) rest += std::abs(data[i]);
  CHECK(rest <= 1e-12);

  double f = 0.0;
  REQUIRE(qae_process_fidelity(chi.m, chi.m, &f) == QAE_OK);
  CHECK(f == doctest::Approx(1.0).epsilon(1e-10));

  // Non-unitary input and qubit-count mismatches are domain errors.
  Matrix zeros;
  REQUIRE(qae_matrix_create(4, 4, nullptr, &zeros.m) == QAE_OK);
  Matrix bad_chi;
  CHECK(qae_chi_of_unitary(zeros.m, &bad_chi.m) == QAE_ERR_DOMAIN);

  const std::vector<double> one_qubit = {1, 0, 0, 0, 0, 0, 0, 0,
                                         0, 0, 0, 0, 0, 0, 0, 0,
                                         0, 0, 0, 0, 0, 0, 0, 0,
                                         0, 0, 0, 0, 0, 0, 0, 0};
  Matrix chi1;
  REQUIRE(qae_matrix_create(4, 4, one_qubit.data(), &chi1.m) == QAE_OK);
  CHECK(qae_process_fidelity(chi.m, chi1.m, &f) == QAE_ERR_DOMAIN);

  Matrix odd;
  REQUIRE(qae_matrix_create(3, 3, nullptr, &odd.m) == QAE_OK);
  CHECK(qae_process_fidelity(odd.m, odd.m, &f) == QAE_ERR_DOMAIN);
}

TEST_CASE("qae_run executes a config and returns the summary") {
  TempDir dir;
  const std::string cfg = write_file(dir, "encode.json", kEncodeConfig);
  qae_run_options opts{};
  const std::string out_dir = dir.path.string();
  opts.out_dir = out_dir.c_str();

  Summary summary;
  REQUIRE(qae_run(cfg.c_str(), &opts, &summary.text) == QAE_OK);
  CHECK(summary.contains("\"kind\": \"encode\""));
  CHECK(summary.contains("\"rank\": 2"));
  CHECK(summary.contains("\"lossless\": true"));
  CHECK(fs::exists(dir.path / "summary.json"));
  CHECK(fs::exists(dir.path / "encoder_unitary.txt"));
}

TEST_CASE("qae_run honors the options struct") {
  TempDir dir;
  const std::string cfg = write_file(dir, "train.json", R"json({
    "kind": "train",
    "ensemble": {"states": [{"basis": "RH"}, {"basis": "LV"}], "trash": "path"},
    "train": {"max_iterations": 5, "shots": 100}
  })json");

  qae_run_options opts{};
  const std::string out_dir = dir.path.string();
  opts.out_dir = out_dir.c_str();
  opts.has_seed = 1;
  opts.seed = 99;
  opts.exact = 1;

  Summary summary;
  REQUIRE(qae_run(cfg.c_str(), &opts, &summary.text) == QAE_OK);
  CHECK(summary.contains("\"seed\": 99"));
  CHECK(summary.contains("\"shots\": \"exact\""));
}

TEST_CASE("report entry points") {
  TempDir dir;
  const std::string enc = write_file(dir, "encode.json", kEncodeConfig);
  Summary encode;
  REQUIRE(qae_encode_report(enc.c_str(), &encode.text) == QAE_OK);
  CHECK(encode.contains("\"cost\""));

  const std::string disc = write_file(dir, "disc.json", R"json({
    "kind": "discriminate",
    "problem": {
      "group_a": [{"theta_degrees": 0, "prior": 0.5}],
      "group_b": [{"theta_degrees": 45, "prior": 0.5}]
    }
  })json");
  Summary bound;
  REQUIRE(qae_bound_report(disc.c_str(), &bound.text) == QAE_OK);
  CHECK(bound.contains("\"bound\""));

  Summary wrong;
  CHECK(qae_bound_report(enc.c_str(), &wrong.text) == QAE_ERR_CONFIG);
  CHECK(qae_encode_report(disc.c_str(), &wrong.text) == QAE_ERR_CONFIG);
}

TEST_CASE("status codes separate the failure classes") {
  TempDir dir;
  Summary summary;

  CHECK(qae_run(nullptr, nullptr, &summary.text) == QAE_ERR_ARGUMENT);
  CHECK(qae_run("x.json", nullptr, nullptr) == QAE_ERR_ARGUMENT);

  const std::string missing = (dir.path / "absent.json").string();
  CHECK(qae_run(missing.c_str(), nullptr, &summary.text) == QAE_ERR_RUNTIME);
  CHECK(std::strstr(qae_last_error(), "cannot open config") != nullptr);

  const std::string broken = write_file(dir, "broken.json", "{nope");
  CHECK(qae_run(broken.c_str(), nullptr, &summary.text) == QAE_ERR_CONFIG);
  CHECK(std::strstr(qae_last_error(), "not valid JSON") != nullptr);

  const std::string stray = write_file(dir, "stray.json", R"json({
    "kind": "encode",
    "bogus": 1,
    "ensemble": {"states": [{"basis": "RH"}]}
  })json");
  CHECK(qae_run(stray.c_str(), nullptr, &summary.text) == QAE_ERR_CONFIG);
  CHECK(std::strstr(qae_last_error(), "bogus") != nullptr);
}
