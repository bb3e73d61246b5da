#include "qae/qae.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>

#include "core/matrix.hpp"
#include "core/matrix_io.hpp"
#include "core/photonic.hpp"
#include "core/runner.hpp"
#include "core/tomo.hpp"

struct qae_matrix {
  qae::ComplexMatrix m;
};

namespace {

thread_local std::string g_last_error;

qae_status fail(qae_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

// Maps the library's exception conventions onto status codes:
// invalid_argument carries validation failures ("config: ..." from the
// runner, domain preconditions elsewhere); runtime_error carries I/O and
// numeric failures.
template <typename Fn>
qae_status translate(Fn&& fn) {
  try {
    fn();
    return QAE_OK;
  } catch (const std::invalid_argument& e) {
    const bool config = std::strncmp(e.what(), "config: ", 8) == 0;
    return fail(config ? QAE_ERR_CONFIG : QAE_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QAE_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(QAE_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(QAE_ERR_INTERNAL, "unknown error");
  }
}

char* duplicate(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qae::RunOptions to_core_options(const qae_run_options* opts) {
  qae::RunOptions core;
  if (opts == nullptr) return core;
  if (opts->has_seed) core.seed = opts->seed;
  if (opts->has_shots) core.shots = opts->shots;
  core.exact = opts->exact != 0;
  if (opts->jobs > 0) core.jobs = opts->jobs;
  if (opts->out_dir != nullptr) core.out_dir = std::string(opts->out_dir);
  return core;
}

std::size_t qubits_of_chi_dim(std::size_t dim) {
  std::size_t n = 0;
  std::size_t d = 1;
  while (d < dim) {
    d *= 4;
    ++n;
  }
  if (d != dim) throw std::invalid_argument("chi dimension is not a power of 4");
  return n;
}

qae::ProcessMatrix as_process(const qae_matrix* chi) {
  if (chi->m.rows() != chi->m.cols())
    throw std::invalid_argument("chi matrix must be square");
  return {chi->m, qubits_of_chi_dim(chi->m.rows())};
}

}  // namespace

extern "C" {

const char* qae_version(void) { return "1.0.0"; }

const char* qae_last_error(void) { return g_last_error.c_str(); }

void qae_string_free(char* s) { delete[] s; }

qae_status qae_matrix_create(size_t rows, size_t cols, const double* data,
                             qae_matrix** out) {
  if (out == nullptr) return fail(QAE_ERR_ARGUMENT, "out is null");
  if (rows == 0 || cols == 0) return fail(QAE_ERR_ARGUMENT, "zero dimension");
  return translate([&] {
    auto m = new qae_matrix{qae::ComplexMatrix(rows, cols)};
    if (data != nullptr) {
      for (size_t i = 0; i < rows * cols; ++i)
        m->m.data()[i] = {data[2 * i], data[2 * i + 1]};
    }
    *out = m;
  });
}

void qae_matrix_free(qae_matrix* m) { delete m; }

size_t qae_matrix_rows(const qae_matrix* m) { return m == nullptr ? 0 : m->m.rows(); }

size_t qae_matrix_cols(const qae_matrix* m) { return m == nullptr ? 0 : m->m.cols(); }

qae_status qae_matrix_copy_data(const qae_matrix* m, double* data) {
  if (m == nullptr || data == nullptr) return fail(QAE_ERR_ARGUMENT, "null argument");
  const size_t n = m->m.rows() * m->m.cols();
  for (size_t i = 0; i < n; ++i) {
    data[2 * i] = m->m.data()[i].real();
    data[2 * i + 1] = m->m.data()[i].imag();
  }
  return QAE_OK;
}

qae_status qae_matrix_load(const char* path, qae_matrix** out) {
  if (path == nullptr || out == nullptr) return fail(QAE_ERR_ARGUMENT, "null argument");
  return translate([&] { *out = new qae_matrix{qae::load_matrix(path)}; });
}

qae_status qae_matrix_save(const qae_matrix* m, const char* path) {
  if (m == nullptr || path == nullptr) return fail(QAE_ERR_ARGUMENT, "null argument");
  return translate([&] { qae::save_matrix(path, m->m); });
}

size_t qae_gate_count(void) { return qae::gate_library().size(); }

const char* qae_gate_name(size_t index) {
  const auto& lib = qae::gate_library();
  if (index >= lib.size()) return nullptr;
  return lib[index].first.c_str();
}

qae_status qae_gate_matrix(const char* name, qae_matrix** out) {
  if (name == nullptr || out == nullptr) return fail(QAE_ERR_ARGUMENT, "null argument");
  return translate([&] {
    const auto gate = qae::gate_from_name(name);
    if (!gate)
      throw std::invalid_argument(std::string("unknown gate '") + name + "'");
    *out = new qae_matrix{qae::gate_matrix(*gate)};
  });
}

qae_status qae_gate_distance(const qae_matrix* a, const qae_matrix* b, double* out) {
  if (a == nullptr || b == nullptr || out == nullptr)
    return fail(QAE_ERR_ARGUMENT, "null argument");
  return translate([&] { *out = qae::gate_distance(a->m, b->m); });
}

qae_status qae_chi_of_unitary(const qae_matrix* u, qae_matrix** chi) {
  if (u == nullptr || chi == nullptr) return fail(QAE_ERR_ARGUMENT, "null argument");
  return translate([&] { *chi = new qae_matrix{qae::chi_of_unitary(u->m).chi}; });
}

qae_status qae_process_fidelity(const qae_matrix* chi_a, const qae_matrix* chi_b,
                                double* out) {
  if (chi_a == nullptr || chi_b == nullptr || out == nullptr)
    return fail(QAE_ERR_ARGUMENT, "null argument");
  return translate(
      [&] { *out = qae::process_fidelity(as_process(chi_a), as_process(chi_b)); });
}

qae_status qae_run(const char* config_path, const qae_run_options* opts,
                   char** summary_json) {
  if (config_path == nullptr || summary_json == nullptr)
    return fail(QAE_ERR_ARGUMENT, "null argument");
  return translate([&] {
    const qae::RunResult result =
        qae::run_experiment(config_path, to_core_options(opts));
    *summary_json = duplicate(result.summary_json);
  });
}

qae_status qae_encode_report(const char* config_path, char** summary_json) {
  if (config_path == nullptr || summary_json == nullptr)
    return fail(QAE_ERR_ARGUMENT, "null argument");
  return translate(
      [&] { *summary_json = duplicate(qae::encode_report(config_path)); });
}

qae_status qae_bound_report(const char* config_path, char** summary_json) {
  if (config_path == nullptr || summary_json == nullptr)
    return fail(QAE_ERR_ARGUMENT, "null argument");
  return translate(
      [&] { *summary_json = duplicate(qae::bound_report(config_path)); });
}

}  // extern "C"
