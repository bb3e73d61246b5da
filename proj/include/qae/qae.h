/* C interface to the quantum-autoencoder toolkit.
 *
 * Every function that can fail returns a qae_status; QAE_OK means success
 * and any other value leaves a human-readable message in qae_last_error()
 * (thread-local, valid until the next failing call on that thread).
 * Objects returned through out-parameters are owned by the caller and must
 * be released with the matching free function. Out-parameters are written
 * only on QAE_OK.
 */
#ifndef QAE_H
#define QAE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qae_status {
  QAE_OK = 0,
  QAE_ERR_ARGUMENT = 1, /* null pointer or out-of-range argument */
  QAE_ERR_CONFIG = 2,   /* malformed experiment config */
  QAE_ERR_DOMAIN = 3,   /* precondition violated (non-unitary input, ...) */
  QAE_ERR_RUNTIME = 4,  /* I/O or numeric failure */
  QAE_ERR_INTERNAL = 5
} qae_status;

/* Semantic version of the library, e.g. "1.0.0". Static storage. */
const char* qae_version(void);

/* Message for the most recent failure on this thread ("" if none). */
const char* qae_last_error(void);

/* Release a string returned through a char** out-parameter. NULL is ok. */
void qae_string_free(char* s);

/* ---- complex matrices ------------------------------------------------ */

typedef struct qae_matrix qae_matrix;

/* data: row-major re,im pairs (2*rows*cols doubles), or NULL for zeros. */
qae_status qae_matrix_create(size_t rows, size_t cols, const double* data,
                             qae_matrix** out);
void qae_matrix_free(qae_matrix* m);
size_t qae_matrix_rows(const qae_matrix* m);
size_t qae_matrix_cols(const qae_matrix* m);

/* data: caller buffer with room for 2*rows*cols doubles, filled row-major
 * as re,im pairs. */
qae_status qae_matrix_copy_data(const qae_matrix* m, double* data);

/* Text exchange format: one line "rows cols", then row-major "re im"
 * pairs separated by whitespace. */
qae_status qae_matrix_load(const char* path, qae_matrix** out);
qae_status qae_matrix_save(const qae_matrix* m, const char* path);

/* ---- two-qubit gate library ------------------------------------------ */

size_t qae_gate_count(void);

/* Library name for index in [0, qae_gate_count()); NULL out of range.
 * Static storage. */
const char* qae_gate_name(size_t index);

/* Exact 4x4 matrix of a library gate looked up by name (case-insensitive). */
qae_status qae_gate_matrix(const char* name, qae_matrix** out);

/* 1 - |Tr(a^dag b)| / dim: zero iff equal up to a global phase. */
qae_status qae_gate_distance(const qae_matrix* a, const qae_matrix* b,
                             double* out);

/* ---- process tomography ---------------------------------------------- */

/* chi matrix of the unitary channel u (dim 4^n for an n-qubit u). */
qae_status qae_chi_of_unitary(const qae_matrix* u, qae_matrix** chi);

/* Tr sqrt(sqrt(chi_a) chi_b sqrt(chi_a)); 1 for identical channels. */
qae_status qae_process_fidelity(const qae_matrix* chi_a,
                                const qae_matrix* chi_b, double* out);

/* ---- experiment runner ------------------------------------------------ */

typedef struct qae_run_options {
  int has_seed; /* nonzero: seed overrides the config */
  unsigned long long seed;
  int has_shots; /* nonzero: shots overrides the config */
  long shots;
  int exact; /* nonzero: force exact overlaps (wins over shots) */
  int jobs;  /* parallel restarts; <= 0 means 1 */
  const char* out_dir; /* NULL: config setting or current directory */
} qae_run_options;

/* Run the experiment described by the JSON config at config_path, writing
 * its output files; *summary_json receives the summary document (free with
 * qae_string_free). opts may be NULL for defaults. */
qae_status qae_run(const char* config_path, const qae_run_options* opts,
                   char** summary_json);

/* Analytic perfect-encoder report (no training, no files) for an encode or
 * train config. */
qae_status qae_encode_report(const char* config_path, char** summary_json);

/* Helstrom bound report (no training, no files) for a discriminate config. */
qae_status qae_bound_report(const char* config_path, char** summary_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QAE_H */
