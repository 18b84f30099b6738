#ifndef LAZARDLAB_H
#define LAZARDLAB_H

/* C interface to the lazard-lab core. Every call returns a lazard_status;
 * on failure lazard_last_error() holds a message for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * lazard_string_free. Reports are JSON text. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LAZARD_API __declspec(dllexport)
#else
#define LAZARD_API __attribute__((visibility("default")))
#endif

typedef enum lazard_status {
  LAZARD_OK = 0,
  LAZARD_INVALID_ARGUMENT = 1,
  LAZARD_UNSUPPORTED_PRIME,
  LAZARD_NOT_IN_GROUP,
  LAZARD_NO_CONVERGENCE,
  LAZARD_PRECISION_EXHAUSTED,
  LAZARD_COMPOSITION_NONZERO,
  LAZARD_RESOURCE_CAP,
  LAZARD_NOT_STABILIZED,
  LAZARD_NOT_UNIMODULAR,
  LAZARD_NOT_PRO_UNIPOTENT,
  LAZARD_MISSING_SAMPLE,
  LAZARD_TENSOR_MISSING,
  LAZARD_PARSE,
  LAZARD_INTERNAL,
  LAZARD_OUT_OF_MEMORY
} lazard_status;

typedef struct lazard_group lazard_group;

LAZARD_API const char* lazard_status_name(lazard_status s);
LAZARD_API const char* lazard_last_error(void);
/* Process exit code for a status: 0 ok, 1 mathematical failure,
 * 2 configuration or input error, 3 resource cap. */
LAZARD_API int lazard_exit_code(lazard_status s);
LAZARD_API void lazard_string_free(char* s);

/* name: additive, heisenberg, gl2_congruence. d is used by additive only. */
LAZARD_API lazard_status lazard_group_builtin(const char* name, int64_t p, int d, int n, int precision,
                                              lazard_group** out);
LAZARD_API lazard_status lazard_group_from_json(const char* text, lazard_group** out);
LAZARD_API void lazard_group_free(lazard_group* g);
LAZARD_API lazard_status lazard_group_info(const lazard_group* g, char** json);

/* Axiom checks on seeded samples. *pass is 1 when every axiom holds. */
LAZARD_API lazard_status lazard_group_validate(const lazard_group* g, int samples, int m, uint64_t seed, char** json,
                                               int* pass);

/* options: {"rep", "method", "N", "D", "max_degree", "n_max", "lookahead",
 * "mem_cap_mb", "cache_dir", "timing"}. *pass is 1 when d^2 = 0. */
LAZARD_API lazard_status lazard_cohomology(const lazard_group* g, const char* options, char** json, int* pass);

/* options as above plus "routes": ["koszul", "ce", "bar"]. *match is 1 when
 * every route agrees. */
LAZARD_API lazard_status lazard_compare(const lazard_group* g, const char* options, char** json, int* match);

/* Euler characteristic and duality symmetry of the koszul route. Fails with
 * LAZARD_NOT_UNIMODULAR when the modulus character is not certified trivial. */
LAZARD_API lazard_status lazard_duality(const lazard_group* g, const char* options, char** json, int* pass);

/* samples: Mahler sample file text. h = h_num / h_den. *verdict is
 * 0 analytic evidence, 1 not analytic evidence, 2 inconclusive. */
LAZARD_API lazard_status lazard_amice(const char* samples, int64_t h_num, int64_t h_den, char** json, int* verdict);

/* Residue pairing and sequence pairing demo on windows of size D + 1. */
LAZARD_API lazard_status lazard_duality_demo(int64_t p, int N, int D, uint64_t seed, char** json, int* pass);

#ifdef __cplusplus
}
#endif

#endif
