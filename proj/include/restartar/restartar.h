#ifndef RESTARTAR_H
#define RESTARTAR_H

#include <stddef.h>
#include <stdint.h>

#if defined(RESTARTAR_BUILDING_LIBRARY)
#define RAR_API __attribute__((visibility("default")))
#else
#define RAR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rar_status {
  RAR_OK = 0,
  RAR_INVALID_ARGUMENT = 1,
  RAR_DOMAIN = 2,
  RAR_INFEASIBLE = 3,
  RAR_CONFIG = 4,
  RAR_RUNTIME = 5,
  RAR_INTERNAL = 6
} rar_status;

typedef struct rar_limit_law rar_limit_law;
typedef struct rar_command_result rar_command_result;

typedef struct rar_projection {
  double scale;
  double prob_plus;
  double prob_minus;
  double atom_mass;
} rar_projection;

/* Message of the last failed call on this thread, or "". */
RAR_API const char* rar_last_error_message(void);
RAR_API const char* rar_version(void);

/* sigma is d x d, row-major. */
RAR_API rar_status rar_limit_law_create(double a, const double* sigma, const double* mu, size_t d, double p,
                                        rar_limit_law** out);
RAR_API void rar_limit_law_destroy(rar_limit_law* law);
RAR_API size_t rar_limit_law_dimension(const rar_limit_law* law);
RAR_API rar_status rar_limit_law_feasibility_ratio(const rar_limit_law* law, double* out);
RAR_API rar_status rar_limit_law_cf(const rar_limit_law* law, const double* u, double* re, double* im);
RAR_API rar_status rar_limit_law_pdf(const rar_limit_law* law, const double* x, double* out);
RAR_API rar_status rar_limit_law_projection(const rar_limit_law* law, const double* v, rar_projection* out);

RAR_API rar_status rar_h_derivative(int k, double s, double* out);
RAR_API rar_status rar_dawson(double x, double* out);

/* Command arguments. Unset optional integers are passed as -1; direction may be NULL. */
typedef struct rar_command_args {
  const char* const* positional;
  size_t positional_count;
  int has_seed;
  uint64_t seed;
  int threads;
  int64_t m;
  int64_t samples;
  int64_t thin;
  int64_t replicas;
  int64_t horizon;
  const double* direction;
  size_t direction_length;
  const char* preset;
} rar_command_args;

RAR_API void rar_command_args_init(rar_command_args* args);

/* Runs a subcommand fully in memory; config_text may be NULL. The result is
   always allocated (even for exit codes 1..3) unless the status is not RAR_OK. */
RAR_API rar_status rar_run_command(const char* subcommand, const rar_command_args* args, const char* config_text,
                                   rar_command_result** out);
RAR_API int rar_command_exit_code(const rar_command_result* r);
RAR_API const char* rar_command_report(const rar_command_result* r);
/* output.path from the config, or NULL. */
RAR_API const char* rar_command_output_path(const rar_command_result* r);
RAR_API size_t rar_command_table_count(const rar_command_result* r);
RAR_API const char* rar_command_table_name(const rar_command_result* r, size_t i);
RAR_API const char* rar_command_table_csv(const rar_command_result* r, size_t i);
RAR_API size_t rar_command_error_count(const rar_command_result* r);
RAR_API const char* rar_command_error(const rar_command_result* r, size_t i);
RAR_API void rar_command_result_destroy(rar_command_result* r);

#ifdef __cplusplus
}
#endif

#endif
