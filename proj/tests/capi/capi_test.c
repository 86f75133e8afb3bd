#include <math.h>
#include <stdio.h>
#include <string.h>

#include "restartar/restartar.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static int near(double a, double b, double tol) { return fabs(a - b) <= tol * (1.0 + fabs(b)); }

static void test_limit_law(void) {
  const double sigma[1] = {1.0};
  const double mu[1] = {0.0};
  rar_limit_law* law = NULL;
  EXPECT(rar_limit_law_create(0.5, sigma, mu, 1, 1.0, &law) == RAR_OK);
  EXPECT(law != NULL);
  EXPECT(rar_limit_law_dimension(law) == 1);

  double re = 0.0, im = 0.0;
  const double u[1] = {1.0};
  EXPECT(rar_limit_law_cf(law, u, &re, &im) == RAR_OK);
  EXPECT(near(re, exp(-0.5), 1e-14));
  EXPECT(fabs(im) < 1e-15);

  double density = 0.0;
  const double x[1] = {0.0};
  EXPECT(rar_limit_law_pdf(law, x, &density) == RAR_OK);
  EXPECT(near(density, 1.0 / sqrt(2.0 * M_PI), 1e-13));

  rar_projection proj;
  EXPECT(rar_limit_law_projection(law, u, &proj) == RAR_OK);
  EXPECT(near(proj.scale, 1.0, 1e-14));
  EXPECT(near(proj.atom_mass, 0.0, 1e-14));
  rar_limit_law_destroy(law);
}

static void test_errors(void) {
  const double sigma[1] = {1.0};
  const double mu[1] = {0.6};
  rar_limit_law* law = NULL;
  EXPECT(rar_limit_law_create(1.0, sigma, mu, 1, 1.0, &law) == RAR_INFEASIBLE);
  EXPECT(law == NULL);
  EXPECT(strstr(rar_last_error_message(), "feasibility ratio") != NULL);

  double out = 0.0;
  EXPECT(rar_h_derivative(1, -1.0, &out) == RAR_DOMAIN);
  EXPECT(rar_h_derivative(1, 1.0, NULL) == RAR_INVALID_ARGUMENT);
  EXPECT(rar_limit_law_create(1.0, NULL, mu, 1, 1.0, &law) == RAR_INVALID_ARGUMENT);
}

static void test_special(void) {
  double out = 0.0;
  EXPECT(rar_h_derivative(1, 1.0, &out) == RAR_OK);
  EXPECT(near(out, -0.5518192, 1e-7));
  EXPECT(rar_h_derivative(2, 1.0, &out) == RAR_OK);
  EXPECT(near(out, 1.0116685, 1e-7));
  EXPECT(rar_dawson(1.0, &out) == RAR_OK);
  EXPECT(near(out, 0.53807950691276841914, 1e-14));
  EXPECT(strlen(rar_version()) > 0);
}

static void test_command(void) {
  rar_command_args args;
  rar_command_args_init(&args);
  EXPECT(args.threads == 1);
  EXPECT(args.m == -1);
  rar_command_result* r = NULL;
  const char* config = "{\"limit\": {\"a\": 1, \"sigma\": [[1]]}, \"options\": {\"points\": [[0]]}}";

  EXPECT(rar_run_command("limit-pdf", &args, config, &r) == RAR_OK);
  EXPECT(rar_command_exit_code(r) == 1);
  EXPECT(rar_command_error_count(r) == 1);
  EXPECT(strstr(rar_command_error(r, 0), "seed required") != NULL);
  rar_command_result_destroy(r);

  args.has_seed = 1;
  args.seed = 9;
  EXPECT(rar_run_command("limit-pdf", &args, config, &r) == RAR_OK);
  EXPECT(rar_command_exit_code(r) == 0);
  EXPECT(strstr(rar_command_report(r), "\"command\": \"limit-pdf\"") != NULL ||
         strstr(rar_command_report(r), "\"command\":\"limit-pdf\"") != NULL);
  EXPECT(rar_command_table_count(r) == 1);
  EXPECT(strcmp(rar_command_table_name(r, 0), "pdf.csv") == 0);
  EXPECT(strstr(rar_command_table_csv(r, 0), "0.5641895835477") != NULL);
  EXPECT(rar_command_output_path(r) == NULL);
  EXPECT(rar_command_table_name(r, 5) == NULL);
  rar_command_result_destroy(r);
}

int main(void) {
  test_limit_law();
  test_errors();
  test_special();
  test_command();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
