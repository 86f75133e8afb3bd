#include "restartar/restartar.h"

#include <memory>
#include <string>

#include "restartar/commands.hpp"
#include "restartar/error.hpp"
#include "restartar/limit_law.hpp"
#include "restartar/special.hpp"

struct rar_limit_law {
  restartar::LimitLaw law;
};

struct rar_command_result {
  restartar::CommandResult result;
};

namespace {

thread_local std::string last_error;

rar_status status_of(restartar::ErrorKind kind) {
  switch (kind) {
    case restartar::ErrorKind::InvalidArgument: return RAR_INVALID_ARGUMENT;
    case restartar::ErrorKind::Domain: return RAR_DOMAIN;
    case restartar::ErrorKind::Infeasible: return RAR_INFEASIBLE;
    case restartar::ErrorKind::Config: return RAR_CONFIG;
    case restartar::ErrorKind::Runtime: return RAR_RUNTIME;
  }
  return RAR_INTERNAL;
}

template <typename F>
rar_status guard(F&& body) {
  try {
    last_error.clear();
    body();
    return RAR_OK;
  } catch (const restartar::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return RAR_INTERNAL;
  }
}

rar_status null_argument(const char* name) {
  last_error = std::string(name) + " must not be NULL";
  return RAR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* rar_last_error_message(void) { return last_error.c_str(); }

const char* rar_version(void) { return RESTARTAR_VERSION; }

rar_status rar_limit_law_create(double a, const double* sigma, const double* mu, size_t d, double p,
                                rar_limit_law** out) {
  if (!sigma) return null_argument("sigma");
  if (!mu) return null_argument("mu");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guard([&] {
    const auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXd s = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(sigma, n, n);
    Eigen::VectorXd m = Eigen::Map<const Eigen::VectorXd>(mu, n);
    *out = new rar_limit_law{restartar::LimitLaw(a, s, m, p)};
  });
}

void rar_limit_law_destroy(rar_limit_law* law) { delete law; }

size_t rar_limit_law_dimension(const rar_limit_law* law) {
  return law ? static_cast<size_t>(law->law.dimension()) : 0;
}

rar_status rar_limit_law_feasibility_ratio(const rar_limit_law* law, double* out) {
  if (!law) return null_argument("law");
  if (!out) return null_argument("out");
  return guard([&] { *out = law->law.feasibility_ratio(); });
}

rar_status rar_limit_law_cf(const rar_limit_law* law, const double* u, double* re, double* im) {
  if (!law) return null_argument("law");
  if (!u) return null_argument("u");
  if (!re || !im) return null_argument("re/im");
  return guard([&] {
    const auto z = law->law.cf(std::span<const double>(u, static_cast<size_t>(law->law.dimension())));
    *re = z.real();
    *im = z.imag();
  });
}

rar_status rar_limit_law_pdf(const rar_limit_law* law, const double* x, double* out) {
  if (!law) return null_argument("law");
  if (!x) return null_argument("x");
  if (!out) return null_argument("out");
  return guard([&] { *out = law->law.pdf(std::span<const double>(x, static_cast<size_t>(law->law.dimension()))); });
}

rar_status rar_limit_law_projection(const rar_limit_law* law, const double* v, rar_projection* out) {
  if (!law) return null_argument("law");
  if (!v) return null_argument("v");
  if (!out) return null_argument("out");
  return guard([&] {
    const auto pl = law->law.projection(std::span<const double>(v, static_cast<size_t>(law->law.dimension())));
    *out = {pl.scale, pl.prob_plus, pl.prob_minus, pl.atom_mass};
  });
}

rar_status rar_h_derivative(int k, double s, double* out) {
  if (!out) return null_argument("out");
  return guard([&] { *out = restartar::h_derivative(k, s); });
}

rar_status rar_dawson(double x, double* out) {
  if (!out) return null_argument("out");
  return guard([&] { *out = restartar::dawson(x); });
}

void rar_command_args_init(rar_command_args* args) {
  if (!args) return;
  *args = rar_command_args{};
  args->threads = 1;
  args->m = args->samples = args->thin = args->replicas = args->horizon = -1;
}

rar_status rar_run_command(const char* subcommand, const rar_command_args* args, const char* config_text,
                           rar_command_result** out) {
  if (!subcommand) return null_argument("subcommand");
  if (!args) return null_argument("args");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guard([&] {
    restartar::CommandArgs a;
    for (size_t i = 0; i < args->positional_count; ++i) a.positional.emplace_back(args->positional[i]);
    if (args->has_seed) a.seed = args->seed;
    a.threads = args->threads;
    auto opt = [](int64_t v) { return v >= 0 ? std::optional<std::int64_t>(v) : std::nullopt; };
    a.m = opt(args->m);
    a.samples = opt(args->samples);
    a.thin = opt(args->thin);
    a.replicas = opt(args->replicas);
    a.horizon = opt(args->horizon);
    if (args->direction) a.direction = std::vector<double>(args->direction, args->direction + args->direction_length);
    if (args->preset) a.preset = std::string(args->preset);
    std::optional<std::string> config;
    if (config_text) config = std::string(config_text);
    *out = new rar_command_result{restartar::run_command(subcommand, a, config)};
  });
}

int rar_command_exit_code(const rar_command_result* r) { return r ? r->result.exit_code : -1; }

const char* rar_command_report(const rar_command_result* r) { return r ? r->result.report.c_str() : ""; }

const char* rar_command_output_path(const rar_command_result* r) {
  return r && r->result.output_path ? r->result.output_path->c_str() : nullptr;
}

size_t rar_command_table_count(const rar_command_result* r) { return r ? r->result.tables.size() : 0; }

const char* rar_command_table_name(const rar_command_result* r, size_t i) {
  return r && i < r->result.tables.size() ? r->result.tables[i].first.c_str() : nullptr;
}

const char* rar_command_table_csv(const rar_command_result* r, size_t i) {
  return r && i < r->result.tables.size() ? r->result.tables[i].second.c_str() : nullptr;
}

size_t rar_command_error_count(const rar_command_result* r) { return r ? r->result.errors.size() : 0; }

const char* rar_command_error(const rar_command_result* r, size_t i) {
  return r && i < r->result.errors.size() ? r->result.errors[i].c_str() : nullptr;
}

void rar_command_result_destroy(rar_command_result* r) { delete r; }

}  // extern "C"
