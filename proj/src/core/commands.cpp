#include "restartar/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <json.hpp>

#include "restartar/chain.hpp"
#include "restartar/config.hpp"
#include "restartar/csv.hpp"
#include "restartar/limit_law.hpp"
#include "restartar/moments.hpp"
#include "restartar/scenarios.hpp"
#include "restartar/stats.hpp"
#include "restartar/verify.hpp"

namespace restartar {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;

  [[nodiscard]] std::string csv() const {
    CsvTable t(header);
    for (const auto& r : rows) t.add_row(r);
    return t.str();
  }

  [[nodiscard]] json as_json() const {
    json out_rows = json::array();
    for (const auto& r : rows) {
      json row = json::array();
      for (const auto& c : r) std::visit([&row](const auto& v) { row.push_back(v); }, c);
      out_rows.push_back(row);
    }
    return {{"header", header}, {"rows", out_rows}};
  }
};

struct Context {
  std::string command;
  RunConfig cfg;
  CommandArgs args;
  std::uint64_t seed = 0;
  RandomStream stream{0, 0};
  json warnings = json::array();
  std::vector<Table> tables;
  std::optional<bool> verdict;
  std::vector<std::string> failures;  // non-empty turns a finished run into exit 2
};

[[noreturn]] void config_error(const std::string& message) { throw ConfigError({message}); }

std::int64_t positive(std::optional<std::int64_t> v, std::int64_t fallback, const std::string& name) {
  const auto value = v.value_or(fallback);
  if (value < 1) config_error(name + ": must be >= 1");
  return value;
}

const json* option(const Context& ctx, const std::string& key) {
  return ctx.cfg.options.contains(key) ? &ctx.cfg.options.at(key) : nullptr;
}

double option_number(const Context& ctx, const std::string& key, double fallback) {
  const auto* v = option(ctx, key);
  if (!v) return fallback;
  if (!v->is_number()) config_error("options." + key + ": must be a number");
  return v->get<double>();
}

bool option_flag(const Context& ctx, const std::string& key) {
  const auto* v = option(ctx, key);
  if (!v) return false;
  if (!v->is_boolean()) config_error("options." + key + ": must be true or false");
  return v->get<bool>();
}

std::vector<double> option_numbers(const Context& ctx, const std::string& key) {
  const auto* v = option(ctx, key);
  if (!v) return {};
  if (v->is_number()) return {v->get<double>()};
  if (!v->is_array()) config_error("options." + key + ": must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : *v) {
    if (!x.is_number()) config_error("options." + key + ": must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

ModelFamily model(const Context& ctx, const std::string& fallback_preset = "") {
  if (ctx.cfg.model) return *ctx.cfg.model;
  if (ctx.args.preset) return example_family(*ctx.args.preset);
  if (!fallback_preset.empty()) return example_family(fallback_preset);
  config_error("model required: give \"model\" in the config or --preset");
}

std::int64_t run_m(const Context& ctx, std::int64_t fallback) {
  if (ctx.args.m) return positive(ctx.args.m, fallback, "--m");
  if (ctx.cfg.run.m) return *ctx.cfg.run.m;
  if (!ctx.cfg.run.m_grid.empty()) return ctx.cfg.run.m_grid.front();
  return fallback;
}

std::vector<std::int64_t> run_grid(const Context& ctx, std::vector<std::int64_t> fallback) {
  if (ctx.args.m) return {positive(ctx.args.m, 1, "--m")};
  if (!ctx.cfg.run.m_grid.empty()) return ctx.cfg.run.m_grid;
  if (ctx.cfg.run.m) return {*ctx.cfg.run.m};
  return fallback;
}

std::vector<double> direction(const Context& ctx, int d) {
  std::vector<double> v;
  if (ctx.args.direction) v = *ctx.args.direction;
  else if (option(ctx, "direction")) v = option_numbers(ctx, "direction");
  else if (option(ctx, "u")) v = option_numbers(ctx, "u");
  if (v.empty()) {
    v.assign(static_cast<std::size_t>(d), 0.0);
    v[0] = 1.0;
  }
  if (static_cast<int>(v.size()) != d)
    config_error("direction: has " + std::to_string(v.size()) + " entries, dimension is " + std::to_string(d));
  double norm = 0.0;
  for (double x : v) norm += x * x;
  if (!(norm > 0.0) || !std::isfinite(norm)) config_error("direction: must be a finite nonzero vector");
  return v;
}

StationaryOptions stationary_options(const Context& ctx, StationaryOptions base = {}) {
  const auto& r = ctx.cfg.run;
  if (r.mode) base.mode = *r.mode == "long-run" ? StationaryMode::LongRun : StationaryMode::CyclePool;
  if (r.chain) base.chain = *r.chain == "x" ? ChainKind::X : ChainKind::Y;
  if (ctx.args.thin) base.thin = positive(ctx.args.thin, 1, "--thin");
  else if (r.thin) base.thin = *r.thin;
  if (r.burn_in) base.burn_in = *r.burn_in;
  if (ctx.args.replicas) base.replicas = static_cast<int>(positive(ctx.args.replicas, 1, "--replicas"));
  else if (r.replicas) base.replicas = static_cast<int>(*r.replicas);
  if (r.cap) base.cap = *r.cap;
  base.threads = ctx.args.threads;
  if (base.chain == ChainKind::X && base.mode == StationaryMode::CyclePool)
    config_error("run.chain: the X chain has no restarts; use run.mode \"long-run\"");
  return base;
}

std::int64_t samples(const Context& ctx, std::int64_t fallback) {
  if (ctx.args.samples) return positive(ctx.args.samples, 1, "--samples");
  return ctx.cfg.run.samples.value_or(fallback);
}

std::int64_t horizon(const Context& ctx, std::int64_t fallback) {
  if (ctx.args.horizon) return positive(ctx.args.horizon, 1, "--horizon");
  return ctx.cfg.run.horizon.value_or(fallback);
}

std::int64_t replicas(const Context& ctx, std::int64_t fallback) {
  if (ctx.args.replicas) return positive(ctx.args.replicas, 1, "--replicas");
  return ctx.cfg.run.replicas.value_or(fallback);
}

LimitLaw limit_law(const Context& ctx) {
  std::optional<ModelFamily> f = ctx.cfg.model;
  if (!f && ctx.args.preset) f = example_family(*ctx.args.preset);
  const LimitSpec spec = ctx.cfg.limit.value_or(LimitSpec{});
  double a = 0.0;
  if (spec.a) a = *spec.a;
  else if (f) a = f->drift;
  else config_error("limit.a: required (or give a model)");
  Eigen::MatrixXd sigma;
  if (spec.sigma) sigma = *spec.sigma;
  else if (f) sigma = f->noise.covariance();
  else config_error("limit.sigma: required (or give a model)");
  const Eigen::VectorXd mu = spec.mu.value_or(Eigen::VectorXd::Zero(sigma.rows()));
  return LimitLaw(a, sigma, mu, spec.p.value_or(1.0));
}

std::vector<std::string> coordinate_header(const std::string& prefix, int d) {
  std::vector<std::string> out;
  for (int j = 1; j <= d; ++j) out.push_back(prefix + "_" + std::to_string(j));
  return out;
}

// Evaluation points: options.points, or a ray t v on options.grid = [lo, hi, n].
std::vector<std::vector<double>> evaluation_points(const Context& ctx, int d, double lo, double hi, int n) {
  std::vector<std::vector<double>> out;
  if (const auto* pts = option(ctx, "points")) {
    if (!pts->is_array() || pts->empty()) config_error("options.points: must be a nonempty array");
    for (const auto& p : *pts) {
      std::vector<double> x;
      if (p.is_number()) x.push_back(p.get<double>());
      else if (p.is_array())
        for (const auto& c : p) {
          if (!c.is_number()) config_error("options.points: entries must be numbers");
          x.push_back(c.get<double>());
        }
      if (static_cast<int>(x.size()) != d) config_error("options.points: each point needs " + std::to_string(d) + " coordinates");
      out.push_back(std::move(x));
    }
    return out;
  }
  if (option(ctx, "grid")) {
    const auto g = option_numbers(ctx, "grid");
    if (g.size() != 3 || !(g[1] > g[0]) || g[2] < 2 || g[2] != std::floor(g[2]))
      config_error("options.grid: must be [lo, hi, n] with lo < hi and integer n >= 2");
    lo = g[0];
    hi = g[1];
    n = static_cast<int>(g[2]);
  }
  const auto v = direction(ctx, d);
  for (int i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * i / (n - 1);
    std::vector<double> x(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) x[j] = t * v[j];
    out.push_back(std::move(x));
  }
  return out;
}

json law_json(const LimitLaw& law) {
  json sigma = json::array();
  for (Eigen::Index i = 0; i < law.sigma().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < law.sigma().cols(); ++k) row.push_back(law.sigma()(i, k));
    sigma.push_back(row);
  }
  return {{"a", law.drift()},
          {"sigma", sigma},
          {"mu", std::vector<double>(law.mu().data(), law.mu().data() + law.mu().size())},
          {"p", law.p()},
          {"feasibility_ratio", law.feasibility_ratio()}};
}

json projection_json(const ProjectionLaw& pl) {
  return {{"scale", pl.scale}, {"prob_plus", pl.prob_plus}, {"prob_minus", pl.prob_minus}, {"atom_mass", pl.atom_mass}};
}

json cmd_validate(Context& ctx) {
  const auto f = model(ctx);
  json out = json::array();
  for (auto m : run_grid(ctx, {10'000})) {
    const auto verdict = validate_family(f, m);
    out.push_back(to_json(verdict));
    for (const auto& item : verdict.items)
      if (!item.pass) ctx.failures.push_back("m=" + std::to_string(m) + ": " + item.name + " failed (" + item.witness + ")");
  }
  return {{"validations", out}};
}

json cmd_simulate(Context& ctx, bool x_chain) {
  const auto f = model(ctx);
  const auto m = run_m(ctx, 10'000);
  const auto h = horizon(ctx, 1'000);
  auto stream = ctx.stream;
  const auto trace = simulate_coupled(f, m, h, stream);
  const auto& states = x_chain ? trace.states_x : trace.states_y;
  Table t{"trace.csv", {"t"}, {}};
  for (const auto& c : coordinate_header(x_chain ? "x" : "y", f.dimension)) t.header.push_back(c);
  const std::size_t d = static_cast<std::size_t>(f.dimension);
  for (std::size_t i = 0; i * d < states.size(); ++i) {
    std::vector<CsvCell> row{static_cast<std::int64_t>(i)};
    for (std::size_t j = 0; j < d; ++j) row.emplace_back(states[i * d + j]);
    t.rows.push_back(std::move(row));
  }
  ctx.tables.push_back(std::move(t));
  if (trace.censored) ctx.warnings.push_back("tau censored at the horizon " + std::to_string(h));
  return {{"m", m},
          {"horizon", h},
          {"beta", f.beta.value(m)},
          {"gamma", f.gamma.value(m)},
          {"tau", trace.tau},
          {"censored", trace.censored},
          {"chain", x_chain ? "x" : "y"}};
}

json sample_summary(const StationarySample& s) {
  const std::size_t d = static_cast<std::size_t>(s.dimension);
  const std::size_t n = s.states.size() / d;
  std::vector<double> mean(d, 0.0), second(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      mean[j] += s.states[i * d + j];
      second[j] += s.states[i * d + j] * s.states[i * d + j];
    }
  for (std::size_t j = 0; j < d; ++j) {
    mean[j] /= static_cast<double>(n);
    second[j] /= static_cast<double>(n);
  }
  return {{"samples", n},
          {"thin", s.thin},
          {"burn_in", s.burn_in},
          {"steps", s.steps},
          {"cycles", s.cycles},
          {"capped_cycles", s.capped_cycles},
          {"mean_cycle_length", s.mean_cycle_length},
          {"cycle_length_stderr", s.cycle_length_stderr},
          {"mean", mean},
          {"second_moment", second}};
}

json cmd_stationary(Context& ctx) {
  const auto f = model(ctx);
  const auto m = run_m(ctx, 10'000);
  const auto n = samples(ctx, 10'000);
  const auto options = stationary_options(ctx);
  const auto sample = stationary_sample(f, m, n, options, ctx.stream);
  for (const auto& w : sample.warnings) ctx.warnings.push_back(w);
  Table t{"samples.csv", {"i"}, {}};
  for (const auto& c : coordinate_header(options.chain == ChainKind::X ? "x" : "y", f.dimension)) t.header.push_back(c);
  const std::size_t d = static_cast<std::size_t>(f.dimension);
  for (std::size_t i = 0; i * d < sample.states.size(); ++i) {
    std::vector<CsvCell> row{static_cast<std::int64_t>(i)};
    for (std::size_t j = 0; j < d; ++j) row.emplace_back(sample.states[i * d + j]);
    t.rows.push_back(std::move(row));
  }
  ctx.tables.push_back(std::move(t));
  json out = sample_summary(sample);
  out["m"] = m;
  out["mode"] = options.mode == StationaryMode::LongRun ? "long-run" : "cycle-pool";
  out["chain"] = options.chain == ChainKind::X ? "x" : "y";
  out["replicas"] = options.replicas;
  return out;
}

json cmd_tau(Context& ctx) {
  const auto f = model(ctx);
  json per_m = json::array();
  Table t{"tau_survival.csv", {"m", "j", "survival"}, {}};
  for (auto m : run_grid(ctx, {10'000})) {
    const auto stats = estimate_tau_stats(f, m, replicas(ctx, 1'000), horizon(ctx, 100'000),
                                          ctx.stream.substream(static_cast<std::uint64_t>(m)), ctx.args.threads);
    json entry = to_json(stats);
    try {
      const auto tail = geometric_tail_diagnostic(stats);
      entry["tail"] = {{"slope", tail.slope}, {"intercept", tail.intercept}, {"r_squared", tail.r_squared},
                       {"points", tail.points}};
    } catch (const Error& e) {
      ctx.warnings.push_back("m=" + std::to_string(m) + ": tail diagnostic unavailable: " + e.what());
    }
    if (stats.censored_fraction > 0.0)
      ctx.warnings.push_back("m=" + std::to_string(m) + ": " + format_number(stats.censored_fraction) +
                             " of replicas censored at the horizon; the mean is a lower bound");
    for (std::size_t i = 0; i < stats.grid.size(); ++i) t.rows.push_back({m, stats.grid[i], stats.survival[i]});
    per_m.push_back(entry);
  }
  ctx.tables.push_back(std::move(t));
  return {{"tau", per_m}};
}

json cmd_limit_cf(Context& ctx) {
  const auto law = limit_law(ctx);
  const int d = law.dimension();
  Table t{"cf.csv", coordinate_header("u", d), {}};
  t.header.push_back("real");
  t.header.push_back("imag");
  for (const auto& u : evaluation_points(ctx, d, -10.0, 10.0, 81)) {
    const auto z = law.cf(u);
    std::vector<CsvCell> row(u.begin(), u.end());
    row.emplace_back(z.real());
    row.emplace_back(z.imag());
    t.rows.push_back(std::move(row));
  }
  ctx.tables.push_back(std::move(t));
  return {{"law", law_json(law)}, {"points", ctx.tables.back().rows.size()}};
}

json cmd_limit_pdf(Context& ctx) {
  const auto law = limit_law(ctx);
  const int d = law.dimension();
  const auto v = direction(ctx, d);
  Eigen::Map<const Eigen::VectorXd> vv(v.data(), d);
  const double s = std::sqrt(vv.dot(law.sigma() * vv) / (2.0 * law.drift())) / vv.squaredNorm();
  Table t{"pdf.csv", coordinate_header("x", d), {}};
  t.header.push_back("density");
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& x : evaluation_points(ctx, d, -4.0 * s, 4.0 * s, 161)) {
    const double value = law.pdf(x);
    lowest = std::min(lowest, value);
    std::vector<CsvCell> row(x.begin(), x.end());
    row.emplace_back(value);
    t.rows.push_back(std::move(row));
  }
  ctx.tables.push_back(std::move(t));
  if (lowest < 0.0) ctx.warnings.push_back("density formula is negative at some evaluation points (min " + format_number(lowest) + ")");
  return {{"law", law_json(law)}, {"points", ctx.tables.back().rows.size()}, {"min_density", lowest}};
}

std::vector<double> projected_sample(const Context& ctx, const ModelFamily& f, const std::vector<double>& v,
                                     json& summary) {
  const auto m = run_m(ctx, 10'000);
  const auto sample = stationary_sample(f, m, samples(ctx, 100'000), stationary_options(ctx), ctx.stream);
  summary = sample_summary(sample);
  summary["m"] = m;
  const std::size_t d = v.size();
  std::vector<double> out(sample.states.size() / d, 0.0);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) out[i] += v[j] * sample.states[i * d + j];
  return out;
}

json cmd_project(Context& ctx) {
  const auto law = limit_law(ctx);
  const auto v = direction(ctx, law.dimension());
  const auto pl = law.projection(v);
  const auto cdf = mixture_cdf(pl);
  Table t{"projection_cdf.csv", {"x", "cdf"}, {}};
  for (int i = 0; i <= 200; ++i) {
    const double x = pl.scale * (-5.0 + 10.0 * i / 200.0);
    t.rows.push_back({x, cdf.cdf(x)});
  }
  ctx.tables.push_back(std::move(t));
  json out{{"law", law_json(law)}, {"direction", v}, {"projection", projection_json(pl)}};
  if (option_flag(ctx, "empirical")) {
    json summary;
    const auto y = projected_sample(ctx, model(ctx), v, summary);
    out["empirical"] = summary;
    out["empirical"]["ks"] = ks_distance(y, cdf);
  }
  return out;
}

json cmd_moments(Context& ctx) {
  const auto law = limit_law(ctx);
  const auto v = direction(ctx, law.dimension());
  const double order = option_number(ctx, "order", 6.0);
  if (order < 2 || order > 40 || order != std::floor(order)) config_error("options.order: must be an integer in [2, 40]");
  const int K = static_cast<int>(order);
  const auto analytic = moment_recursion(law, v, K);
  Eigen::Map<const Eigen::VectorXd> vv(v.data(), law.dimension());
  const double s = vv.dot(law.sigma() * vv) / (2.0 * law.drift());
  const auto ineq = moment_inequality_check(analytic.values[1], analytic.values[2], s);
  json out{{"law", law_json(law)},
           {"direction", v},
           {"analytic", analytic.values},
           {"inequality", {{"s", s}, {"slack", ineq.slack}, {"pass", ineq.pass}}}};
  std::optional<MomentTable> empirical;
  if (option_flag(ctx, "empirical")) {
    json summary;
    const auto f = model(ctx);
    if (f.dimension != law.dimension()) config_error("model: dimension differs from the limit law");
    const auto y = projected_sample(ctx, f, v, summary);
    const double one = 1.0;
    empirical = empirical_moments(y, std::span<const double>(&one, 1), K);
    out["empirical"] = summary;
    out["empirical"]["values"] = empirical->values;
    out["empirical"]["stderrs"] = empirical->stderrs;
  }
  Table t{"moments.csv", {"k", "analytic"}, {}};
  if (empirical) {
    t.header.push_back("empirical");
    t.header.push_back("empirical_stderr");
  }
  for (int k = 0; k <= K; ++k) {
    std::vector<CsvCell> row{static_cast<std::int64_t>(k), analytic.values[k]};
    if (empirical) {
      row.emplace_back(empirical->values[k]);
      row.emplace_back(empirical->stderrs[k]);
    }
    t.rows.push_back(std::move(row));
  }
  ctx.tables.push_back(std::move(t));
  return out;
}

std::vector<int> criteria_ids(const Context& ctx) {
  std::vector<std::string> names(ctx.args.positional.begin(), ctx.args.positional.end());
  if (names.empty())
    for (double x : option_numbers(ctx, "criteria")) names.push_back(std::to_string(static_cast<long long>(x)));
  std::vector<int> ids;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
    return ids;
  }
  for (const auto& n : names) {
    int id = 0;
    try {
      std::size_t used = 0;
      id = std::stoi(n, &used);
      if (used != n.size()) id = 0;
    } catch (const std::exception&) {
      id = 0;
    }
    if (id < 1 || id > kCriterionCount)
      config_error("verify: unknown criterion \"" + n + "\" (use 1.." + std::to_string(kCriterionCount) + " or all)");
    ids.push_back(id);
  }
  return ids;
}

json cmd_verify(Context& ctx) {
  json out = json::array();
  Table t{"verify.csv", {"id", "name", "pass", "summary"}, {}};
  bool all = true;
  for (int id : criteria_ids(ctx)) {
    const auto r = run_criterion(id, ctx.seed, ctx.args.threads);
    all = all && r.pass;
    out.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"summary", r.summary}, {"details", r.details}});
    t.rows.push_back({static_cast<std::int64_t>(r.id), r.name, std::string(r.pass ? "pass" : "fail"), r.summary});
  }
  ctx.tables.push_back(std::move(t));
  ctx.verdict = all;
  return {{"criteria", out}};
}

json cmd_scenario(Context& ctx) {
  std::string name;
  if (!ctx.args.positional.empty()) name = ctx.args.positional.front();
  else if (const auto* s = option(ctx, "scenario"); s && s->is_string()) name = s->get<std::string>();
  else config_error("scenario: name required (one of example-1.1, example-1.2, example-2, no-truncation, non-hitting, "
                    "tau-divergence, gamma-search)");
  if (ctx.args.positional.size() > 1) config_error("scenario: takes a single name");
  auto s = make_scenario(name);
  if (ctx.cfg.model) s.family = *ctx.cfg.model;
  else if (ctx.args.preset) s.family = example_family(*ctx.args.preset);
  s.m_grid = run_grid(ctx, s.m_grid);
  s.samples = samples(ctx, s.samples);
  s.options = stationary_options(ctx, s.options);
  json out = run_scenario(s, ctx.stream, ctx.args.threads);
  for (const auto& w : out["warnings"]) ctx.warnings.push_back(w);
  out.erase("warnings");
  Table t{"scenario.csv", {"check", "pass", "value", "threshold", "relation"}, {}};
  for (const auto& c : out["checks"])
    t.rows.push_back({c["name"].get<std::string>(), std::string(c["pass"].get<bool>() ? "pass" : "fail"),
                      c["value"].get<double>(), c["threshold"].get<double>(), c["relation"].get<std::string>()});
  ctx.tables.push_back(std::move(t));
  ctx.verdict = out["verdict"] == "pass";
  return out;
}

json cmd_gamma_search(Context& ctx) {
  const auto f = model(ctx, "gamma-search");
  GammaSearchOptions options;
  const double top = gamma_search_upper_target(f);
  options.targets = option_numbers(ctx, "targets");
  if (options.targets.empty())
    for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) options.targets.push_back(x * top);
  options.m_grid = run_grid(ctx, options.m_grid);
  options.tolerance = option_number(ctx, "tolerance", options.tolerance);
  options.c_max = option_number(ctx, "c_max", options.c_max);
  options.budget = static_cast<std::int64_t>(option_number(ctx, "budget", 0.0));
  options.replicas = static_cast<int>(replicas(ctx, options.replicas));
  options.threads = ctx.args.threads;
  const auto entries = gamma_search(f, options, ctx.stream);
  json rows = json::array();
  Table t{"gamma_search.csv",
          {"m", "target", "ok", "c", "gamma", "achieved", "achieved_stderr", "validated", "validated_stderr"},
          {}};
  bool all = true;
  for (const auto& e : entries) {
    rows.push_back(to_json(e));
    all = all && e.ok;
    if (!e.error.empty()) ctx.warnings.push_back("target " + format_number(e.target) + ": " + e.error);
    t.rows.push_back({e.m, e.target, std::string(e.ok ? "true" : "false"), e.c, e.gamma, e.achieved, e.achieved_stderr,
                      e.validated, e.validated_stderr});
  }
  ctx.tables.push_back(std::move(t));
  return {{"upper_target", top}, {"tolerance", options.tolerance}, {"entries", rows}, {"all_ok", all}};
}

json cmd_non_hitting(Context& ctx) {
  auto alphas = option_numbers(ctx, "alpha");
  if (alphas.empty()) alphas = {0.25, 0.3, 0.49};
  const double steps = option_number(ctx, "steps", 100'000.0);
  if (steps < 1 || steps != std::floor(steps)) config_error("options.steps: must be an integer >= 1");
  const auto runs = replicas(ctx, 10);
  json rows = json::array();
  Table t{"non_hitting.csv", {"alpha", "run", "gamma", "min_abs", "bound", "hit", "pass"}, {}};
  bool all = true;
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    const double alpha = alphas[ai];
    const double bound = (1.0 - 2.0 * alpha) / (1.0 - alpha);
    const double gamma = option_number(ctx, "gamma", 0.5 * bound);
    for (std::int64_t r = 0; r < runs; ++r) {
      auto sub = ctx.stream.substream(ai).substream(static_cast<std::uint64_t>(r));
      const auto rep = non_hitting_counterexample(alpha, gamma, static_cast<std::int64_t>(steps), sub);
      all = all && rep.pass;
      rows.push_back(to_json(rep));
      t.rows.push_back({alpha, r, gamma, rep.min_abs, rep.bound, std::string(rep.hit ? "true" : "false"),
                        std::string(rep.pass ? "true" : "false")});
    }
  }
  ctx.tables.push_back(std::move(t));
  return {{"runs", rows}, {"all_pass", all}};
}

json dispatch(Context& ctx) {
  const auto& c = ctx.command;
  if (c == "validate") return cmd_validate(ctx);
  if (c == "simulate-x") return cmd_simulate(ctx, true);
  if (c == "simulate-y") return cmd_simulate(ctx, false);
  if (c == "stationary") return cmd_stationary(ctx);
  if (c == "tau") return cmd_tau(ctx);
  if (c == "limit-cf") return cmd_limit_cf(ctx);
  if (c == "limit-pdf") return cmd_limit_pdf(ctx);
  if (c == "project") return cmd_project(ctx);
  if (c == "moments") return cmd_moments(ctx);
  if (c == "verify") return cmd_verify(ctx);
  if (c == "scenario") return cmd_scenario(ctx);
  if (c == "gamma-search") return cmd_gamma_search(ctx);
  if (c == "non-hitting") return cmd_non_hitting(ctx);
  config_error("unknown subcommand \"" + c + "\"");
}

json module_versions() {
  json out = json::object();
  for (const char* m : {"core-model", "noise", "chain", "limitlaw", "moments", "stats", "scenarios", "cli"})
    out[m] = RESTARTAR_VERSION;
  return out;
}

}  // namespace

std::vector<std::string> command_names() {
  return {"validate",  "simulate-x", "simulate-y", "stationary", "tau",      "limit-cf",     "limit-pdf",
          "project",   "moments",    "verify",     "scenario",   "gamma-search", "non-hitting"};
}

CommandResult run_command(const std::string& subcommand, const CommandArgs& args,
                          const std::optional<std::string>& config_text) {
  CommandResult result;
  try {
    Context ctx;
    ctx.command = subcommand;
    ctx.args = args;
    if (config_text) ctx.cfg = parse_config(*config_text);
    if (args.threads < 1) config_error("--threads: must be >= 1");
    if (args.seed) ctx.cfg.seed = args.seed;
    if (!ctx.cfg.seed) config_error("seed required");
    ctx.seed = *ctx.cfg.seed;
    ctx.stream = RandomStream(ctx.seed, 0);

    json body = dispatch(ctx);
    if (!ctx.failures.empty()) {
      result.exit_code = kExitRuntime;
      result.errors = ctx.failures;
      return result;
    }

    // Command-line overrides are folded into the echo.
    json echo = ctx.cfg.echo();
    echo["seed"] = ctx.seed;
    json overrides = json::object();
    if (args.m) overrides["m"] = *args.m;
    if (args.samples) overrides["samples"] = *args.samples;
    if (args.direction) overrides["direction"] = *args.direction;
    if (args.thin) overrides["thin"] = *args.thin;
    if (args.replicas) overrides["replicas"] = *args.replicas;
    if (args.horizon) overrides["horizon"] = *args.horizon;
    if (args.preset) overrides["preset"] = *args.preset;
    if (!args.positional.empty()) overrides["positional"] = args.positional;
    echo["command_line"] = overrides;

    json report{{"schema_version", kSchemaVersion},
                {"command", subcommand},
                {"seed", ctx.seed},
                {"versions", module_versions()},
                {"config", echo},
                {"result", body},
                {"warnings", ctx.warnings}};
    report["verdict"] = ctx.verdict ? json(*ctx.verdict ? "pass" : "fail") : json(nullptr);
    if (ctx.cfg.output_format == "json") {
      json tables = json::object();
      for (const auto& t : ctx.tables) tables[t.name] = t.as_json();
      report["tables"] = tables;
    } else {
      for (const auto& t : ctx.tables) result.tables.emplace_back(t.name, t.csv());
    }
    result.report = report.dump(2) + "\n";
    result.output_path = ctx.cfg.output_path;
    if (ctx.verdict && !*ctx.verdict) result.exit_code = kExitVerdict;
  } catch (const ConfigError& e) {
    result = {};
    result.exit_code = kExitConfig;
    result.errors = e.messages();
  } catch (const Error& e) {
    result = {};
    result.exit_code = e.kind() == ErrorKind::Config ? kExitConfig : kExitRuntime;
    result.errors = {e.what()};
  } catch (const std::exception& e) {
    result = {};
    result.exit_code = kExitRuntime;
    result.errors = {e.what()};
  }
  return result;
}

}  // namespace restartar
