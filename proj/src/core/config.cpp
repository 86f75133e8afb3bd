#include "restartar/config.hpp"

#include <set>

#include "restartar/scenarios.hpp"

namespace restartar {
namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "\n") + p;
  return out;
}

// Field access with type checks; every problem is appended to `errors`.
class Reader {
 public:
  Reader(const json& obj, std::string path, std::vector<std::string>& errors, std::set<std::string> allowed)
      : obj_(obj), path_(std::move(path)), errors_(errors) {
    if (!obj_.is_object()) {
      error("", "must be an object");
      valid_ = false;
      return;
    }
    for (const auto& [key, value] : obj_.items())
      if (!allowed.count(key)) error(key, "unknown key");
  }

  [[nodiscard]] bool valid() const { return valid_; }
  [[nodiscard]] bool has(const std::string& key) const { return valid_ && obj_.contains(key); }
  [[nodiscard]] std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void error(const std::string& key, const std::string& message) const {
    const std::string where = key.empty() ? path_ : at(key);
    errors_.push_back((where.empty() ? "config" : where) + ": " + message);
  }

  std::optional<double> number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = obj_.at(key);
    if (!v.is_number()) {
      error(key, "must be a number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<std::int64_t> integer(const std::string& key, std::int64_t min_value) const {
    if (!has(key)) return std::nullopt;
    const auto& v = obj_.at(key);
    if (!v.is_number_integer()) {
      error(key, "must be an integer");
      return std::nullopt;
    }
    const auto value = v.get<std::int64_t>();
    if (value < min_value) {
      error(key, "must be >= " + std::to_string(min_value));
      return std::nullopt;
    }
    return value;
  }

  std::optional<std::string> string(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = obj_.at(key);
    if (!v.is_string()) {
      error(key, "must be a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  std::optional<std::vector<double>> numbers(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = obj_.at(key);
    if (v.is_number()) return std::vector<double>{v.get<double>()};
    if (!v.is_array()) {
      error(key, "must be an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) {
        error(key, "must be an array of numbers");
        return std::nullopt;
      }
      out.push_back(x.get<double>());
    }
    return out;
  }

  std::optional<std::vector<std::vector<double>>> rows(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = obj_.at(key);
    if (!v.is_array()) {
      error(key, "must be an array");
      return std::nullopt;
    }
    std::vector<std::vector<double>> out;
    for (const auto& row : v) {
      if (row.is_number()) {
        out.push_back({row.get<double>()});
        continue;
      }
      if (!row.is_array()) {
        error(key, "must be an array of numbers or of number arrays");
        return std::nullopt;
      }
      std::vector<double> r;
      for (const auto& x : row) {
        if (!x.is_number()) {
          error(key, "must contain numbers only");
          return std::nullopt;
        }
        r.push_back(x.get<double>());
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  template <typename T>
  std::optional<T> require(std::optional<T> value, const std::string& key) const {
    if (!value && !has(key)) error(key, "required");
    return value;
  }

  const json& raw(const std::string& key) const { return obj_.at(key); }

 private:
  const json& obj_;
  std::string path_;
  std::vector<std::string>& errors_;
  bool valid_ = true;
};

template <typename F>
auto guarded(const Reader& r, const std::string& key, F&& build) -> std::optional<decltype(build())> {
  try {
    return build();
  } catch (const Error& e) {
    r.error(key, e.what());
    return std::nullopt;
  }
}

std::optional<AlphaLaw> parse_alpha(const json& j, const std::string& path, std::vector<std::string>& errors) {
  Reader r(j, path, errors, {"kind", "a", "values", "probs", "shift"});
  if (!r.valid()) return std::nullopt;
  const auto kind = r.require(r.string("kind"), "kind");
  if (!kind) return std::nullopt;
  if (*kind == "heavy-traffic") {
    const auto a = r.require(r.number("a"), "a");
    if (!a) return std::nullopt;
    return guarded(r, "a", [&] { return AlphaLaw::heavy_traffic(*a); });
  }
  if (*kind == "two-point-shifted" || *kind == "finite-discrete") {
    const auto values = r.require(r.numbers("values"), "values");
    const auto probs = r.require(r.numbers("probs"), "probs");
    std::optional<double> shift;
    if (*kind == "two-point-shifted") shift = r.require(r.number("shift"), "shift");
    if (!values || !probs || (*kind == "two-point-shifted" && !shift)) return std::nullopt;
    return guarded(r, "probs", [&] {
      return *kind == "two-point-shifted" ? AlphaLaw::two_point_shifted(*values, *probs, *shift)
                                          : AlphaLaw::finite_discrete(*values, *probs);
    });
  }
  r.error("kind", "unknown alpha kind \"" + *kind + "\"");
  return std::nullopt;
}

std::optional<ScalarSchedule> parse_schedule(const json& j, const std::string& path, std::vector<std::string>& errors) {
  Reader r(j, path, errors, {"kind", "c", "exponent", "table"});
  if (!r.valid()) return std::nullopt;
  const auto kind = r.require(r.string("kind"), "kind");
  if (!kind) return std::nullopt;
  if (*kind == "inv-sqrt-m") return ScalarSchedule::inv_sqrt_m();
  if (*kind == "scaled-inv-sqrt-m") {
    const auto c = r.require(r.number("c"), "c");
    if (!c) return std::nullopt;
    return guarded(r, "c", [&] { return ScalarSchedule::scaled_inv_sqrt_m(*c); });
  }
  if (*kind == "power") {
    const auto c = r.require(r.number("c"), "c");
    const auto e = r.require(r.number("exponent"), "exponent");
    if (!c || !e) return std::nullopt;
    return guarded(r, "c", [&] { return ScalarSchedule::power(*c, *e); });
  }
  if (*kind == "explicit-table") {
    if (!r.has("table") || !r.raw("table").is_object()) {
      r.error("table", "required object mapping m to value");
      return std::nullopt;
    }
    std::map<std::int64_t, double> table;
    for (const auto& [key, value] : r.raw("table").items()) {
      try {
        std::size_t used = 0;
        const auto m = std::stoll(key, &used);
        if (used != key.size() || !value.is_number()) throw std::invalid_argument(key);
        table[m] = value.get<double>();
      } catch (const std::exception&) {
        r.error("table", "entries must map integer m to a number");
        return std::nullopt;
      }
    }
    return guarded(r, "table", [&] { return ScalarSchedule::explicit_table(table); });
  }
  r.error("kind", "unknown schedule kind \"" + *kind + "\"");
  return std::nullopt;
}

std::optional<NoiseLaw> parse_noise(const json& j, const std::string& path, std::vector<std::string>& errors) {
  Reader r(j, path, errors, {"kind", "dimension", "lo", "hi", "half_widths", "points", "probs"});
  if (!r.valid()) return std::nullopt;
  const auto kind = r.require(r.string("kind"), "kind");
  if (!kind) return std::nullopt;
  if (*kind == "standard-gaussian" || *kind == "rademacher-product") {
    const auto d = r.integer("dimension", 1).value_or(1);
    return guarded(r, "dimension", [&] {
      return *kind == "standard-gaussian" ? NoiseLaw::standard_gaussian(static_cast<int>(d))
                                          : NoiseLaw::rademacher_product(static_cast<int>(d));
    });
  }
  if (*kind == "uniform-interval") {
    const auto lo = r.require(r.number("lo"), "lo");
    const auto hi = r.require(r.number("hi"), "hi");
    if (!lo || !hi) return std::nullopt;
    return guarded(r, "lo", [&] { return NoiseLaw::uniform_interval(*lo, *hi); });
  }
  if (*kind == "uniform-box") {
    const auto h = r.require(r.numbers("half_widths"), "half_widths");
    if (!h) return std::nullopt;
    return guarded(r, "half_widths", [&] { return NoiseLaw::uniform_box(*h); });
  }
  if (*kind == "finite-discrete") {
    const auto points = r.require(r.rows("points"), "points");
    const auto probs = r.require(r.numbers("probs"), "probs");
    if (!points || !probs) return std::nullopt;
    return guarded(r, "probs", [&] { return NoiseLaw::finite_discrete(*points, *probs); });
  }
  r.error("kind", "unknown noise kind \"" + *kind + "\"");
  return std::nullopt;
}

std::optional<RestartRegion> parse_region(const json& j, const std::string& path, int dimension,
                                          std::vector<std::string>& errors) {
  Reader r(j, path, errors, {"kind", "radius", "lo", "hi", "half_widths"});
  if (!r.valid()) return std::nullopt;
  const auto kind = r.require(r.string("kind"), "kind");
  if (!kind) return std::nullopt;
  if (*kind == "ball") {
    const auto radius = r.require(r.number("radius"), "radius");
    if (!radius) return std::nullopt;
    return guarded(r, "radius", [&] { return RestartRegion::ball(dimension, *radius); });
  }
  if (*kind == "interval") {
    const auto lo = r.require(r.number("lo"), "lo");
    const auto hi = r.require(r.number("hi"), "hi");
    if (!lo || !hi) return std::nullopt;
    return guarded(r, "lo", [&] { return RestartRegion::interval(*lo, *hi); });
  }
  if (*kind == "centered-box") {
    const auto h = r.require(r.numbers("half_widths"), "half_widths");
    if (!h) return std::nullopt;
    return guarded(r, "half_widths", [&] { return RestartRegion::centered_box(*h); });
  }
  r.error("kind", "unknown region kind \"" + *kind + "\"");
  return std::nullopt;
}

std::optional<ModelFamily> parse_model_into(const json& j, const std::string& path, std::vector<std::string>& errors) {
  Reader r(j, path, errors, {"preset", "dimension", "drift", "alpha", "beta", "gamma", "noise", "region"});
  if (!r.valid()) return std::nullopt;
  ModelFamily f;
  bool ok = true;
  const auto preset = r.string("preset");
  if (preset) {
    try {
      f = example_family(*preset);
    } catch (const Error& e) {
      r.error("preset", e.what());
      return std::nullopt;
    }
  } else {
    for (const char* key : {"alpha", "noise", "region"})
      if (!r.has(key)) {
        r.error(key, "required (or give a preset)");
        ok = false;
      }
  }
  if (r.has("alpha")) {
    if (auto a = parse_alpha(r.raw("alpha"), r.at("alpha"), errors)) {
      f.alpha = *a;
      if (!r.has("drift") && a->kind() != AlphaLaw::Kind::FiniteDiscrete) f.drift = a->drift();
    } else {
      ok = false;
    }
  }
  for (const char* key : {"beta", "gamma"}) {
    if (!r.has(key)) continue;
    if (auto s = parse_schedule(r.raw(key), r.at(key), errors))
      (std::string(key) == "beta" ? f.beta : f.gamma) = *s;
    else
      ok = false;
  }
  if (r.has("noise")) {
    if (auto n = parse_noise(r.raw("noise"), r.at("noise"), errors)) {
      f.noise = *n;
      f.dimension = n->dimension();
    } else {
      ok = false;
    }
  }
  if (const auto d = r.integer("dimension", 1)) f.dimension = static_cast<int>(*d);
  if (const auto drift = r.number("drift")) {
    if (*drift > 0.0) f.drift = *drift;
    else r.error("drift", "must be positive");
  } else if (!preset && r.has("alpha") && f.alpha.kind() == AlphaLaw::Kind::FiniteDiscrete && !r.has("drift")) {
    r.error("drift", "required for finite-discrete alpha laws");
    ok = false;
  }
  if (r.has("region")) {
    if (auto reg = parse_region(r.raw("region"), r.at("region"), f.dimension, errors)) f.region = *reg;
    else ok = false;
  }
  if (ok && f.noise.dimension() != f.dimension) r.error("noise", "dimension differs from the model dimension");
  if (ok && f.region.dimension() != f.dimension) r.error("region", "dimension differs from the model dimension");
  if (!ok) return std::nullopt;
  return f;
}

json schedule_to_json(const ScalarSchedule& s) {
  switch (s.kind()) {
    case ScalarSchedule::Kind::InvSqrtM:
      return {{"kind", "inv-sqrt-m"}};
    case ScalarSchedule::Kind::ScaledInvSqrtM:
      return {{"kind", "scaled-inv-sqrt-m"}, {"c", s.coefficient()}};
    case ScalarSchedule::Kind::Power:
      return {{"kind", "power"}, {"c", s.coefficient()}, {"exponent", s.exponent()}};
    case ScalarSchedule::Kind::ExplicitTable: {
      json table = json::object();
      for (const auto& [m, v] : s.table()) table[std::to_string(m)] = v;
      return {{"kind", "explicit-table"}, {"table", table}};
    }
  }
  return {};
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : Error(ErrorKind::Config, join(messages)), messages_(std::move(messages)) {}

ModelFamily parse_model(const nlohmann::json& j) {
  std::vector<std::string> errors;
  auto f = parse_model_into(j, "model", errors);
  if (!errors.empty() || !f) throw ConfigError(errors.empty() ? std::vector<std::string>{"model: invalid"} : errors);
  return *f;
}

nlohmann::json model_to_json(const ModelFamily& f) {
  json alpha;
  switch (f.alpha.kind()) {
    case AlphaLaw::Kind::HeavyTraffic:
      alpha = {{"kind", "heavy-traffic"}, {"a", f.alpha.drift()}};
      break;
    case AlphaLaw::Kind::TwoPointShifted:
      alpha = {{"kind", "two-point-shifted"},
               {"values", f.alpha.base_values()},
               {"probs", f.alpha.base_probabilities()},
               {"shift", f.alpha.shift()}};
      break;
    case AlphaLaw::Kind::FiniteDiscrete:
      alpha = {{"kind", "finite-discrete"}, {"values", f.alpha.base_values()}, {"probs", f.alpha.base_probabilities()}};
      break;
  }
  json noise;
  switch (f.noise.kind()) {
    case NoiseLaw::Kind::StandardGaussian:
      noise = {{"kind", "standard-gaussian"}, {"dimension", f.noise.dimension()}};
      break;
    case NoiseLaw::Kind::UniformInterval:
      noise = {{"kind", "uniform-interval"}, {"lo", f.noise.parameters()[0]}, {"hi", f.noise.parameters()[1]}};
      break;
    case NoiseLaw::Kind::UniformBox:
      noise = {{"kind", "uniform-box"}, {"half_widths", f.noise.parameters()}};
      break;
    case NoiseLaw::Kind::RademacherProduct:
      noise = {{"kind", "rademacher-product"}, {"dimension", f.noise.dimension()}};
      break;
    case NoiseLaw::Kind::FiniteDiscrete:
      noise = {{"kind", "finite-discrete"}, {"points", f.noise.points()}, {"probs", f.noise.probabilities()}};
      break;
  }
  json region;
  switch (f.region.kind()) {
    case RestartRegion::Kind::Ball:
      region = {{"kind", "ball"}, {"radius", f.region.parameters()[0]}};
      break;
    case RestartRegion::Kind::Interval:
      region = {{"kind", "interval"}, {"lo", f.region.parameters()[0]}, {"hi", f.region.parameters()[1]}};
      break;
    case RestartRegion::Kind::CenteredBox:
      region = {{"kind", "centered-box"}, {"half_widths", f.region.parameters()}};
      break;
  }
  return {{"dimension", f.dimension},
          {"drift", f.drift},
          {"alpha", alpha},
          {"beta", schedule_to_json(f.beta)},
          {"gamma", schedule_to_json(f.gamma)},
          {"noise", noise},
          {"region", region}};
}

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config: malformed JSON: ") + e.what()});
  }
  std::vector<std::string> errors;
  RunConfig cfg;
  Reader r(root, "", errors, {"schema_version", "seed", "model", "run", "limit", "options", "output"});
  if (!r.valid()) throw ConfigError(errors);

  if (const auto v = r.integer("schema_version", 1)) {
    if (*v != 1) r.error("schema_version", "unsupported version " + std::to_string(*v));
    cfg.schema_version = static_cast<int>(*v);
  }
  if (r.has("seed")) {
    const auto& s = r.raw("seed");
    if (s.is_number_unsigned())
      cfg.seed = s.get<std::uint64_t>();
    else if (s.is_number_integer() && s.get<std::int64_t>() >= 0)
      cfg.seed = static_cast<std::uint64_t>(s.get<std::int64_t>());
    else
      r.error("seed", "must be a nonnegative integer");
  }
  if (r.has("model")) {
    cfg.model = parse_model_into(r.raw("model"), "model", errors);
    if (cfg.model) {
      cfg.model_echo = model_to_json(*cfg.model);
      if (r.raw("model").contains("preset")) cfg.model_echo["preset"] = r.raw("model")["preset"];
    }
  }
  if (r.has("run")) {
    Reader run(r.raw("run"), "run", errors,
               {"m", "m_grid", "samples", "burn_in", "horizon", "replicas", "thin", "cap", "mode", "chain"});
    if (run.valid()) {
      cfg.run.m = run.integer("m", 1);
      if (run.has("m_grid")) {
        const auto& g = run.raw("m_grid");
        bool good = g.is_array() && !g.empty();
        if (good)
          for (const auto& v : g) good = good && v.is_number_integer() && v.get<std::int64_t>() >= 1;
        if (good)
          for (const auto& v : g) cfg.run.m_grid.push_back(v.get<std::int64_t>());
        else
          run.error("m_grid", "must be a nonempty array of integers >= 1");
      }
      cfg.run.samples = run.integer("samples", 1);
      cfg.run.burn_in = run.integer("burn_in", 0);
      cfg.run.horizon = run.integer("horizon", 1);
      cfg.run.replicas = run.integer("replicas", 1);
      cfg.run.thin = run.integer("thin", 1);
      cfg.run.cap = run.integer("cap", 1);
      cfg.run.mode = run.string("mode");
      if (cfg.run.mode && *cfg.run.mode != "cycle-pool" && *cfg.run.mode != "long-run")
        run.error("mode", "must be \"cycle-pool\" or \"long-run\"");
      cfg.run.chain = run.string("chain");
      if (cfg.run.chain && *cfg.run.chain != "y" && *cfg.run.chain != "x") run.error("chain", "must be \"y\" or \"x\"");
    }
  }
  if (r.has("limit")) {
    Reader lim(r.raw("limit"), "limit", errors, {"a", "sigma", "mu", "p"});
    if (lim.valid()) {
      LimitSpec spec;
      spec.a = lim.number("a");
      spec.p = lim.number("p");
      if (const auto mu = lim.numbers("mu")) spec.mu = Eigen::Map<const Eigen::VectorXd>(mu->data(), static_cast<Eigen::Index>(mu->size()));
      if (const auto rows = lim.rows("sigma")) {
        const auto n = static_cast<Eigen::Index>(rows->size());
        bool square = true;
        for (const auto& row : *rows) square = square && static_cast<Eigen::Index>(row.size()) == n;
        if (!square) {
          lim.error("sigma", "must be a square matrix");
        } else {
          Eigen::MatrixXd m(n, n);
          for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index k = 0; k < n; ++k) m(i, k) = (*rows)[i][k];
          spec.sigma = m;
        }
      }
      cfg.limit = spec;
    }
  }
  if (r.has("options")) {
    Reader opt(r.raw("options"), "options", errors,
               {"points", "u", "direction", "order", "targets", "alpha", "gamma", "steps", "epsilon", "criteria",
                "grid", "empirical", "tolerance", "budget", "c_max", "scenario"});
    if (opt.valid()) cfg.options = r.raw("options");
  }
  if (r.has("output")) {
    Reader out(r.raw("output"), "output", errors, {"path", "format"});
    if (out.valid()) {
      cfg.output_path = out.string("path");
      if (const auto f = out.string("format")) {
        if (*f != "csv" && *f != "json") out.error("format", "must be \"csv\" or \"json\"");
        cfg.output_format = *f;
      }
    }
  }
  if (!errors.empty()) throw ConfigError(errors);
  return cfg;
}

nlohmann::json RunConfig::echo() const {
  json out{{"schema_version", schema_version}};
  if (seed) out["seed"] = *seed;
  if (model) out["model"] = model_echo;
  json run_echo = json::object();
  if (run.m) run_echo["m"] = *run.m;
  if (!run.m_grid.empty()) run_echo["m_grid"] = run.m_grid;
  if (run.samples) run_echo["samples"] = *run.samples;
  if (run.burn_in) run_echo["burn_in"] = *run.burn_in;
  if (run.horizon) run_echo["horizon"] = *run.horizon;
  if (run.replicas) run_echo["replicas"] = *run.replicas;
  if (run.thin) run_echo["thin"] = *run.thin;
  if (run.cap) run_echo["cap"] = *run.cap;
  if (run.mode) run_echo["mode"] = *run.mode;
  if (run.chain) run_echo["chain"] = *run.chain;
  out["run"] = run_echo;
  if (limit) {
    json lim = json::object();
    if (limit->a) lim["a"] = *limit->a;
    if (limit->p) lim["p"] = *limit->p;
    if (limit->mu) lim["mu"] = std::vector<double>(limit->mu->data(), limit->mu->data() + limit->mu->size());
    if (limit->sigma) {
      json rows = json::array();
      for (Eigen::Index i = 0; i < limit->sigma->rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < limit->sigma->cols(); ++k) row.push_back((*limit->sigma)(i, k));
        rows.push_back(row);
      }
      lim["sigma"] = rows;
    }
    out["limit"] = lim;
  }
  out["options"] = options;
  return out;
}

}  // namespace restartar
