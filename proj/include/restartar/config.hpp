#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "restartar/error.hpp"
#include "restartar/model.hpp"

namespace restartar {

struct RunSettings {
  std::optional<std::int64_t> m;
  std::vector<std::int64_t> m_grid;
  std::optional<std::int64_t> samples;
  std::optional<std::int64_t> burn_in;
  std::optional<std::int64_t> horizon;
  std::optional<std::int64_t> replicas;
  std::optional<std::int64_t> thin;
  std::optional<std::int64_t> cap;
  std::optional<std::string> mode;   // cycle-pool | long-run
  std::optional<std::string> chain;  // y | x
};

struct LimitSpec {
  std::optional<double> a;
  std::optional<Eigen::MatrixXd> sigma;
  std::optional<Eigen::VectorXd> mu;
  std::optional<double> p;
};

struct RunConfig {
  int schema_version = 1;
  std::optional<std::uint64_t> seed;
  std::optional<ModelFamily> model;
  nlohmann::json model_echo;
  RunSettings run;
  std::optional<LimitSpec> limit;
  nlohmann::json options = nlohmann::json::object();
  std::optional<std::string> output_path;
  std::string output_format = "csv";

  /// Canonical echo for reports: everything that affects results, nothing
  /// that does not (output location, thread count).
  [[nodiscard]] nlohmann::json echo() const;
};

/// Config errors carry every field-level message found in one pass.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> messages);
  [[nodiscard]] const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
};

/// Parses and validates a JSON config; unknown keys are rejected. A missing
/// seed is not an error here because the command line may supply it.
RunConfig parse_config(const std::string& text);

/// Model description <-> family.
ModelFamily parse_model(const nlohmann::json& j);
nlohmann::json model_to_json(const ModelFamily& f);

}  // namespace restartar
