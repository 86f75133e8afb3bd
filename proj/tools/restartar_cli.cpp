#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "restartar/restartar.h"

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kCommands = {"validate",  "simulate-x", "simulate-y", "stationary", "tau",
                                            "limit-cf",  "limit-pdf",  "project",    "moments",    "verify",
                                            "scenario",  "gamma-search", "non-hitting"};

bool parse_direction(const std::string& text, std::vector<double>& out) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  return !out.empty();
}

// Writes every file or none of them.
bool write_outputs(const fs::path& dir, const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<fs::path> written;
  std::error_code ec;
  fs::create_directories(dir, ec);
  bool ok = !ec;
  for (const auto& [name, text] : files) {
    if (!ok) break;
    const fs::path target = dir / name;
    const fs::path tmp = dir / (name + ".partial");
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    out.close();
    if (!out) {
      fs::remove(tmp, ec);
      ok = false;
      break;
    }
    fs::rename(tmp, target, ec);
    if (ec) {
      fs::remove(tmp, ec);
      ok = false;
      break;
    }
    written.push_back(target);
  }
  if (!ok)
    for (const auto& p : written) fs::remove(p, ec);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restarted autoregressive chains: simulation, limit laws and acceptance checks"};
  app.set_version_flag("--version", std::string(rar_version()));

  std::string command;
  std::vector<std::string> positional;
  std::string config_path, output_dir, direction_text, preset;
  std::uint64_t seed = 0;
  int threads = 1;
  std::int64_t m = -1, samples = -1, thin = -1, replicas = -1, horizon = -1;

  app.add_option("command", command, "Subcommand")->required()->check(CLI::IsMember(kCommands));
  app.add_option("args", positional, "Subcommand arguments (scenario name, criterion ids)");
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides the config)");
  auto* output_opt = app.add_option("--output", output_dir, "Output directory (default: output.path or .)");
  app.add_option("--threads", threads, "Worker threads; never changes results")->check(CLI::PositiveNumber);
  app.add_option("--m", m, "Scale parameter m")->check(CLI::PositiveNumber);
  app.add_option("--samples", samples, "Number of samples")->check(CLI::PositiveNumber);
  app.add_option("--direction", direction_text, "Direction v1,v2,...");
  app.add_option("--preset", preset, "Model preset (example-1.1, example-1.2, example-2, no-truncation, gamma-search)");
  app.add_option("--thin", thin, "Thinning stride")->check(CLI::PositiveNumber);
  app.add_option("--replicas", replicas, "Replica count")->check(CLI::PositiveNumber);
  app.add_option("--horizon", horizon, "Simulation horizon")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::string config_text;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    config_text = buf.str();
  }
  std::vector<double> direction;
  if (!direction_text.empty() && !parse_direction(direction_text, direction)) {
    std::cerr << "error: --direction: expected comma-separated numbers\n";
    return 1;
  }

  std::vector<const char*> pos;
  for (const auto& p : positional) pos.push_back(p.c_str());
  rar_command_args args;
  rar_command_args_init(&args);
  args.positional = pos.data();
  args.positional_count = pos.size();
  args.has_seed = seed_opt->count() > 0;
  args.seed = seed;
  args.threads = threads;
  args.m = m;
  args.samples = samples;
  args.thin = thin;
  args.replicas = replicas;
  args.horizon = horizon;
  args.direction = direction.empty() ? nullptr : direction.data();
  args.direction_length = direction.size();
  args.preset = preset.empty() ? nullptr : preset.c_str();

  rar_command_result* result = nullptr;
  if (rar_run_command(command.c_str(), &args, config_path.empty() ? nullptr : config_text.c_str(), &result) != RAR_OK) {
    std::cerr << "error: " << rar_last_error_message() << "\n";
    return 2;
  }
  int code = rar_command_exit_code(result);
  for (std::size_t i = 0; i < rar_command_error_count(result); ++i) std::cerr << "error: " << rar_command_error(result, i) << "\n";

  if (code == 0 || code == 3) {
    fs::path dir = ".";
    if (output_opt->count() > 0) dir = output_dir;
    else if (const char* p = rar_command_output_path(result)) dir = p;
    std::vector<std::pair<std::string, std::string>> files{{"report.json", rar_command_report(result)}};
    for (std::size_t i = 0; i < rar_command_table_count(result); ++i)
      files.emplace_back(rar_command_table_name(result, i), rar_command_table_csv(result, i));
    if (!write_outputs(dir, files)) {
      std::cerr << "error: could not write outputs to " << dir.string() << "\n";
      code = 2;
    } else {
      std::cout << (dir / "report.json").string() << "\n";
      if (code == 3) std::cerr << "verdict: fail\n";
    }
  }
  rar_command_result_destroy(result);
  return code;
}
