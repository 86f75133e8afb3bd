// Acceptance runner: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "restartar/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"restartar acceptance criteria"};
  std::vector<int> ids;
  std::uint64_t seed = 7;
  int threads = 1;
  bool details = false;
  app.add_option("ids", ids, "criteria to run (default all)")->check(CLI::Range(1, restartar::kCriterionCount));
  app.add_option("--seed", seed, "root seed");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--details", details, "print the JSON details of each criterion");
  CLI11_PARSE(app, argc, argv);
  if (ids.empty())
    for (int i = 1; i <= restartar::kCriterionCount; ++i) ids.push_back(i);

  int failed = 0;
  for (int id : ids) {
    const auto start = std::chrono::steady_clock::now();
    restartar::CriterionResult r;
    try {
      r = restartar::run_criterion(id, seed, threads);
    } catch (const std::exception& e) {
      r.id = id;
      r.name = restartar::criterion_name(id);
      r.pass = false;
      r.summary = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d (%s): %s %s [%.1fs]\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL", r.summary.c_str(),
                secs);
    if (details) std::printf("%s\n", r.details.dump(2).c_str());
    std::fflush(stdout);
    failed += !r.pass;
  }
  return failed == 0 ? 0 : 1;
}
