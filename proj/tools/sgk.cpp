#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sgk/sgk.h"

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for Lie supergroups as Harish-Chandra pairs"};
  app.footer(std::string("Commands:\n") + sgk_command_help() +
             "\nPrints PASS|FAIL lines and a JSON summary. Exit status: 0 if no FAIL, 1 if any FAIL, 2 on input errors.");

  sgk_options opts;
  sgk_options_init(&opts);
  std::string command, out_path;
  std::vector<std::string> inputs;
  bool allow_invalid = false, timing = false;

  app.add_option("command", command, "Suite to run")->required();
  app.add_option("inputs", inputs, "Definition files");
  app.add_option("--degree", opts.degree, "Degree bound (default depends on the command)")->check(CLI::PositiveNumber);
  app.add_option("--closure-depth", opts.closure_depth, "Sample closure depth: 0 base, 1 adds e, 2 adds inverses and products")
      ->check(CLI::Range(0, 2));
  app.add_option("--seed", opts.seed, "Seed for randomized property cases");
  app.add_option("--pairs", opts.pairs, "Product pairs for coset-check")->check(CLI::PositiveNumber);
  app.add_flag("--allow-invalid", allow_invalid, "Load algebras that fail Jacobi (mutation fixtures)");
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");
  app.add_flag("--timing", timing, "Record elapsed seconds in the summary (otherwise null)");

  CLI11_PARSE(app, argc, argv);
  opts.allow_invalid = allow_invalid ? 1 : 0;

  std::vector<const char*> in;
  for (const auto& s : inputs) in.push_back(s.c_str());

  auto start = std::chrono::steady_clock::now();
  sgk_report* rep = nullptr;
  sgk_status st = sgk_run(command.c_str(), in.data(), in.size(), &opts, &rep);
  if (st != SGK_OK) {
    std::cerr << "sgk: " << sgk_status_name(st) << ": " << sgk_last_error() << "\n";
    return 2;
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string text = sgk_report_text(rep);
  std::string summary = sgk_report_summary(rep, timing ? elapsed : -1.0);
  bool failed = sgk_report_fail_count(rep) > 0;
  sgk_report_free(rep);

  if (out_path.empty()) {
    std::cout << text << summary << "\n";
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "sgk: cannot write '" << out_path << "'\n";
      return 2;
    }
    f << text << summary << "\n";
    std::cout << summary << "\n";
  }
  return failed ? 1 : 0;
}
