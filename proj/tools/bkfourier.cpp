// Copyright 2026 The bkfourier Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// bkfourier: runs the verification suites and writes a report.
//
// Exit status: 0 when no theorem-backed check failed, 1 otherwise, 2 for a
// configuration error, 3 for an I/O error.

#include <iostream>

#include "CLI11.hpp"
#include "bkfourier/report.hpp"

namespace {

int run(int argc, char** argv) {
  CLI::App app{"Exact verification of Braverman-Kazhdan Fourier kernels over finite fields"};
  bkf::CheckConfig cfg;
  cfg.groups = bkf::known_groups();
  bool no_timing = false;
  app.add_option("--groups", cfg.groups, "sl2, pgl2, gl2, gl2-char2, torus, quadform")
      ->delimiter(',');
  app.add_option("--q", cfg.q_list, "field sizes (default: per-group grid)")->delimiter(',');
  app.add_option("--checks", cfg.checks,
                 "kernels, involutivity, extension, pushforward, quadform, gauss, all "
                 "(empty: no checks)")
      ->delimiter(',');
  app.add_option("--format", cfg.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", cfg.out_path, "write the report here instead of stdout");
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--export-tables", cfg.export_dir, "directory for kernel CSV tables");
  app.add_flag("--no-timing", no_timing, "omit wall-clock fields from the report");
  app.add_flag_callback(
      "--version", [] { throw CLI::CallForVersion(bkf::kVersion, 0); }, "print the version");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  std::erase(cfg.checks, std::string{});

  bkf::Report rep;
  try {
    bkf::plan(cfg);
    rep = bkf::run_checks(cfg);
  } catch (const bkf::LimitError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  const std::string text = bkf::emit_report(rep, cfg.format, !no_timing);
  if (cfg.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(cfg.out_path);
    os << text;
    if (!os) {
      std::cerr << "error: cannot write " << cfg.out_path << "\n";
      return 3;
    }
  }
  return rep.theorem_failure() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
}
