// Copyright 2026 The unollm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Command-line front end:
//   uno_harness run <config>
//   uno_harness preset <name> [--games N] [--seed S] [--out DIR] ...
//   uno_harness report <run dir>
//   uno_harness presets

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "unollm/harness/config.h"
#include "unollm/harness/presets.h"
#include "unollm/harness/runner.h"
#include "unollm/stats/report.h"

namespace {

int RunAndReport(const unollm::ExperimentConfig& cfg) {
  std::cerr << "running " << cfg.name << ": " << cfg.games << " games -> " << cfg.output_dir << "\n";
  const auto summary = unollm::RunExperiment(cfg);
  std::cout << unollm::FormatReport(*summary.report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded UNO simulations with language-model players"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<int> run_parallel;
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--parallel", run_parallel, "Override the parallelism cap");

  std::string preset_name;
  std::optional<std::int64_t> games;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> parallel;
  std::optional<std::string> method;
  std::optional<std::string> backend_url;
  std::string model;
  std::string api_key_env;
  int top_logprobs = 20;
  bool print_config = false;
  auto* preset = app.add_subcommand("preset", "Run a built-in experiment preset");
  preset->add_option("name", preset_name, "Preset name (see 'presets')")->required();
  preset->add_option("--games", games, "Number of games");
  preset->add_option("--seed", seed, "Master seed");
  preset->add_option("--out", out, "Output directory");
  preset->add_option("--parallel", parallel, "Games run concurrently");
  preset->add_option("--method", method, "LLM prompting method")
      ->check(CLI::IsMember({"cloze", "counterfactual"}));
  preset->add_option("--backend-url", backend_url,
                     "Completion endpoint base URL; replaces the mock backend");
  preset->add_option("--model", model, "Model name sent to the endpoint");
  preset->add_option("--api-key-env", api_key_env, "Environment variable holding a bearer token");
  preset->add_option("--top-logprobs", top_logprobs, "Alternatives requested per token");
  preset->add_flag("--print-config", print_config, "Print the resolved config and exit");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Summarize a finished run directory");
  report->add_option("run_dir", report_dir, "Run directory")->required();

  auto* list = app.add_subcommand("presets", "List built-in presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto cfg = unollm::LoadConfig(config_path);
      if (run_parallel) cfg.parallelism = *run_parallel;
      return RunAndReport(cfg);
    }
    if (*preset) {
      auto found = unollm::FindPreset(preset_name);
      if (!found) {
        std::cerr << "unknown preset '" << preset_name << "'\n";
        return 2;
      }
      auto cfg = *found;
      if (games) cfg.games = *games;
      if (seed) cfg.master_seed = *seed;
      if (out) cfg.output_dir = *out;
      if (parallel) cfg.parallelism = *parallel;
      for (auto& s : cfg.seats) {
        if (s.kind != unollm::AgentKind::kLlm || !method) continue;
        s.method = *method == "cloze" ? unollm::PromptMethod::kCloze
                                      : unollm::PromptMethod::kCounterfactual;
      }
      if (backend_url) {
        unollm::BackendSpec b;
        b.kind = unollm::BackendKind::kRemote;
        b.remote.base_url = *backend_url;
        b.remote.model = model;
        b.remote.api_key_env = api_key_env;
        b.remote.top_logprobs = top_logprobs;
        cfg.backends["default"] = b;
      }
      unollm::ValidateConfig(cfg);
      if (print_config) {
        std::cout << unollm::SerializeConfig(cfg);
        return 0;
      }
      return RunAndReport(cfg);
    }
    if (*report) {
      const auto r = unollm::SummarizeRun(report_dir);
      unollm::WriteSummaryFiles(r, report_dir);
      std::cout << unollm::FormatReport(r);
      return 0;
    }
    if (*list) {
      for (const auto& p : unollm::Presets()) {
        std::cout << p.name << "\t" << p.num_players << " players, " << p.games
                  << " games, p0=" << p.baseline_p0 << ", tested seat "
                  << unollm::DesignatedSeat(p) << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
