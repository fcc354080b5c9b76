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
#ifndef UNOLLM_HARNESS_PRESETS_H_
#define UNOLLM_HARNESS_PRESETS_H_

#include <optional>
#include <string>
#include <vector>

#include "unollm/harness/config.h"

namespace unollm {

// Offline stand-in for a model: a first-letter bias of the kind rotation is
// meant to cancel. Swap the [backend] section for a remote one to run a real
// model.
inline BackendSpec DefaultMockBackend() {
  BackendSpec b;
  b.name = "default";
  b.kind = BackendKind::kMock;
  b.mock.script = MockScript::kPositionBiased;
  b.mock.weights = {{"A", 0.6}, {"good", 0.5}, {"bad", 0.3}};
  return b;
}

namespace internal {

inline ExperimentConfig Baseline(const std::string& name, std::vector<AgentKind> kinds,
                                 std::int64_t games, double p0, int test_seat) {
  ExperimentConfig c;
  c.name = name;
  c.num_players = static_cast<int>(kinds.size());
  for (AgentKind k : kinds) c.seats.push_back(AgentSpec{.kind = k});
  c.games = games;
  c.master_seed = 1;
  c.baseline_p0 = p0;
  c.test_seat = test_seat;
  c.output_dir = "runs/" + name;
  c.log_turns = TurnLogging::kNone;
  return c;
}

}  // namespace internal

// The experiment set:
//   e1   random vs random, 1v1                          seat 0 vs 0.5
//   e2   rule vs rule, 1v1                              seat 0 vs 0.5
//   e3a  three random seats                             seat 0 vs 1/3
//   e3b  three rule seats                               seat 0 vs 1/3
//   e4   rule, rule, random; 100,000 games; the unassisted baseline for seat 1
//   e5a  random vs LLM (LLM second), autonomous         seat 1 vs 0.4896
//   e5b  rule, rule, LLM assisting seat 1               seat 1 vs 0.3500
inline std::vector<ExperimentConfig> Presets() {
  using K = AgentKind;
  std::vector<ExperimentConfig> out;
  out.push_back(internal::Baseline("e1", {K::kRandom, K::kRandom}, 10000, 0.5, 0));
  out.push_back(internal::Baseline("e2", {K::kRule, K::kRule}, 10000, 0.5, 0));
  out.push_back(internal::Baseline("e3a", {K::kRandom, K::kRandom, K::kRandom}, 10000, 1.0 / 3.0, 0));
  out.push_back(internal::Baseline("e3b", {K::kRule, K::kRule, K::kRule}, 10000, 1.0 / 3.0, 0));
  out.push_back(internal::Baseline("e4", {K::kRule, K::kRule, K::kRandom}, 100000, 1.0 / 3.0, 1));

  ExperimentConfig e5a = internal::Baseline("e5a", {K::kRandom, K::kLlm}, 10000, 0.4896, 1);
  e5a.seats[1].method = PromptMethod::kCloze;
  e5a.backends["default"] = DefaultMockBackend();
  e5a.log_turns = TurnLogging::kLlm;
  out.push_back(e5a);

  ExperimentConfig e5b = internal::Baseline("e5b", {K::kRule, K::kRule, K::kLlm}, 10000, 0.35, 1);
  e5b.test_seat.reset();
  e5b.assisted_seat = 1;
  e5b.seats[2].method = PromptMethod::kCloze;
  e5b.seats[2].role = RoleVariant::kCooperative;
  e5b.seats[2].assisted_seat = 1;
  e5b.backends["default"] = DefaultMockBackend();
  e5b.log_turns = TurnLogging::kLlm;
  out.push_back(e5b);
  return out;
}

inline std::optional<ExperimentConfig> FindPreset(const std::string& name) {
  for (auto& p : Presets()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

}  // namespace unollm

#endif  // UNOLLM_HARNESS_PRESETS_H_
