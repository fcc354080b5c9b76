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
#ifndef UNOLLM_AGENTS_LLM_AGENT_H_
#define UNOLLM_AGENTS_LLM_AGENT_H_

#include <string>
#include <vector>

#include "unollm/agents/agent.h"
#include "unollm/backend/backend.h"
#include "unollm/prompting/prompt.h"
#include "unollm/prompting/templates.h"
#include "unollm/scoring/scoring.h"

namespace unollm {

// Plays a seat by scoring prompts with a language-model backend. A single
// legal action is played without querying. BackendError propagates to the
// caller.
class LlmAgent final : public Agent {
 public:
  LlmAgent(AgentSpec spec, int seat, Backend& backend, const TemplateSet& templates)
      : spec_(std::move(spec)), backend_(backend), templates_(templates) {
    role_.variant = spec_.role;
    role_.assisted_seat = spec_.assisted_seat;
    role_.own_seat = seat;
    ValidateRole(role_);
  }

  Decision Act(const Observation& obs, Rng&) override {
    if (obs.legal.size() == 1) {
      const ActionId a = ForcedMove(obs.legal);
      return {a, "forced", {TurnRow{.action = a, .chosen = true}}};
    }
    return spec_.method == PromptMethod::kCloze ? ActCloze(obs) : ActCounterfactual(obs);
  }

 private:
  Decision ActCloze(const Observation& obs) {
    const PromptBundle bundle = BuildClozePrompts(obs, role_, templates_);
    std::vector<TokenDistribution> dists;
    dists.reserve(bundle.texts.size());
    for (const auto& text : bundle.texts) {
      dists.push_back(backend_.Score(text, bundle.candidate_tokens));
    }
    const ClozeResult result = ClozeSelect(obs.legal, dists, bundle.assignments);

    Decision d;
    d.action = result.chosen;
    d.method = "cloze";
    d.missing_tokens = result.missing_tokens;
    for (std::size_t k = 0; k < bundle.assignments.size(); ++k) {
      const LetterAssignment& asg = bundle.assignments[k];
      for (std::size_t letter = 0; letter < asg.size(); ++letter) {
        const ActionId a = asg.ActionAt(letter);
        double cumulative = 0.0;
        for (const auto& row : result.table) {
          if (row.action == a) cumulative = row.cumulative;
        }
        const std::string token = LetterAssignment::Letter(letter);
        d.rows.push_back({asg.shift(), token, dists[k].Find(token).value_or(0.0), a, cumulative,
                          a == result.chosen});
      }
    }
    return d;
  }

  Decision ActCounterfactual(const Observation& obs) {
    const PromptBundle bundle = BuildCounterfactualPrompts(obs, role_, templates_);
    std::vector<Differential> diffs;
    for (std::size_t i = 0; i < bundle.texts.size(); ++i) {
      diffs.push_back(
          MakeDifferential(bundle.actions[i], backend_.Score(bundle.texts[i], bundle.candidate_tokens)));
    }
    const CounterfactualResult result = CounterfactualSelect(obs.legal, diffs);

    Decision d;
    d.action = result.chosen;
    d.method = "counterfactual";
    for (std::size_t i = 0; i < result.table.size(); ++i) {
      const Differential& df = result.table[i];
      const bool chosen = df.action == result.chosen;
      d.rows.push_back({static_cast<int>(i), "good", df.p_good, df.action, df.diff, chosen});
      d.rows.push_back({static_cast<int>(i), "bad", df.p_bad, df.action, df.diff, chosen});
    }
    return d;
  }

  AgentSpec spec_;
  RoleSpec role_;
  Backend& backend_;
  const TemplateSet& templates_;
};

}  // namespace unollm

#endif  // UNOLLM_AGENTS_LLM_AGENT_H_
