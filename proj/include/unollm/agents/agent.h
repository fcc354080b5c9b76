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
#ifndef UNOLLM_AGENTS_AGENT_H_
#define UNOLLM_AGENTS_AGENT_H_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unollm/engine/card.h"
#include "unollm/engine/game.h"
#include "unollm/util/rng.h"

namespace unollm {

enum class AgentKind { kRandom, kRule, kLlm };
enum class PromptMethod { kCloze, kCounterfactual };
enum class RoleVariant { kAutonomous, kCooperative };

inline std::string ToString(AgentKind k) {
  switch (k) {
    case AgentKind::kRandom: return "random";
    case AgentKind::kRule: return "rule";
    case AgentKind::kLlm: return "llm";
  }
  return "?";
}
inline std::string ToString(PromptMethod m) {
  return m == PromptMethod::kCloze ? "cloze" : "counterfactual";
}
inline std::string ToString(RoleVariant r) {
  return r == RoleVariant::kAutonomous ? "autonomous" : "cooperative";
}

struct AgentSpec {
  AgentKind kind = AgentKind::kRandom;
  // The fields below only matter for kLlm.
  PromptMethod method = PromptMethod::kCloze;
  RoleVariant role = RoleVariant::kAutonomous;
  std::optional<int> assisted_seat;
  std::string backend = "default";

  bool operator==(const AgentSpec&) const = default;
};

inline void ValidateAgentSpec(const AgentSpec& spec, int own_seat, int num_players) {
  if (spec.kind != AgentKind::kLlm) return;
  if (spec.role == RoleVariant::kCooperative) {
    if (!spec.assisted_seat) {
      throw std::invalid_argument("cooperative agent needs an assisted seat");
    }
    if (*spec.assisted_seat == own_seat) {
      throw std::invalid_argument("assisted seat must differ from own seat");
    }
    if (*spec.assisted_seat < 0 || *spec.assisted_seat >= num_players) {
      throw std::invalid_argument("assisted seat out of range");
    }
  } else if (spec.assisted_seat) {
    throw std::invalid_argument("autonomous agent cannot have an assisted seat");
  }
}

// One logged line of a decision. Random and rule agents emit a single row
// with only action/chosen set.
struct TurnRow {
  std::optional<int> shift;
  std::string letter;
  std::optional<double> token_prob;
  ActionId action;
  std::optional<double> cumulative;
  bool chosen = false;
};

struct Decision {
  ActionId action;
  std::string method;
  std::vector<TurnRow> rows;
  bool fallback = false;
  int missing_tokens = 0;
};

class Agent {
 public:
  virtual ~Agent() = default;
  // rng is owned by the game loop and is private to this seat.
  virtual Decision Act(const Observation& obs, Rng& rng) = 0;
};

inline ActionId RandomAct(const Observation& obs, Rng& rng) {
  if (obs.legal.empty()) throw std::invalid_argument("no legal actions");
  return obs.legal[UniformIndex(rng, obs.legal.size())];
}

namespace internal {

inline std::array<int, kNumColors> ColorCounts(const std::vector<Card>& hand) {
  std::array<int, kNumColors> counts{};
  for (const Card& c : hand) {
    if (c.color != Color::kNone) ++counts[static_cast<int>(c.color)];
  }
  return counts;
}

}  // namespace internal

// Majority-color heuristic:
//   1. a non-wild play in the legal color most common in hand (ties to the
//      earlier of r, g, b, y), lowest id within that color;
//   2. otherwise a wild declaring the most common hand color;
//   3. otherwise draw.
inline ActionId RuleAct(const Observation& obs) {
  if (obs.legal.empty()) throw std::invalid_argument("no legal actions");
  const auto counts = internal::ColorCounts(obs.own_hand);

  std::optional<ActionId> best;
  for (ActionId a : obs.legal) {
    if (a.IsDraw() || IsWildFace(a.face())) continue;
    // legal is ascending, so the first hit per color is its lowest id and
    // strict > keeps the earlier color on ties.
    if (!best || counts[static_cast<int>(a.color())] >
                     counts[static_cast<int>(best->color())]) {
      best = a;
    }
  }
  if (best) return *best;

  int majority = 0;
  for (int c = 1; c < kNumColors; ++c) {
    if (counts[c] > counts[majority]) majority = c;
  }
  for (ActionId a : obs.legal) {
    if (!a.IsDraw() && IsWildFace(a.face()) &&
        a.color() == static_cast<Color>(majority)) {
      return a;
    }
  }
  return ActionId::Draw();
}

class RandomAgent final : public Agent {
 public:
  Decision Act(const Observation& obs, Rng& rng) override {
    ActionId a = RandomAct(obs, rng);
    return {a, "random", {TurnRow{.action = a, .chosen = true}}};
  }
};

class RuleAgent final : public Agent {
 public:
  Decision Act(const Observation& obs, Rng&) override {
    ActionId a = RuleAct(obs);
    return {a, "rule", {TurnRow{.action = a, .chosen = true}}};
  }
};

}  // namespace unollm

#endif  // UNOLLM_AGENTS_AGENT_H_
