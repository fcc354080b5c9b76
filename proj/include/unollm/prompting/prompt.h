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
#ifndef UNOLLM_PROMPTING_PROMPT_H_
#define UNOLLM_PROMPTING_PROMPT_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "unollm/agents/agent.h"
#include "unollm/engine/card.h"
#include "unollm/engine/game.h"
#include "unollm/prompting/templates.h"

namespace unollm {

inline constexpr std::size_t kMaxLetters = 26;
inline constexpr std::string_view kProposedMovePrefix = "Proposed Move: ";
inline constexpr std::string_view kLegalActionsPrefix = "Legal Actions: ";

// Surface variants scored for the counterfactual answer.
inline const std::vector<std::string>& GoodTokens() {
  static const std::vector<std::string> kTokens = {"good", " good", "Good"};
  return kTokens;
}
inline const std::vector<std::string>& BadTokens() {
  static const std::vector<std::string> kTokens = {"bad", " bad", "Bad"};
  return kTokens;
}

// "r-5" -> "red 5", "g-wild" -> "green wild", "draw" -> "draw".
inline std::string CardText(ActionId a) {
  if (a.IsDraw()) return "draw";
  std::string s(ColorName(a.color()));
  s += ' ';
  s += FaceName(a.face());
  return s;
}

// Hand cards; undeclared wilds render as "wild" / "wild_draw_4".
inline std::string CardText(const Card& c) {
  if (c.IsWild()) return std::string(FaceName(c.face));
  return CardText(ActionId::Play(c.color, c.face));
}

struct RoleSpec {
  RoleVariant variant = RoleVariant::kAutonomous;
  std::optional<int> assisted_seat;
  int own_seat = 0;
};

inline void ValidateRole(const RoleSpec& role) {
  if (role.variant == RoleVariant::kCooperative) {
    if (!role.assisted_seat) throw std::invalid_argument("cooperative role needs an assisted seat");
    if (*role.assisted_seat == role.own_seat) {
      throw std::invalid_argument("assisted seat must differ from own seat");
    }
  }
}

// Letter i names actions[(i + shift) mod n].
class LetterAssignment {
 public:
  LetterAssignment(std::vector<ActionId> actions, int shift)
      : actions_(std::move(actions)), shift_(shift) {
    if (actions_.empty()) throw std::invalid_argument("no actions to label");
    if (actions_.size() > kMaxLetters) throw std::invalid_argument("more than 26 actions");
    if (shift_ < 0 || static_cast<std::size_t>(shift_) >= actions_.size()) {
      throw std::out_of_range("shift out of range");
    }
  }

  int shift() const { return shift_; }
  std::size_t size() const { return actions_.size(); }
  static std::string Letter(std::size_t index) {
    return std::string(1, static_cast<char>('A' + index));
  }
  ActionId ActionAt(std::size_t letter_index) const {
    return actions_[(letter_index + static_cast<std::size_t>(shift_)) % actions_.size()];
  }
  std::size_t LetterIndexOf(ActionId a) const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (ActionAt(i) == a) return i;
    }
    throw std::invalid_argument("action not in assignment: " + Shorthand(a));
  }
  // "A: green 2, B: green 9, C: red skip"
  std::string Labeled() const {
    std::string s;
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) s += ", ";
      s += Letter(i) + ": " + CardText(ActionAt(i));
    }
    return s;
  }

 private:
  std::vector<ActionId> actions_;
  int shift_;
};

// All n cyclic shifts of actions.
inline std::vector<LetterAssignment> CyclicAssignments(const std::vector<ActionId>& actions) {
  std::vector<LetterAssignment> out;
  for (std::size_t k = 0; k < actions.size(); ++k) {
    out.emplace_back(actions, static_cast<int>(k));
  }
  return out;
}

// Individual state-block fields, also exposed as template placeholders.
struct StateFields {
  std::string num_players;
  std::string cards_per_player;
  std::string last_played;
  std::string hand;
  std::string next_player;
  std::string recent_moves;  // one move per line, no trailing newline
  std::string legal_actions;
};

inline StateFields ExtractStateFields(const Observation& obs,
                                      const LetterAssignment* letters) {
  StateFields f;
  f.num_players = std::to_string(obs.num_players) + " (";
  for (int p = 0; p < obs.num_players; ++p) {
    if (p) f.num_players += ", ";
    f.num_players += "Player " + std::to_string(p);
  }
  f.num_players += ")";

  for (int p = 0; p < obs.num_players; ++p) {
    if (p) f.cards_per_player += ", ";
    f.cards_per_player += "Player " + std::to_string(p) + ": " +
                          std::to_string(obs.cards_per_seat[p]);
  }

  if (obs.last_played) {
    f.last_played = CardText(obs.last_played->action);
    f.last_played += obs.last_played->seat
                         ? " (played by Player " + std::to_string(*obs.last_played->seat) + ")"
                         : std::string(" (starting card)");
  } else {
    f.last_played = "none";
  }

  for (std::size_t i = 0; i < obs.own_hand.size(); ++i) {
    if (i) f.hand += ", ";
    f.hand += CardText(obs.own_hand[i]);
  }

  f.next_player = "Player " + std::to_string(obs.next_seat);

  for (std::size_t i = 0; i < obs.recent_moves.size(); ++i) {
    if (i) f.recent_moves += '\n';
    f.recent_moves += "Player " + std::to_string(obs.recent_moves[i].seat) + ": " +
                      CardText(obs.recent_moves[i].action);
  }

  if (letters) {
    f.legal_actions = letters->Labeled();
  } else {
    for (std::size_t i = 0; i < obs.legal.size(); ++i) {
      if (i) f.legal_actions += ", ";
      f.legal_actions += CardText(obs.legal[i]);
    }
  }
  return f;
}

// The "Current Game State" block. letters == nullptr lists legal actions
// without labels.
inline std::string BuildStateBlock(const Observation& obs,
                                   const LetterAssignment* letters = nullptr) {
  const StateFields f = ExtractStateFields(obs, letters);
  std::string s = "Current Game State\n";
  s += "Number of Players:\n" + f.num_players + "\n";
  s += "Number of Cards per Player:\n" + f.cards_per_player + "\n";
  s += "Last Played Card:\n" + f.last_played + "\n";
  s += "Your Hand:\n" + f.hand + "\n";
  s += "Next Player: " + f.next_player + "\n";
  s += "Recent Moves (last 5 cards played):\n";
  if (!f.recent_moves.empty()) s += f.recent_moves + "\n";
  s += std::string(kLegalActionsPrefix) + f.legal_actions;
  return s;
}

struct PromptBundle {
  std::vector<std::string> texts;
  std::vector<std::string> candidate_tokens;
  // Cloze: assignments[k] labels texts[k]. Counterfactual: actions[i] is the
  // move proposed in texts[i].
  std::vector<LetterAssignment> assignments;
  std::vector<ActionId> actions;
};

namespace internal {

inline std::map<std::string, std::string> PlaceholderValues(
    const Observation& obs, const RoleSpec& role, const LetterAssignment* letters) {
  const StateFields f = ExtractStateFields(obs, letters);
  std::map<std::string, std::string> v;
  v["SELF"] = std::to_string(role.own_seat);
  v["ASSISTED"] = role.assisted_seat ? std::to_string(*role.assisted_seat) : "";
  v["STATE_BLOCK"] = BuildStateBlock(obs, letters);
  v["NUM_PLAYERS"] = f.num_players;
  v["CARDS_PER_PLAYER"] = f.cards_per_player;
  v["LAST_PLAYED"] = f.last_played;
  v["HAND"] = f.hand;
  v["NEXT_PLAYER"] = f.next_player;
  v["RECENT_MOVES"] = f.recent_moves;
  v["LEGAL_ACTIONS"] = f.legal_actions;
  v["LETTERS"] = "";
  v["PROPOSED_MOVE"] = "";
  return v;
}

}  // namespace internal

inline PromptBundle BuildClozePrompts(const Observation& obs, const RoleSpec& role,
                                      const TemplateSet& templates = TemplateSet::Default()) {
  if (obs.legal.empty()) throw std::invalid_argument("cloze prompt needs legal actions");
  ValidateRole(role);
  PromptBundle b;
  b.assignments = CyclicAssignments(obs.legal);
  const std::string& tmpl = templates.Get(PromptMethod::kCloze, role.variant);
  std::string letter_list;
  for (std::size_t i = 0; i < obs.legal.size(); ++i) {
    if (i) letter_list += ", ";
    letter_list += LetterAssignment::Letter(i);
    b.candidate_tokens.push_back(LetterAssignment::Letter(i));
  }
  for (const auto& a : b.assignments) {
    auto values = internal::PlaceholderValues(obs, role, &a);
    values["LETTERS"] = letter_list;
    b.texts.push_back(RenderTemplate(tmpl, values));
  }
  return b;
}

inline PromptBundle BuildCounterfactualPrompts(
    const Observation& obs, const RoleSpec& role,
    const TemplateSet& templates = TemplateSet::Default()) {
  if (obs.legal.empty()) throw std::invalid_argument("counterfactual prompt needs legal actions");
  ValidateRole(role);
  PromptBundle b;
  const std::string& tmpl = templates.Get(PromptMethod::kCounterfactual, role.variant);
  auto values = internal::PlaceholderValues(obs, role, nullptr);
  for (ActionId a : obs.legal) {
    values["PROPOSED_MOVE"] = CardText(a);
    b.texts.push_back(RenderTemplate(tmpl, values));
    b.actions.push_back(a);
  }
  b.candidate_tokens = GoodTokens();
  b.candidate_tokens.insert(b.candidate_tokens.end(), BadTokens().begin(), BadTokens().end());
  return b;
}

}  // namespace unollm

#endif  // UNOLLM_PROMPTING_PROMPT_H_
