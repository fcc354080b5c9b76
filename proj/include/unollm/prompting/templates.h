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


#ifndef UNOLLM_PROMPTING_TEMPLATES_H_
#define UNOLLM_PROMPTING_TEMPLATES_H_

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "unollm/agents/agent.h"
#include "unollm/util/hash.h"

namespace unollm {

// Prompt templates are plain text with {{NAME}} placeholders:
//   SELF, ASSISTED, STATE_BLOCK, NUM_PLAYERS, CARDS_PER_PLAYER, LAST_PLAYED,
//   HAND, NEXT_PLAYER, RECENT_MOVES, LEGAL_ACTIONS, LETTERS, PROPOSED_MOVE.
// One template per (method, role). The v1 set is embedded below and shipped
// verbatim as templates/v1/*.txt.

inline constexpr std::string_view kTemplateVersion = "v1";

inline constexpr std::string_view kClozeAutonomousV1 = R"uno(You are Player {{SELF}} in a game of UNO. Your goal is to win the game.

Rules:
- On your turn, play one card from your hand that matches the last played card by color or by number/symbol, or play a wild card.
- Playing a wild card lets you choose the color that must be matched next.
- skip: the next player loses their turn.
- reverse: the direction of play changes. With two players it works like a skip.
- draw_2: the next player draws 2 cards and loses their turn.
- wild_draw_4: you choose the next color, and the next player draws 4 cards and loses their turn.
- If you cannot play a card, you draw one card and your turn ends.
- The first player to get rid of all of their cards wins the game.

{{STATE_BLOCK}}

Choose the best action for Player {{SELF}} to win. Answer with a single letter ({{LETTERS}}).
Answer:)uno";

inline constexpr std::string_view kClozeCooperativeV1 = R"uno(You are Player {{SELF}} in a game of UNO. You are not trying to win yourself. Your goal is to help Player {{ASSISTED}} win the game, even if you lose.

Rules:
- On your turn, play one card from your hand that matches the last played card by color or by number/symbol, or play a wild card.
- Playing a wild card lets you choose the color that must be matched next.
- skip: the next player loses their turn.
- reverse: the direction of play changes. With two players it works like a skip.
- draw_2: the next player draws 2 cards and loses their turn.
- wild_draw_4: you choose the next color, and the next player draws 4 cards and loses their turn.
- If you cannot play a card, you draw one card and your turn ends.
- The first player to get rid of all of their cards wins the game.

{{STATE_BLOCK}}

Choose the action that best helps Player {{ASSISTED}} win. Answer with a single letter ({{LETTERS}}).
Answer:)uno";

inline constexpr std::string_view kCounterfactualAutonomousV1 = R"uno(You are Player {{SELF}} in a game of UNO. Your goal is to win the game.

Rules:
- On your turn, play one card from your hand that matches the last played card by color or by number/symbol, or play a wild card.
- Playing a wild card lets you choose the color that must be matched next.
- skip: the next player loses their turn.
- reverse: the direction of play changes. With two players it works like a skip.
- draw_2: the next player draws 2 cards and loses their turn.
- wild_draw_4: you choose the next color, and the next player draws 4 cards and loses their turn.
- If you cannot play a card, you draw one card and your turn ends.
- The first player to get rid of all of their cards wins the game.

{{STATE_BLOCK}}

Proposed Move: {{PROPOSED_MOVE}}
Is this a good or bad move for Player {{SELF}} to win? Answer with one word: good or bad.
Answer:)uno";

inline constexpr std::string_view kCounterfactualCooperativeV1 = R"uno(You are Player {{SELF}} in a game of UNO. You are not trying to win yourself. Your goal is to help Player {{ASSISTED}} win the game, even if you lose.

Rules:
- On your turn, play one card from your hand that matches the last played card by color or by number/symbol, or play a wild card.
- Playing a wild card lets you choose the color that must be matched next.
- skip: the next player loses their turn.
- reverse: the direction of play changes. With two players it works like a skip.
- draw_2: the next player draws 2 cards and loses their turn.
- wild_draw_4: you choose the next color, and the next player draws 4 cards and loses their turn.
- If you cannot play a card, you draw one card and your turn ends.
- The first player to get rid of all of their cards wins the game.

{{STATE_BLOCK}}

Proposed Move: {{PROPOSED_MOVE}}
Is this a good or bad move for helping Player {{ASSISTED}} win? Answer with one word: good or bad.
Answer:)uno";

class TemplateSet {
 public:
  static TemplateSet Default() {
    TemplateSet t;
    t.version_ = std::string(kTemplateVersion);
    t.texts_[Key(PromptMethod::kCloze, RoleVariant::kAutonomous)] = kClozeAutonomousV1;
    t.texts_[Key(PromptMethod::kCloze, RoleVariant::kCooperative)] = kClozeCooperativeV1;
    t.texts_[Key(PromptMethod::kCounterfactual, RoleVariant::kAutonomous)] =
        kCounterfactualAutonomousV1;
    t.texts_[Key(PromptMethod::kCounterfactual, RoleVariant::kCooperative)] =
        kCounterfactualCooperativeV1;
    return t;
  }

  // Loads <dir>/<method>_<role>.txt for all four combinations.
  static TemplateSet LoadDirectory(const std::string& dir) {
    TemplateSet t;
    t.version_ = dir;
    for (auto m : {PromptMethod::kCloze, PromptMethod::kCounterfactual}) {
      for (auto r : {RoleVariant::kAutonomous, RoleVariant::kCooperative}) {
        const std::string path = dir + "/" + FileName(m, r);
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open template " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        t.texts_[Key(m, r)] = ss.str();
      }
    }
    return t;
  }

  static std::string FileName(PromptMethod m, RoleVariant r) {
    return ToString(m) + "_" + ToString(r) + ".txt";
  }

  const std::string& Get(PromptMethod m, RoleVariant r) const {
    return texts_.at(Key(m, r));
  }
  const std::string& version() const { return version_; }

  // Fingerprint over all four texts in a fixed order; logged with every run.
  std::uint64_t Hash() const {
    Fnv1a h;
    for (const auto& [key, text] : texts_) {
      h.Update(std::int64_t{key});
      h.Update(static_cast<std::int64_t>(text.size()));
      h.Update(text);
    }
    return h.Digest();
  }

 private:
  static int Key(PromptMethod m, RoleVariant r) {
    return static_cast<int>(m) * 2 + static_cast<int>(r);
  }
  std::string version_;
  std::map<int, std::string> texts_;
};

// Substitutes every {{NAME}}; an unknown or unterminated placeholder throws.
inline std::string RenderTemplate(std::string_view tmpl,
                                  const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tmpl.size() + 1024);
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    std::size_t open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, open - pos));
    std::size_t close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) {
      throw std::invalid_argument("unterminated placeholder in template");
    }
    std::string name(tmpl.substr(open + 2, close - open - 2));
    auto it = values.find(name);
    if (it == values.end()) {
      throw std::invalid_argument("unknown template placeholder {{" + name + "}}");
    }
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

}  // namespace unollm

#endif  // UNOLLM_PROMPTING_TEMPLATES_H_
