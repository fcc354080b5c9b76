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
#ifndef UNOLLM_BACKEND_MOCK_H_
#define UNOLLM_BACKEND_MOCK_H_

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unollm/backend/backend.h"
#include "unollm/prompting/prompt.h"

namespace unollm {

namespace internal {

inline bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// True if keyword occurs in text with no word character on either side, so
// "green wild" does not match "green wild_draw_4".
inline bool ContainsWord(std::string_view text, std::string_view keyword) {
  if (keyword.empty()) return false;
  for (std::size_t pos = text.find(keyword); pos != std::string_view::npos;
       pos = text.find(keyword, pos + 1)) {
    const bool left = pos == 0 || !IsWordChar(text[pos - 1]) || !IsWordChar(keyword.front());
    const std::size_t end = pos + keyword.size();
    const bool right =
        end == text.size() || !IsWordChar(text[end]) || !IsWordChar(keyword.back());
    if (left && right) return true;
  }
  return false;
}

// Text of the last line starting with prefix, or empty.
inline std::optional<std::string_view> LastLineWithPrefix(std::string_view text,
                                                          std::string_view prefix) {
  std::optional<std::string_view> found;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (line.substr(0, prefix.size()) == prefix) found = line.substr(prefix.size());
    start = end + 1;
  }
  return found;
}

// "A: green 2, B: green 9" -> {("A","green 2"), ("B","green 9")}
inline std::vector<std::pair<std::string, std::string>> ParseLabeledOptions(
    std::string_view line) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  while (start < line.size()) {
    std::size_t end = line.find(", ", start);
    if (end == std::string_view::npos) end = line.size();
    std::string_view item = line.substr(start, end - start);
    const std::size_t colon = item.find(": ");
    if (colon == std::string_view::npos) return {};
    out.emplace_back(std::string(item.substr(0, colon)), std::string(item.substr(colon + 2)));
    start = end + 2;
  }
  return out;
}

// Assigns fixed masses to some candidates and spreads what is left evenly
// over the others.
inline TokenDistribution SpreadRemainder(
    const std::vector<std::string>& candidates,
    const std::vector<std::pair<std::string, double>>& fixed) {
  TokenDistribution d;
  double used = 0.0;
  for (const auto& [token, p] : fixed) {
    if (std::find(candidates.begin(), candidates.end(), token) == candidates.end()) continue;
    if (d.probs.count(token)) continue;
    d.probs[token] = p;
    used += p;
  }
  if (used > 1.0) {
    for (auto& [token, p] : d.probs) p /= used;
    used = 1.0;
  }
  const std::size_t rest = candidates.size() - d.probs.size();
  for (const auto& c : candidates) {
    if (!d.probs.count(c)) d.probs[c] = rest ? (1.0 - used) / static_cast<double>(rest) : 0.0;
  }
  return d;
}

}  // namespace internal

// Deterministic scripted backend. One instance per game keeps fixed-table
// replay and fail_every independent of how games are scheduled.
class MockBackend final : public Backend {
 public:
  explicit MockBackend(MockSettings settings) : settings_(std::move(settings)) {}

 protected:
  TokenDistribution Query(const std::string& prompt, const std::vector<std::string>& candidates,
                          int& retries) override {
    retries = 0;
    const std::int64_t call = calls_++;
    if (settings_.fail_every > 0 && (call + 1) % settings_.fail_every == 0) {
      throw BackendError("scripted mock failure on query " + std::to_string(call + 1));
    }
    switch (settings_.script) {
      case MockScript::kPositionBiased:
        return internal::SpreadRemainder(candidates, settings_.weights);
      case MockScript::kContentKeyword:
        return KeywordScores(prompt, candidates);
      case MockScript::kFixedTable: {
        if (settings_.table.empty()) throw BackendError("fixed_table mock has no rows");
        const auto& row = settings_.table[static_cast<std::size_t>(call) % settings_.table.size()];
        TokenDistribution d;
        for (const auto& [token, p] : row) {
          if (std::find(candidates.begin(), candidates.end(), token) != candidates.end()) {
            d.probs[token] = p;
          }
        }
        return d;
      }
    }
    return {};
  }

 private:
  std::optional<double> KeywordProb(std::string_view text) const {
    for (const auto& [keyword, p] : settings_.keywords) {
      if (internal::ContainsWord(text, keyword)) return p;
    }
    return std::nullopt;
  }

  TokenDistribution KeywordScores(const std::string& prompt,
                                  const std::vector<std::string>& candidates) const {
    // Counterfactual: "good" carries p for a matching proposal, even odds otherwise.
    if (auto move = internal::LastLineWithPrefix(prompt, kProposedMovePrefix)) {
      const double p = KeywordProb(*move).value_or(0.5);
      return internal::SpreadRemainder(candidates, {{"good", p}, {"bad", 1.0 - p}, {" good", 0.0},
                                                    {"Good", 0.0}, {" bad", 0.0}, {"Bad", 0.0}});
    }
    // Cloze: letters whose option text matches share the keyword mass.
    std::vector<std::pair<std::string, double>> fixed;
    if (auto line = internal::LastLineWithPrefix(prompt, kLegalActionsPrefix)) {
      for (const auto& [letter, text] : internal::ParseLabeledOptions(*line)) {
        if (auto p = KeywordProb(text)) fixed.emplace_back(letter, *p);
      }
    }
    return internal::SpreadRemainder(candidates, fixed);
  }

  MockSettings settings_;
  std::int64_t calls_ = 0;
};

}  // namespace unollm

#endif  // UNOLLM_BACKEND_MOCK_H_
