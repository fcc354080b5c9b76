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
#ifndef UNOLLM_SCORING_SCORING_H_
#define UNOLLM_SCORING_SCORING_H_

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unollm/engine/card.h"
#include "unollm/prompting/prompt.h"

namespace unollm {

// Scores closer than this are ties and resolve to the lowest action id. Sums
// of the same terms in a different order may differ by a few ulps.
inline constexpr double kTieEpsilon = 1e-12;

// First-token probabilities for the queried candidates. Candidates missing
// from the backend's alternatives are absent from the map.
struct TokenDistribution {
  std::map<std::string, double> probs;

  std::optional<double> Find(const std::string& token) const {
    auto it = probs.find(token);
    if (it == probs.end()) return std::nullopt;
    return it->second;
  }
  double Mass(const std::vector<std::string>& tokens) const {
    double total = 0.0;
    for (const auto& t : tokens) total += Find(t).value_or(0.0);
    return total;
  }
  bool operator==(const TokenDistribution&) const = default;
};

struct ShiftScore {
  int shift = 0;
  std::string letter;
  double probability = 0.0;
};

struct ScoredAction {
  ActionId action;
  std::vector<ShiftScore> per_shift;  // in shift order
  double cumulative = 0.0;
};

struct ClozeResult {
  ActionId chosen;
  std::vector<ScoredAction> table;  // in legal order
  int missing_tokens = 0;
};

struct Differential {
  ActionId action;
  double p_good = 0.0;
  double p_bad = 0.0;
  double diff = 0.0;
};

struct CounterfactualResult {
  ActionId chosen;
  std::vector<Differential> table;  // in input order
};

namespace internal {

// Index of the best score; ties (within kTieEpsilon) go to the lowest id.
template <typename Items, typename ScoreFn>
std::size_t ArgmaxLowestId(const Items& items, ScoreFn score) {
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return items[a].action < items[b].action;
  });
  std::size_t best = order.front();
  for (std::size_t i : order) {
    if (score(items[i]) > score(items[best]) + kTieEpsilon) best = i;
  }
  return best;
}

}  // namespace internal

// Sums, for every legal action, the probability of the letter it holds in
// each shift, then picks the largest total.
inline ClozeResult ClozeSelect(const std::vector<ActionId>& legal,
                               const std::vector<TokenDistribution>& shift_dists,
                               const std::vector<LetterAssignment>& assignments) {
  const std::size_t n = legal.size();
  if (n < 2) throw std::invalid_argument("cloze selection needs at least 2 actions");
  if (shift_dists.size() != n || assignments.size() != n) {
    throw std::invalid_argument("cloze selection needs one distribution and assignment per shift");
  }
  ClozeResult r;
  for (ActionId a : legal) r.table.push_back({a, {}, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    const LetterAssignment& asg = assignments[k];
    if (asg.size() != n) throw std::invalid_argument("assignment size differs from legal set");
    for (std::size_t letter = 0; letter < n; ++letter) {
      if (!shift_dists[k].Find(LetterAssignment::Letter(letter))) ++r.missing_tokens;
    }
    for (ScoredAction& row : r.table) {
      const std::size_t letter = asg.LetterIndexOf(row.action);
      const std::string token = LetterAssignment::Letter(letter);
      const double p = shift_dists[k].Find(token).value_or(0.0);
      row.per_shift.push_back({asg.shift(), token, p});
      row.cumulative += p;
    }
  }
  r.chosen = r.table[internal::ArgmaxLowestId(
                         r.table, [](const ScoredAction& s) { return s.cumulative; })]
                 .action;
  return r;
}

inline Differential MakeDifferential(ActionId action, const TokenDistribution& dist) {
  Differential d;
  d.action = action;
  d.p_good = dist.Mass(GoodTokens());
  d.p_bad = dist.Mass(BadTokens());
  d.diff = d.p_good - d.p_bad;
  return d;
}

inline CounterfactualResult CounterfactualSelect(const std::vector<ActionId>& legal,
                                                 const std::vector<Differential>& diffs) {
  if (legal.size() < 2) {
    throw std::invalid_argument("counterfactual selection needs at least 2 actions");
  }
  if (diffs.size() != legal.size()) {
    throw std::invalid_argument("counterfactual selection needs one differential per action");
  }
  CounterfactualResult r;
  r.table = diffs;
  r.chosen = r.table[internal::ArgmaxLowestId(
                         r.table, [](const Differential& d) { return d.diff; })]
                 .action;
  return r;
}

// The only legal action; no backend query is made.
inline ActionId ForcedMove(const std::vector<ActionId>& legal) {
  if (legal.size() != 1) {
    throw std::invalid_argument("forced move needs exactly one legal action");
  }
  return legal.front();
}

// Human-readable trace in the style of
//   [Shift 0] Letter A: 0.1103 -> action 'g-2'
//   === CUMULATIVE SCORES ===
inline std::string FormatClozeTrace(const ClozeResult& r,
                                    const std::vector<LetterAssignment>& assignments) {
  std::string out;
  char buf[128];
  for (std::size_t k = 0; k < assignments.size(); ++k) {
    if (k) out += "-------------------------------------------------\n";
    for (std::size_t letter = 0; letter < assignments[k].size(); ++letter) {
      const ActionId a = assignments[k].ActionAt(letter);
      double p = 0.0;
      for (const auto& row : r.table) {
        if (row.action == a) p = row.per_shift[k].probability;
      }
      std::snprintf(buf, sizeof(buf), "[Shift %d] Letter %s: %.4f -> action '%s'\n",
                    assignments[k].shift(), LetterAssignment::Letter(letter).c_str(), p,
                    Shorthand(a).c_str());
      out += buf;
    }
  }
  out += "=== CUMULATIVE SCORES ===\n";
  for (const auto& row : r.table) {
    std::snprintf(buf, sizeof(buf), "%s: %.4f\n", Shorthand(row.action).c_str(), row.cumulative);
    out += buf;
  }
  out += "-> Selected: " + Shorthand(r.chosen) + "\n";
  return out;
}

}  // namespace unollm

#endif  // UNOLLM_SCORING_SCORING_H_
