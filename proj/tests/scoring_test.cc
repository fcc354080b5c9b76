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
#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "test_util.h"
#include "unollm/scoring/scoring.h"

namespace unollm {
namespace {

using testing::A;
using testing::Actions;

TokenDistribution Dist(std::vector<std::pair<std::string, double>> rows) {
  TokenDistribution d;
  for (auto& [k, v] : rows) d.probs[k] = v;
  return d;
}

std::vector<ActionId> RandomLegal(std::mt19937_64& gen, std::size_t n) {
  std::vector<int> ids(ActionId::kCount);
  for (int i = 0; i < ActionId::kCount; ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), gen);
  std::vector<ActionId> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(ids[i]);
  std::sort(out.begin(), out.end());
  return out;
}

TEST(ClozeSelectTest, DecisionTraceReplay) {
  // Letter maps as printed: shift k gives letter i to order[(i + k) mod 3].
  const auto order = Actions({"g-2", "g-9", "r-skip"});
  const auto shifts = CyclicAssignments(order);
  ASSERT_EQ(shifts[1].ActionAt(0), A("g-9"));
  ASSERT_EQ(shifts[2].ActionAt(0), A("r-skip"));
  const std::vector<TokenDistribution> dists = {
      Dist({{"A", 0.1103}, {"B", 0.0758}, {"C", 0.6345}}),
      Dist({{"A", 0.0609}, {"B", 0.5780}, {"C", 0.1877}}),
      Dist({{"A", 0.3065}, {"B", 0.3936}, {"C", 0.1278}}),
  };
  const ClozeResult r = ClozeSelect(order, dists, shifts);
  ASSERT_EQ(r.table.size(), 3u);
  EXPECT_NEAR(r.table[0].cumulative, 0.6915, 2e-4);
  EXPECT_NEAR(r.table[1].cumulative, 0.2645, 2e-4);
  EXPECT_NEAR(r.table[2].cumulative, 1.5191, 2e-4);
  EXPECT_NEAR(r.table[0].cumulative, 0.6916, 1e-12);
  EXPECT_NEAR(r.table[2].cumulative, 1.5190, 1e-12);
  EXPECT_EQ(r.chosen, A("r-skip"));
  EXPECT_EQ(r.missing_tokens, 0);

  const std::string trace = FormatClozeTrace(r, shifts);
  EXPECT_NE(trace.find("[Shift 1] Letter B: 0.5780 -> action 'r-skip'"), std::string::npos);
  EXPECT_NE(trace.find("r-skip: 1.5190"), std::string::npos);
  EXPECT_NE(trace.find("-> Selected: r-skip"), std::string::npos);
}

TEST(ClozeSelectTest, UniformTiesGoToLowestId) {
  const auto legal = Actions({"r-skip", "g-2", "g-9"});
  const auto shifts = CyclicAssignments(legal);
  std::vector<TokenDistribution> dists(3, Dist({{"A", 1.0 / 3}, {"B", 1.0 / 3}, {"C", 1.0 / 3}}));
  const ClozeResult r = ClozeSelect(legal, dists, shifts);
  for (const auto& row : r.table) EXPECT_NEAR(row.cumulative, 1.0, 1e-12);
  EXPECT_EQ(r.chosen, A("r-skip"));
}

TEST(ClozeSelectTest, AlwaysAGivesEveryActionExactlyOne) {
  const auto legal = Actions({"r-1", "r-5", "b-3", "y-wild"});
  const auto shifts = CyclicAssignments(legal);
  std::vector<TokenDistribution> dists(4, Dist({{"A", 1}, {"B", 0}, {"C", 0}, {"D", 0}}));
  const ClozeResult r = ClozeSelect(legal, dists, shifts);
  for (const auto& row : r.table) EXPECT_EQ(row.cumulative, 1.0);
  EXPECT_EQ(r.chosen, A("r-1"));
}

TEST(ClozeSelectTest, MissingLettersScoreZeroAndAreCounted) {
  const auto legal = Actions({"r-1", "r-5", "b-3"});
  const auto shifts = CyclicAssignments(legal);
  std::vector<TokenDistribution> dists(3, Dist({{"B", 0.5}}));
  const ClozeResult r = ClozeSelect(legal, dists, shifts);
  EXPECT_EQ(r.missing_tokens, 6);
  for (const auto& row : r.table) EXPECT_DOUBLE_EQ(row.cumulative, 0.5);
}

TEST(ClozeSelectTest, RejectsBadShapes) {
  const auto legal = Actions({"r-1", "r-5"});
  const auto shifts = CyclicAssignments(legal);
  std::vector<TokenDistribution> dists(2);
  EXPECT_THROW(ClozeSelect({A("r-1")}, {TokenDistribution{}}, CyclicAssignments({A("r-1")})),
               std::invalid_argument);
  EXPECT_THROW(ClozeSelect(legal, {TokenDistribution{}}, shifts), std::invalid_argument);
  EXPECT_THROW(ClozeSelect(legal, dists, CyclicAssignments(Actions({"r-1", "r-9"}))),
               std::invalid_argument);
}

TEST(ClozePropertyTest, PositionOnlyBackendIsDebiased) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + gen() % 25;
    const auto legal = RandomLegal(gen, n);
    TokenDistribution d;
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) total += d.probs[LetterAssignment::Letter(i)] = u(gen);
    for (auto& [k, v] : d.probs) v /= total;
    const ClozeResult r = ClozeSelect(legal, std::vector<TokenDistribution>(n, d),
                                      CyclicAssignments(legal));
    for (const auto& row : r.table) {
      ASSERT_NEAR(row.cumulative, r.table[0].cumulative, 1e-9);
      ASSERT_EQ(row.per_shift.size(), n);
    }
    ASSERT_EQ(r.chosen, legal.front());
  }
}

TEST(ClozePropertyTest, ContentDominanceSelectsTarget) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + gen() % 25;
    const auto legal = RandomLegal(gen, n);
    const ActionId target = legal[gen() % n];
    const auto shifts = CyclicAssignments(legal);
    std::vector<TokenDistribution> dists;
    for (const auto& s : shifts) {
      TokenDistribution d;
      for (std::size_t i = 0; i < n; ++i) d.probs[LetterAssignment::Letter(i)] = u(gen);
      d.probs[LetterAssignment::Letter(s.LetterIndexOf(target))] = 0.9;
      dists.push_back(d);
    }
    ASSERT_EQ(ClozeSelect(legal, dists, shifts).chosen, target);
  }
}

TEST(ClozePropertyTest, CumulativeRecomputableFromPerShiftRows) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + gen() % 10;
    const auto legal = RandomLegal(gen, n);
    const auto shifts = CyclicAssignments(legal);
    std::vector<TokenDistribution> dists;
    for (std::size_t k = 0; k < n; ++k) {
      TokenDistribution d;
      for (std::size_t i = 0; i < n; ++i) d.probs[LetterAssignment::Letter(i)] = u(gen) / n;
      dists.push_back(d);
    }
    const ClozeResult r = ClozeSelect(legal, dists, shifts);
    for (const auto& row : r.table) {
      double sum = 0;
      for (std::size_t k = 0; k < n; ++k) {
        ASSERT_EQ(row.per_shift[k].shift, static_cast<int>(k));
        ASSERT_EQ(row.per_shift[k].letter,
                  LetterAssignment::Letter(shifts[k].LetterIndexOf(row.action)));
        ASSERT_EQ(row.per_shift[k].probability, dists[k].probs.at(row.per_shift[k].letter));
        sum += row.per_shift[k].probability;
      }
      ASSERT_EQ(sum, row.cumulative);
    }
  }
}

TEST(CounterfactualTest, ArgmaxAndTies) {
  const auto legal = Actions({"r-skip", "g-2", "g-9"});
  auto diff = [](const char* a, double d) { return Differential{A(a), 0, 0, d}; };
  EXPECT_EQ(CounterfactualSelect(legal, {diff("g-2", 0.10), diff("g-9", -0.20), diff("r-skip", 0.55)})
                .chosen,
            A("r-skip"));
  EXPECT_EQ(CounterfactualSelect(legal, {diff("g-9", 0.3), diff("g-2", 0.3), diff("r-skip", 0.3)})
                .chosen,
            A("r-skip"));
  EXPECT_THROW(CounterfactualSelect({A("g-2")}, {diff("g-2", 0)}), std::invalid_argument);
  EXPECT_THROW(CounterfactualSelect(legal, {diff("g-2", 0)}), std::invalid_argument);
}

TEST(CounterfactualTest, DifferentialSumsSurfaceVariants) {
  const Differential d = MakeDifferential(
      A("g-2"), Dist({{"good", 0.2}, {" good", 0.1}, {"Good", 0.05}, {"bad", 0.3}, {" Bad", 0.9}}));
  EXPECT_NEAR(d.p_good, 0.35, 1e-15);
  EXPECT_NEAR(d.p_bad, 0.3, 1e-15);
  EXPECT_NEAR(d.diff, 0.05, 1e-15);
  EXPECT_EQ(MakeDifferential(A("g-2"), TokenDistribution{}).diff, 0.0);
}

TEST(CounterfactualPropertyTest, ArgmaxInvariances) {
  std::mt19937_64 gen(14);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + gen() % 10;
    const auto legal = RandomLegal(gen, n);
    std::vector<Differential> diffs;
    for (ActionId a : legal) {
      Differential d{a, u(gen), u(gen), 0};
      d.diff = d.p_good - d.p_bad;
      diffs.push_back(d);
    }
    const ActionId base = CounterfactualSelect(legal, diffs).chosen;

    auto shuffled = diffs;
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    ASSERT_EQ(CounterfactualSelect(legal, shuffled).chosen, base);

    auto shifted = diffs;
    const double c = u(gen) - 0.25;
    for (auto& d : shifted) d.diff += c;
    ASSERT_EQ(CounterfactualSelect(legal, shifted).chosen, base);

    auto scaled = diffs;
    const double s = 0.1 + u(gen);
    for (auto& d : scaled) {
      d.p_good *= s;
      d.p_bad *= s;
      d.diff = d.p_good - d.p_bad;
    }
    ASSERT_EQ(CounterfactualSelect(legal, scaled).chosen, base);
  }
}

TEST(ForcedMoveTest, SoleAction) {
  EXPECT_EQ(ForcedMove({ActionId::Draw()}), ActionId::Draw());
  EXPECT_EQ(ForcedMove({A("r-5")}), A("r-5"));
  EXPECT_THROW(ForcedMove({}), std::invalid_argument);
  EXPECT_THROW(ForcedMove(Actions({"r-5", "r-6"})), std::invalid_argument);
}

}  // namespace
}  // namespace unollm
