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
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"
#include "unollm/agents/agent.h"
#include "unollm/engine/card.h"
#include "unollm/engine/game.h"

namespace unollm {
namespace {

using testing::A;
using testing::Actions;
using testing::C;
using testing::ConservesDeck;
using testing::MakeState;

// Independent scan: every (hand card, rule clause) pair.
std::vector<ActionId> BruteForceLegal(const std::vector<Card>& hand, const Target& t) {
  std::set<int> ids;
  for (const Card& card : hand) {
    const bool wild = card.face == Face::kWild || card.face == Face::kWildDrawFour;
    if (wild) {
      for (int c = 0; c < 4; ++c) ids.insert(c * 15 + static_cast<int>(card.face));
      continue;
    }
    const int id = static_cast<int>(card.color) * 15 + static_cast<int>(card.face);
    if (card.color == t.color) ids.insert(id);
    if (card.face == t.face) ids.insert(id);
  }
  std::vector<ActionId> out;
  for (int id : ids) out.emplace_back(id);
  if (out.empty()) out.push_back(ActionId::Draw());
  return out;
}

TEST(CardTest, DeckComposition) {
  const auto deck = StandardDeck();
  ASSERT_EQ(deck.size(), 108u);
  const auto counts = testing::KindCounts(deck);
  for (Color c : kColors) {
    EXPECT_EQ(counts[CardKind({c, DigitFace(0)})], 1);
    for (int d = 1; d <= 9; ++d) EXPECT_EQ(counts[CardKind({c, DigitFace(d)})], 2);
    EXPECT_EQ(counts[CardKind({c, Face::kSkip})], 2);
    EXPECT_EQ(counts[CardKind({c, Face::kReverse})], 2);
    EXPECT_EQ(counts[CardKind({c, Face::kDrawTwo})], 2);
  }
  EXPECT_EQ(counts[60], 4);
  EXPECT_EQ(counts[61], 4);
}

TEST(CardTest, ShorthandIsBijective) {
  std::set<std::string> seen;
  for (int id = 0; id < ActionId::kCount; ++id) {
    const std::string s = Shorthand(ActionId(id));
    EXPECT_TRUE(seen.insert(s).second) << s;
    ASSERT_TRUE(ParseShorthand(s).has_value()) << s;
    EXPECT_EQ(ParseShorthand(s)->value(), id);
  }
  EXPECT_EQ(Shorthand(ActionId(0)), "r-0");
  EXPECT_EQ(Shorthand(ActionId(14)), "r-wild_draw_4");
  EXPECT_EQ(Shorthand(ActionId(15)), "g-0");
  EXPECT_EQ(Shorthand(ActionId(59)), "y-wild_draw_4");
  EXPECT_EQ(Shorthand(ActionId(60)), "draw");
  EXPECT_EQ(A("r-skip").value(), 10);
  EXPECT_EQ(A("g-draw_2").value(), 27);
  EXPECT_FALSE(ParseShorthand("x-5"));
  EXPECT_FALSE(ParseShorthand("r-10"));
  EXPECT_FALSE(ParseShorthand("r5"));
  EXPECT_THROW(ActionId(61), std::out_of_range);
}

TEST(NewGameTest, DealsSevenEachAndFlipsStarter) {
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    const GameState s = NewGame(3, seed);
    int dealt = 0;
    for (const auto& h : s.hands) {
      EXPECT_EQ(h.size(), 7u);
      dealt += static_cast<int>(h.size());
    }
    EXPECT_EQ(dealt, 21);
    EXPECT_EQ(s.draw_pile.size() + s.discard_pile.size(), 87u);
    if (s.discard_pile.size() == 1) EXPECT_EQ(s.draw_pile.size(), 86u);
    EXPECT_EQ(s.current_seat, 0);
    EXPECT_EQ(s.direction, 1);
    EXPECT_EQ(s.turn_count, 0);
    EXPECT_TRUE(s.history.empty());
    EXPECT_TRUE(ConservesDeck(s));
  }
}

TEST(NewGameTest, RejectsPlayerCountOutOfRange) {
  EXPECT_THROW(NewGame(1, 0), std::invalid_argument);
  EXPECT_THROW(NewGame(11, 0), std::invalid_argument);
  EXPECT_NO_THROW(NewGame(2, 0));
  EXPECT_NO_THROW(NewGame(10, 0));
}

TEST(NewGameTest, SameSeedSameState) {
  const GameState a = NewGame(2, 42);
  const GameState b = NewGame(2, 42);
  EXPECT_EQ(a, b);
  EXPECT_EQ(StateDigest(a), StateDigest(b));
  EXPECT_NE(StateDigest(a), StateDigest(NewGame(2, 43)));
}

TEST(NewGameTest, StarterNeverWildOverTenThousandSeeds) {
  int burned_games = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const GameState s = NewGame(3, DeriveSeed(7, seed));
    ASSERT_FALSE(s.discard_pile.back().IsWild()) << "seed " << seed;
    ASSERT_NE(s.target.color, Color::kNone);
    for (std::size_t i = 0; i + 1 < s.discard_pile.size(); ++i) {
      ASSERT_TRUE(s.discard_pile[i].IsWild()) << "burned card must be wild";
    }
    burned_games += s.discard_pile.size() > 1;
  }
  // 8/87 of first flips are wild; the burn path must actually be exercised.
  EXPECT_GT(burned_games, 0);
}

TEST(LegalActionsTest, GameStateSampleHand) {
  GameState s = MakeState({{"r-3", "b-4", "y-8"},
                           {"b-1", "b-2", "b-3", "b-4", "b-5"},
                           {"r-1", "g-2", "y-1", "g-9", "y-7", "r-skip", "y-5"}},
                          {"g-skip"}, {Color::kGreen, Face::kSkip}, 2);
  EXPECT_EQ(LegalActions(s), Actions({"r-skip", "g-2", "g-9"}));
}

TEST(LegalActionsTest, NoMatchMeansDraw) {
  GameState s = MakeState({{"b-3"}, {"g-1"}}, {"r-5"}, {Color::kRed, DigitFace(5)});
  EXPECT_EQ(LegalActions(s), std::vector<ActionId>{ActionId::Draw()});
}

TEST(LegalActionsTest, WildExpandsToFourColors) {
  for (int c = 0; c < 4; ++c) {
    for (int f = 0; f < 13; ++f) {
      GameState s = MakeState({{"wild"}, {"g-1"}}, {}, {static_cast<Color>(c), static_cast<Face>(f)});
      EXPECT_EQ(LegalActions(s), Actions({"r-wild", "g-wild", "b-wild", "y-wild"}));
    }
  }
  GameState s = MakeState({{"wild_draw_4", "b-7"}, {"g-1"}}, {}, {Color::kRed, DigitFace(5)});
  EXPECT_EQ(LegalActions(s),
            Actions({"r-wild_draw_4", "g-wild_draw_4", "b-wild_draw_4", "y-wild_draw_4"}));
}

TEST(LegalActionsTest, DuplicateCardsYieldOneAction) {
  GameState s = MakeState({{"r-5", "r-5", "g-5"}, {"g-1"}}, {}, {Color::kRed, DigitFace(1)});
  EXPECT_EQ(LegalActions(s), Actions({"r-5"}));
}

TEST(LegalActionsTest, ThrowsOnTerminalState) {
  GameState s = MakeState({{}, {"g-1"}}, {"r-5"}, {Color::kRed, DigitFace(5)});
  EXPECT_THROW(LegalActions(s), GameError);
}

TEST(StepTest, SkipAdvancesTwoSeats) {
  GameState s = MakeState({{"r-skip", "r-1"}, {"g-1"}, {"g-2"}}, {"r-5"}, {Color::kRed, DigitFace(5)});
  ApplyAction(s, A("r-skip"));
  EXPECT_EQ(s.current_seat, 2);
  EXPECT_EQ(s.target, (Target{Color::kRed, Face::kSkip}));
  EXPECT_EQ(s.turn_count, 1);
  ASSERT_EQ(s.history.size(), 1u);
  EXPECT_EQ(s.history[0], (Move{0, A("r-skip")}));
}

TEST(StepTest, ReverseWithTwoPlayersActsAsSkip) {
  GameState s = MakeState({{"r-reverse", "r-1"}, {"g-1"}}, {"r-5"}, {Color::kRed, DigitFace(5)});
  ApplyAction(s, A("r-reverse"));
  EXPECT_EQ(s.current_seat, 0);
  EXPECT_EQ(s.direction, -1);
}

TEST(StepTest, ReverseWithThreePlayersTurnsBack) {
  GameState s = MakeState({{"r-1"}, {"r-reverse", "b-1"}, {"g-2"}}, {"r-5"},
                          {Color::kRed, DigitFace(5)}, 1);
  ApplyAction(s, A("r-reverse"));
  EXPECT_EQ(s.direction, -1);
  EXPECT_EQ(s.current_seat, 0);
}

TEST(StepTest, DrawTwoHitsNextSeat) {
  GameState s = MakeState({{"r-1"}, {"g-draw_2", "b-1"}, {"y-2"}}, {"g-5"},
                          {Color::kGreen, DigitFace(5)}, 1);
  ApplyAction(s, A("g-draw_2"));
  EXPECT_EQ(s.hands[2].size(), 3u);
  EXPECT_EQ(s.current_seat, 0);
  EXPECT_TRUE(ConservesDeck(s));
}

TEST(StepTest, WildDrawFourDeclaresColorAndHitsNextSeat) {
  GameState s = MakeState({{"wild_draw_4", "r-1"}, {"g-1"}, {"y-2"}}, {"b-5"},
                          {Color::kBlue, DigitFace(5)});
  ApplyAction(s, A("y-wild_draw_4"));
  EXPECT_EQ(s.target, (Target{Color::kYellow, Face::kWildDrawFour}));
  EXPECT_EQ(s.hands[1].size(), 5u);
  EXPECT_EQ(s.current_seat, 2);
  // The wild goes to the discard pile undeclared.
  EXPECT_EQ(s.discard_pile.back(), C("wild_draw_4"));
}

TEST(StepTest, WildSetsDeclaredColor) {
  GameState s = MakeState({{"wild", "r-1"}, {"g-1"}}, {"b-5"}, {Color::kBlue, DigitFace(5)});
  ApplyAction(s, A("g-wild"));
  EXPECT_EQ(s.target, (Target{Color::kGreen, Face::kWild}));
  EXPECT_EQ(s.current_seat, 1);
  EXPECT_EQ(LegalActions(s), Actions({"g-1"}));
}

TEST(StepTest, DrawTakesOneCardAndEndsTurn) {
  GameState s = MakeState({{"b-3"}, {"g-1"}}, {"r-5"}, {Color::kRed, DigitFace(5)});
  const Card top = s.draw_pile.back();
  ApplyAction(s, ActionId::Draw());
  ASSERT_EQ(s.hands[0].size(), 2u);
  EXPECT_EQ(s.hands[0].back(), top);
  EXPECT_EQ(s.current_seat, 1);
  EXPECT_EQ(s.history.back(), (Move{0, ActionId::Draw()}));
  EXPECT_FALSE(s.last_play.has_value());
}

TEST(StepTest, IllegalActionRejectedAndStateUnchanged) {
  GameState s = MakeState({{"b-3", "r-1"}, {"g-1"}}, {"r-5"}, {Color::kRed, DigitFace(5)});
  const GameState before = s;
  EXPECT_THROW(ApplyAction(s, A("b-3")), GameError);
  EXPECT_THROW(ApplyAction(s, ActionId::Draw()), GameError);
  EXPECT_THROW(ApplyAction(s, A("r-2")), GameError);
  EXPECT_EQ(s, before);
}

TEST(StepTest, EmptyDrawPileReshufflesDiscardBelowTop) {
  GameState s = MakeState({{"b-3"}, {"g-1"}}, {"r-1", "r-2", "r-3", "wild", "r-5"},
                          {Color::kRed, DigitFace(5)});
  // Park the draw pile in seat 1's hand so the reshuffle is forced.
  s.hands[1].insert(s.hands[1].end(), s.draw_pile.begin(), s.draw_pile.end());
  s.draw_pile.clear();
  ApplyAction(s, ActionId::Draw());
  EXPECT_EQ(s.hands[0].size(), 2u);
  EXPECT_EQ(s.discard_pile, std::vector<Card>{C("r-5")});
  EXPECT_EQ(s.draw_pile.size(), 3u);
  EXPECT_TRUE(ConservesDeck(s));
}

TEST(StepTest, ForcedDrawSkippedWhenNothingLeft) {
  GameState s = MakeState({{"r-draw_2", "r-1"}, {"g-1"}}, {"r-5"}, {Color::kRed, DigitFace(5)});
  s.hands[1].insert(s.hands[1].end(), s.draw_pile.begin(), s.draw_pile.end());
  s.draw_pile.clear();
  const std::size_t before = s.hands[1].size();
  ApplyAction(s, A("r-draw_2"));
  // Only r-5 was below the new top, so exactly one card could be drawn.
  EXPECT_EQ(s.hands[1].size(), before + 1);
  EXPECT_EQ(s.current_seat, 0);
  EXPECT_TRUE(ConservesDeck(s));
}

TEST(ObserveTest, GameStateSampleFields) {
  GameState s = MakeState({{"r-3", "b-4", "y-8"},
                           {"b-1", "b-2", "b-3", "b-4", "b-5"},
                           {"r-1", "g-2", "y-1", "g-9", "y-7", "r-skip", "y-5"}},
                          {"y-3", "wild", "g-draw_2", "g-skip"}, {Color::kGreen, Face::kSkip}, 2, -1);
  s.history = {{0, ActionId::Draw()}, {2, A("y-3")}, {1, A("g-wild")}, {0, A("g-draw_2")},
               {1, A("g-skip")}};
  s.last_play = Move{1, A("g-skip")};
  const Observation o = Observe(s, 2);
  EXPECT_EQ(o.num_players, 3);
  EXPECT_EQ(o.cards_per_seat, (std::vector<int>{3, 5, 7}));
  ASSERT_TRUE(o.last_played.has_value());
  EXPECT_EQ(o.last_played->action, A("g-skip"));
  EXPECT_EQ(o.last_played->seat, 1);
  EXPECT_EQ(o.own_hand, s.hands[2]);
  EXPECT_EQ(o.next_seat, 1);
  EXPECT_EQ(o.recent_moves, s.history);
  EXPECT_EQ(o.legal, Actions({"r-skip", "g-2", "g-9"}));
}

TEST(ObserveTest, FreshGameShowsStarter) {
  const GameState s = NewGame(3, 5);
  const Observation o = Observe(s, 0);
  EXPECT_TRUE(o.recent_moves.empty());
  ASSERT_TRUE(o.last_played.has_value());
  EXPECT_FALSE(o.last_played->seat.has_value());
  EXPECT_EQ(o.last_played->action.HandCard(), s.discard_pile.back());
  EXPECT_EQ(o.next_seat, 1);
  EXPECT_THROW(Observe(s, 3), std::out_of_range);
}

TEST(ObserveTest, RecentMovesWindowAndOwnHand) {
  GameState s = NewGame(4, 11);
  Rng rng(3);
  for (int step = 0; step < 12 && !IsTerminal(s); ++step) {
    for (int seat = 0; seat < 4; ++seat) {
      const Observation o = Observe(s, seat);
      EXPECT_EQ(o.own_hand, s.hands[seat]);
      EXPECT_EQ(o.recent_moves.size(), std::min<std::size_t>(5, s.history.size()));
      if (!o.recent_moves.empty()) EXPECT_EQ(o.recent_moves.back(), s.history.back());
      EXPECT_TRUE(std::is_sorted(o.legal.begin(), o.legal.end()));
      EXPECT_FALSE(o.legal.empty());
    }
    ApplyAction(s, RandomAct(Observe(s, s.current_seat), rng));
  }
}

TEST(TerminalTest, WinnerPayoffs) {
  GameState s = MakeState({{"r-1", "r-2"}, {"r-9"}, {"g-2"}}, {"r-5"}, {Color::kRed, DigitFace(5)}, 1);
  EXPECT_FALSE(IsTerminal(s));
  EXPECT_THROW(Payoffs(s), GameError);
  ApplyAction(s, A("r-9"));
  ASSERT_TRUE(IsTerminal(s));
  EXPECT_EQ(Winner(s), 1);
  const GameResult r = Payoffs(s);
  EXPECT_EQ(r.winner, 1);
  EXPECT_EQ(r.payoffs, (std::vector<double>{-1, 1, -1}));
  EXPECT_FALSE(r.terminated_by_cap);
  EXPECT_EQ(r.turns, 1);
}

TEST(TerminalTest, CapGivesZeroPayoffs) {
  GameState s = NewGame(3, 1, /*max_turns=*/4);
  Rng rng(1);
  while (!IsTerminal(s)) ApplyAction(s, RandomAct(Observe(s, s.current_seat), rng));
  const GameResult r = Payoffs(s);
  EXPECT_FALSE(r.winner.has_value());
  EXPECT_TRUE(r.terminated_by_cap);
  EXPECT_EQ(r.payoffs, (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(r.turns, 4);
}

TEST(TerminalTest, RandomGamesFinishBeforeCap) {
  int capped = 0;
  for (int g = 0; g < 1000; ++g) {
    GameState s = NewGame(2 + g % 4, DeriveSeed(100, g), 3000);
    Rng rng(DeriveSeed(200, g));
    while (!IsTerminal(s)) ApplyAction(s, RandomAct(Observe(s, s.current_seat), rng));
    capped += !Winner(s).has_value();
  }
  EXPECT_EQ(capped, 0);
}

TEST(EnginePropertyTest, CardConservationOverRandomSteps) {
  std::int64_t steps = 0;
  int violations = 0;
  for (int g = 0; steps < 100000; ++g) {
    GameState s = NewGame(2 + g % 9, DeriveSeed(300, g));
    Rng rng(DeriveSeed(301, g));
    while (!IsTerminal(s)) {
      ApplyAction(s, RandomAct(Observe(s, s.current_seat), rng));
      ++steps;
      violations += !ConservesDeck(s);
      ASSERT_NE(s.target.color, Color::kNone);
      ASSERT_GE(s.current_seat, 0);
      ASSERT_LT(s.current_seat, s.num_players);
    }
  }
  EXPECT_EQ(violations, 0);
}

TEST(EnginePropertyTest, LegalActionsMatchBruteForce) {
  int checked = 0;
  for (int g = 0; checked < 10000; ++g) {
    GameState s = NewGame(2 + g % 5, DeriveSeed(400, g));
    Rng rng(DeriveSeed(401, g));
    while (!IsTerminal(s) && checked < 10000) {
      const auto legal = LegalActions(s);
      ASSERT_EQ(legal, BruteForceLegal(s.hands[s.current_seat], s.target));
      ++checked;
      ApplyAction(s, legal[UniformIndex(rng, legal.size())]);
    }
  }
}

TEST(EnginePropertyTest, SameSeedAndActionsGiveSameDigest) {
  for (int g = 0; g < 20; ++g) {
    GameState a = NewGame(3, DeriveSeed(500, g));
    Rng rng(g);
    std::vector<ActionId> actions;
    while (!IsTerminal(a)) {
      actions.push_back(RandomAct(Observe(a, a.current_seat), rng));
      ApplyAction(a, actions.back());
    }
    GameState b = NewGame(3, DeriveSeed(500, g));
    for (ActionId act : actions) ApplyAction(b, act);
    EXPECT_EQ(StateDigest(a), StateDigest(b));
    EXPECT_EQ(a, b);
  }
}

TEST(EnginePropertyTest, FirstSeatBeatsLastSeatWithRandomPlay) {
  for (int n : {2, 3}) {
    std::vector<int> wins(n);
    for (int g = 0; g < 10000; ++g) {
      GameState s = NewGame(n, DeriveSeed(600 + n, g));
      Rng rng(DeriveSeed(700 + n, g));
      while (!IsTerminal(s)) ApplyAction(s, RandomAct(Observe(s, s.current_seat), rng));
      if (auto w = Winner(s)) ++wins[*w];
    }
    EXPECT_GT(wins.front(), wins.back()) << n << " players";
  }
}

}  // namespace
}  // namespace unollm
