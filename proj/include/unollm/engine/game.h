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
#ifndef UNOLLM_ENGINE_GAME_H_
#define UNOLLM_ENGINE_GAME_H_

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "unollm/engine/card.h"
#include "unollm/util/hash.h"
#include "unollm/util/rng.h"

namespace unollm {

inline constexpr int kMinPlayers = 2;
inline constexpr int kMaxPlayers = 10;
inline constexpr int kDefaultMaxTurns = 3000;
inline constexpr int kRecentMovesWindow = 5;

class GameError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Move {
  int seat = 0;
  ActionId action;
  bool operator==(const Move&) const = default;
};

// Effective top card. Color is the declared color after a wild.
struct Target {
  Color color = Color::kNone;
  Face face = Face::kWild;
  bool operator==(const Target&) const = default;
};

// Full hidden state. Piles are stacks: back() is the top card.
struct GameState {
  int num_players = 0;
  std::vector<std::vector<Card>> hands;
  std::vector<Card> draw_pile;
  std::vector<Card> discard_pile;
  Target target;
  // Play that produced the target; empty while the starter is on top.
  std::optional<Move> last_play;
  int current_seat = 0;
  int direction = 1;
  int turn_count = 0;
  int max_turns = kDefaultMaxTurns;
  std::vector<Move> history;
  Rng rng;

  bool operator==(const GameState&) const = default;
};

struct LastPlayed {
  ActionId action;
  std::optional<int> seat;  // empty for the starter card
  bool operator==(const LastPlayed&) const = default;
};

// What one seat is allowed to see.
struct Observation {
  int num_players = 0;
  int seat = 0;
  std::vector<int> cards_per_seat;
  std::optional<LastPlayed> last_played;
  std::vector<Card> own_hand;
  int next_seat = 0;
  std::vector<Move> recent_moves;  // oldest first
  std::vector<ActionId> legal;     // ascending

  bool operator==(const Observation&) const = default;
};

struct GameResult {
  std::optional<int> winner;
  std::vector<double> payoffs;
  int turns = 0;
  bool terminated_by_cap = false;
};

inline int NextSeat(int seat, int direction, int num_players) {
  return ((seat + direction) % num_players + num_players) % num_players;
}

namespace internal {

inline void ReshuffleDiscard(GameState& s) {
  if (s.discard_pile.size() <= 1) return;
  Card top = s.discard_pile.back();
  s.discard_pile.pop_back();
  s.draw_pile.insert(s.draw_pile.end(), s.discard_pile.begin(),
                     s.discard_pile.end());
  s.discard_pile.assign(1, top);
  Shuffle(s.draw_pile, s.rng);
}

// Draws up to count cards; stops silently once both piles are exhausted.
inline void DrawCards(GameState& s, int seat, int count) {
  for (int i = 0; i < count; ++i) {
    if (s.draw_pile.empty()) ReshuffleDiscard(s);
    if (s.draw_pile.empty()) return;
    s.hands[seat].push_back(s.draw_pile.back());
    s.draw_pile.pop_back();
  }
}

inline bool Matches(const Card& card, const Target& target) {
  return card.IsWild() || card.color == target.color ||
         card.face == target.face;
}

inline std::vector<ActionId> LegalFor(const std::vector<Card>& hand,
                                      const Target& target) {
  std::array<bool, ActionId::kCount> legal{};
  bool any = false;
  for (const Card& card : hand) {
    if (!Matches(card, target)) continue;
    any = true;
    if (card.IsWild()) {
      for (Color c : kColors) legal[ActionId::Play(c, card.face).value()] = true;
    } else {
      legal[ActionId::Play(card.color, card.face).value()] = true;
    }
  }
  std::vector<ActionId> out;
  if (!any) {
    out.push_back(ActionId::Draw());
    return out;
  }
  for (int i = 0; i < ActionId::kDrawValue; ++i) {
    if (legal[i]) out.emplace_back(i);
  }
  return out;
}

}  // namespace internal

// Deals a fresh game. Seat 0 acts first; the starter is the first non-wild
// card flipped, with any flipped wilds left beneath it. The starter's action
// effect is not applied.
inline GameState NewGame(int num_players, std::uint64_t seed,
                         int max_turns = kDefaultMaxTurns) {
  if (num_players < kMinPlayers || num_players > kMaxPlayers) {
    throw std::invalid_argument("num_players must be in [2, 10], got " +
                                std::to_string(num_players));
  }
  if (max_turns < 1) throw std::invalid_argument("max_turns must be >= 1");
  GameState s;
  s.num_players = num_players;
  s.max_turns = max_turns;
  s.rng.seed(seed);
  s.draw_pile = StandardDeck();
  Shuffle(s.draw_pile, s.rng);
  s.hands.assign(num_players, {});
  for (int round = 0; round < kHandSize; ++round) {
    for (int seat = 0; seat < num_players; ++seat) {
      s.hands[seat].push_back(s.draw_pile.back());
      s.draw_pile.pop_back();
    }
  }
  // 108 - 70 leaves 38 cards at ten seats, more than the 8 wilds.
  do {
    s.discard_pile.push_back(s.draw_pile.back());
    s.draw_pile.pop_back();
  } while (s.discard_pile.back().IsWild());
  s.target = {s.discard_pile.back().color, s.discard_pile.back().face};
  return s;
}

inline std::optional<int> Winner(const GameState& s) {
  for (int seat = 0; seat < s.num_players; ++seat) {
    if (s.hands[seat].empty()) return seat;
  }
  return std::nullopt;
}

inline bool IsTerminal(const GameState& s) {
  return Winner(s).has_value() || s.turn_count >= s.max_turns;
}

inline std::vector<ActionId> LegalActions(const GameState& s) {
  if (IsTerminal(s)) throw GameError("legal actions requested on terminal state");
  return internal::LegalFor(s.hands[s.current_seat], s.target);
}

// Applies action for the current seat. Throws GameError and leaves the state
// untouched if the action is not legal.
inline void ApplyAction(GameState& s, ActionId action) {
  const auto legal = LegalActions(s);
  if (!std::binary_search(legal.begin(), legal.end(), action)) {
    throw GameError("illegal action " + Shorthand(action) + " for seat " +
                    std::to_string(s.current_seat));
  }
  const int seat = s.current_seat;
  const int n = s.num_players;
  s.history.push_back({seat, action});
  ++s.turn_count;

  if (action.IsDraw()) {
    internal::DrawCards(s, seat, 1);
    s.current_seat = NextSeat(seat, s.direction, n);
    return;
  }

  auto& hand = s.hands[seat];
  hand.erase(std::find(hand.begin(), hand.end(), action.HandCard()));
  s.discard_pile.push_back(action.HandCard());
  s.target = {action.color(), action.face()};
  s.last_play = Move{seat, action};
  if (hand.empty()) return;

  const int next = NextSeat(seat, s.direction, n);
  switch (action.face()) {
    case Face::kSkip:
      s.current_seat = NextSeat(next, s.direction, n);
      break;
    case Face::kReverse:
      s.direction = -s.direction;
      s.current_seat = n == 2 ? seat : NextSeat(seat, s.direction, n);
      break;
    case Face::kDrawTwo:
      internal::DrawCards(s, next, 2);
      s.current_seat = NextSeat(next, s.direction, n);
      break;
    case Face::kWildDrawFour:
      internal::DrawCards(s, next, 4);
      s.current_seat = NextSeat(next, s.direction, n);
      break;
    default:
      s.current_seat = next;
      break;
  }
}

inline GameState Step(GameState s, ActionId action) {
  ApplyAction(s, action);
  return s;
}

inline Observation Observe(const GameState& s, int seat) {
  if (seat < 0 || seat >= s.num_players) {
    throw std::out_of_range("seat out of range");
  }
  Observation o;
  o.num_players = s.num_players;
  o.seat = seat;
  for (const auto& hand : s.hands) o.cards_per_seat.push_back(static_cast<int>(hand.size()));
  if (s.last_play) {
    o.last_played = LastPlayed{s.last_play->action, s.last_play->seat};
  } else if (!IsWildFace(s.target.face)) {
    o.last_played = LastPlayed{ActionId::Play(s.target.color, s.target.face), std::nullopt};
  }
  o.own_hand = s.hands[seat];
  o.next_seat = NextSeat(seat, s.direction, s.num_players);
  const std::size_t k = std::min<std::size_t>(kRecentMovesWindow, s.history.size());
  o.recent_moves.assign(s.history.end() - static_cast<std::ptrdiff_t>(k), s.history.end());
  o.legal = internal::LegalFor(s.hands[seat], s.target);
  return o;
}

// Raw outcome: winner +1, others -1; cap with no winner gives all zeros.
inline GameResult Payoffs(const GameState& s) {
  if (!IsTerminal(s)) throw GameError("payoffs requested on non-terminal state");
  GameResult r;
  r.winner = Winner(s);
  r.turns = s.turn_count;
  r.terminated_by_cap = !r.winner.has_value();
  r.payoffs.assign(s.num_players, r.winner ? -1.0 : 0.0);
  if (r.winner) r.payoffs[*r.winner] = 1.0;
  return r;
}

// Digest over every field including generator state.
inline std::uint64_t StateDigest(const GameState& s) {
  Fnv1a h;
  auto card = [&](const Card& c) { h.Update(static_cast<std::int64_t>(CardKind(c))); };
  h.Update(std::int64_t{s.num_players});
  for (const auto& hand : s.hands) {
    h.Update(static_cast<std::int64_t>(hand.size()));
    for (const Card& c : hand) card(c);
  }
  h.Update(static_cast<std::int64_t>(s.draw_pile.size()));
  for (const Card& c : s.draw_pile) card(c);
  h.Update(static_cast<std::int64_t>(s.discard_pile.size()));
  for (const Card& c : s.discard_pile) card(c);
  h.Update(std::int64_t{static_cast<int>(s.target.color)});
  h.Update(std::int64_t{static_cast<int>(s.target.face)});
  h.Update(std::int64_t{s.current_seat});
  h.Update(std::int64_t{s.direction});
  h.Update(std::int64_t{s.turn_count});
  for (const Move& m : s.history) {
    h.Update(std::int64_t{m.seat});
    h.Update(std::int64_t{m.action.value()});
  }
  std::ostringstream rng_text;
  rng_text << s.rng;
  h.Update(rng_text.str());
  return h.Digest();
}

}  // namespace unollm

#endif  // UNOLLM_ENGINE_GAME_H_
