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
#ifndef UNOLLM_ENGINE_CARD_H_
#define UNOLLM_ENGINE_CARD_H_

#include <array>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace unollm {

enum class Color : int { kRed = 0, kGreen = 1, kBlue = 2, kYellow = 3, kNone = 4 };

// Digits occupy 0..9 so that Face(d) is the digit d.
enum class Face : int {
  kSkip = 10,
  kReverse = 11,
  kDrawTwo = 12,
  kWild = 13,
  kWildDrawFour = 14,
};

inline constexpr int kNumColors = 4;
inline constexpr int kNumFaces = 15;
inline constexpr int kDeckSize = 108;
inline constexpr int kHandSize = 7;
inline constexpr std::array<Color, kNumColors> kColors = {
    Color::kRed, Color::kGreen, Color::kBlue, Color::kYellow};

inline constexpr Face DigitFace(int d) { return static_cast<Face>(d); }
inline constexpr bool IsWildFace(Face f) {
  return f == Face::kWild || f == Face::kWildDrawFour;
}
inline constexpr bool IsDigitFace(Face f) { return static_cast<int>(f) < 10; }

struct Card {
  Color color = Color::kNone;
  Face face = Face::kWild;

  bool IsWild() const { return IsWildFace(face); }
  auto operator<=>(const Card&) const = default;
};

// Index into the 108-card multiset ordering used for conservation checks:
// 0..59 colored (color * 15 + face, wild faces unused), 60 wild, 61 wild+4.
inline constexpr int CardKind(const Card& c) {
  if (c.face == Face::kWild) return 60;
  if (c.face == Face::kWildDrawFour) return 61;
  return static_cast<int>(c.color) * kNumFaces + static_cast<int>(c.face);
}
inline constexpr int kNumCardKinds = 62;

// The standard deck in a fixed order (shuffled by the engine).
inline std::vector<Card> StandardDeck() {
  std::vector<Card> deck;
  deck.reserve(kDeckSize);
  for (Color c : kColors) {
    deck.push_back({c, DigitFace(0)});
    for (int copy = 0; copy < 2; ++copy) {
      for (int d = 1; d <= 9; ++d) deck.push_back({c, DigitFace(d)});
      deck.push_back({c, Face::kSkip});
      deck.push_back({c, Face::kReverse});
      deck.push_back({c, Face::kDrawTwo});
    }
  }
  for (int i = 0; i < 4; ++i) deck.push_back({Color::kNone, Face::kWild});
  for (int i = 0; i < 4; ++i) deck.push_back({Color::kNone, Face::kWildDrawFour});
  return deck;
}

// Action ids: 0..59 are color-major (r, g, b, y) x face (0..9, skip, reverse,
// draw_2, wild, wild_draw_4); 60 is "draw".
class ActionId {
 public:
  static constexpr int kCount = 61;
  static constexpr int kDrawValue = 60;

  constexpr ActionId() = default;
  constexpr explicit ActionId(int value) : value_(value) {
    if (value < 0 || value >= kCount) throw std::out_of_range("action id out of range");
  }
  static constexpr ActionId Draw() { return ActionId(kDrawValue); }
  static constexpr ActionId Play(Color color, Face face) {
    return ActionId(static_cast<int>(color) * kNumFaces + static_cast<int>(face));
  }

  constexpr int value() const { return value_; }
  constexpr bool IsDraw() const { return value_ == kDrawValue; }
  constexpr Color color() const {
    return IsDraw() ? Color::kNone : static_cast<Color>(value_ / kNumFaces);
  }
  constexpr Face face() const { return static_cast<Face>(value_ % kNumFaces); }
  // The hand card consumed by this play (wilds are undeclared in hand).
  constexpr Card HandCard() const {
    return IsWildFace(face()) ? Card{Color::kNone, face()} : Card{color(), face()};
  }

  constexpr auto operator<=>(const ActionId&) const = default;

 private:
  int value_ = kDrawValue;
};

inline constexpr std::string_view ColorCode(Color c) {
  constexpr std::array<std::string_view, 5> kCodes = {"r", "g", "b", "y", "n"};
  return kCodes[static_cast<int>(c)];
}

inline constexpr std::string_view ColorName(Color c) {
  constexpr std::array<std::string_view, 5> kNames = {"red", "green", "blue",
                                                      "yellow", "none"};
  return kNames[static_cast<int>(c)];
}

inline constexpr std::string_view FaceName(Face f) {
  constexpr std::array<std::string_view, kNumFaces> kNames = {
      "0", "1", "2", "3", "4", "5", "6", "7", "8", "9",
      "skip", "reverse", "draw_2", "wild", "wild_draw_4"};
  return kNames[static_cast<int>(f)];
}

// "r-5", "g-wild", "draw".
inline std::string Shorthand(ActionId a) {
  if (a.IsDraw()) return "draw";
  std::string s(ColorCode(a.color()));
  s += '-';
  s += FaceName(a.face());
  return s;
}

inline std::optional<ActionId> ParseShorthand(std::string_view s) {
  if (s == "draw") return ActionId::Draw();
  if (s.size() < 3 || s[1] != '-') return std::nullopt;
  for (int c = 0; c < kNumColors; ++c) {
    if (s.substr(0, 1) != ColorCode(static_cast<Color>(c))) continue;
    for (int f = 0; f < kNumFaces; ++f) {
      if (s.substr(2) == FaceName(static_cast<Face>(f))) {
        return ActionId::Play(static_cast<Color>(c), static_cast<Face>(f));
      }
    }
  }
  return std::nullopt;
}

}  // namespace unollm

#endif  // UNOLLM_ENGINE_CARD_H_
