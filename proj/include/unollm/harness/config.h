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
#ifndef UNOLLM_HARNESS_CONFIG_H_
#define UNOLLM_HARNESS_CONFIG_H_

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "unollm/agents/agent.h"
#include "unollm/backend/backend.h"
#include "unollm/engine/game.h"
#include "unollm/util/csv.h"

namespace unollm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FailurePolicy { kAbortGame, kRandomFallback };
enum class TurnLogging { kNone, kLlm, kAll };

struct ExperimentConfig {
  std::string name = "experiment";
  int num_players = 2;
  std::vector<AgentSpec> seats;
  std::int64_t games = 1;
  std::uint64_t master_seed = 1;
  int max_turns = kDefaultMaxTurns;
  double baseline_p0 = 0.5;
  std::optional<int> assisted_seat;
  // Seat whose win rate is tested against baseline_p0. Defaults to the
  // assisted seat, else the first LLM seat, else seat 0.
  std::optional<int> test_seat;
  std::string output_dir = "runs/experiment";
  std::map<std::string, BackendSpec> backends;
  int parallelism = 1;
  FailurePolicy on_backend_failure = FailurePolicy::kAbortGame;
  int max_attempts_per_game = 20;
  TurnLogging log_turns = TurnLogging::kLlm;
  std::optional<bool> log_queries;  // default: on iff a remote backend is used
  std::string template_dir;         // empty: built-in v1 templates
};

inline int DesignatedSeat(const ExperimentConfig& c) {
  if (c.test_seat) return *c.test_seat;
  if (c.assisted_seat) return *c.assisted_seat;
  for (std::size_t s = 0; s < c.seats.size(); ++s) {
    if (c.seats[s].kind == AgentKind::kLlm) return static_cast<int>(s);
  }
  return 0;
}

inline bool UsesRemoteBackend(const ExperimentConfig& c) {
  for (const auto& seat : c.seats) {
    if (seat.kind != AgentKind::kLlm) continue;
    auto it = c.backends.find(seat.backend);
    if (it != c.backends.end() && it->second.kind == BackendKind::kRemote) return true;
  }
  return false;
}

inline void ValidateConfig(const ExperimentConfig& c) {
  auto fail = [&](const std::string& msg) { throw ConfigError(c.name + ": " + msg); };
  if (c.num_players < kMinPlayers || c.num_players > kMaxPlayers) {
    fail("num_players must be in [2, 10]");
  }
  if (static_cast<int>(c.seats.size()) != c.num_players) fail("need one [seat] section per player");
  if (c.games < 1) fail("games must be >= 1");
  if (c.max_turns < 1) fail("max_turns must be >= 1");
  if (!(c.baseline_p0 > 0.0 && c.baseline_p0 < 1.0)) fail("baseline_p0 must be in (0, 1)");
  if (c.parallelism < 1) fail("parallelism must be >= 1");
  if (c.max_attempts_per_game < 1) fail("max_attempts_per_game must be >= 1");
  auto seat_ok = [&](int s) { return s >= 0 && s < c.num_players; };
  if (c.assisted_seat && !seat_ok(*c.assisted_seat)) fail("assisted_seat out of range");
  if (c.test_seat && !seat_ok(*c.test_seat)) fail("test_seat out of range");
  for (int s = 0; s < c.num_players; ++s) {
    const AgentSpec& a = c.seats[s];
    try {
      ValidateAgentSpec(a, s, c.num_players);
    } catch (const std::invalid_argument& e) {
      fail("seat " + std::to_string(s) + ": " + e.what());
    }
    if (a.kind == AgentKind::kLlm) {
      if (!c.backends.count(a.backend)) fail("seat " + std::to_string(s) + ": unknown backend '" + a.backend + "'");
      if (a.role == RoleVariant::kCooperative && c.assisted_seat && a.assisted_seat != c.assisted_seat) {
        fail("seat " + std::to_string(s) + " assists a different seat than assisted_seat");
      }
    }
  }
}

namespace internal {

inline std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::int64_t ToInt(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  std::int64_t x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return x;
}

inline std::uint64_t ToUint(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  std::uint64_t x = 0;
  try {
    x = std::stoull(v, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || v.front() == '-') {
    throw ConfigError(key + ": expected an unsigned integer, got '" + v + "'");
  }
  return x;
}

inline double ToReal(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(key + ": expected a number, got '" + v + "'");
  return x;
}

inline bool ToBool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

inline void SetBackendKey(BackendSpec& b, const std::string& key, const std::string& v) {
  auto& r = b.remote;
  auto& m = b.mock;
  if (key == "kind") {
    if (v == "remote") b.kind = BackendKind::kRemote;
    else if (v == "mock") b.kind = BackendKind::kMock;
    else throw ConfigError("backend kind must be remote or mock");
  } else if (key == "url") r.base_url = v;
  else if (key == "path") r.path = v;
  else if (key == "model") r.model = v;
  else if (key == "api_key_env") r.api_key_env = v;
  else if (key == "top_logprobs") r.top_logprobs = static_cast<int>(ToInt(key, v));
  else if (key == "timeout_s") r.timeout_s = ToReal(key, v);
  else if (key == "retries") r.retries = static_cast<int>(ToInt(key, v));
  else if (key == "retry_backoff_ms") r.retry_backoff_ms = static_cast<int>(ToInt(key, v));
  else if (key == "max_in_flight") r.max_in_flight = static_cast<int>(ToInt(key, v));
  else if (key == "requests_per_second") r.requests_per_second = ToReal(key, v);
  else if (key == "script") {
    if (v == "position_biased") m.script = MockScript::kPositionBiased;
    else if (v == "content_keyword") m.script = MockScript::kContentKeyword;
    else if (v == "fixed_table") m.script = MockScript::kFixedTable;
    else throw ConfigError("unknown mock script '" + v + "'");
  } else if (key == "weights") m.weights = ParseTokenProbs(v);
  else if (key == "keywords") m.keywords = ParseTokenProbs(v, ';');
  else if (key == "table") {
    m.table.clear();
    std::stringstream rows(v);
    std::string row;
    while (std::getline(rows, row, ';')) {
      if (!Trim(row).empty()) m.table.push_back(ParseTokenProbs(Trim(row)));
    }
  } else if (key == "fail_every") m.fail_every = static_cast<int>(ToInt(key, v));
  else throw ConfigError("unknown backend key '" + key + "'");
}

inline void SetSeatKey(AgentSpec& a, const std::string& key, const std::string& v) {
  if (key == "kind") {
    if (v == "random") a.kind = AgentKind::kRandom;
    else if (v == "rule") a.kind = AgentKind::kRule;
    else if (v == "llm") a.kind = AgentKind::kLlm;
    else throw ConfigError("seat kind must be random, rule or llm");
  } else if (key == "method") {
    if (v == "cloze") a.method = PromptMethod::kCloze;
    else if (v == "counterfactual") a.method = PromptMethod::kCounterfactual;
    else throw ConfigError("method must be cloze or counterfactual");
  } else if (key == "role") {
    if (v == "autonomous") a.role = RoleVariant::kAutonomous;
    else if (v == "cooperative") a.role = RoleVariant::kCooperative;
    else throw ConfigError("role must be autonomous or cooperative");
  } else if (key == "assist") {
    a.assisted_seat = static_cast<int>(ToInt(key, v));
  } else if (key == "backend") {
    a.backend = v;
  } else {
    throw ConfigError("unknown seat key '" + key + "'");
  }
}

inline void SetTopKey(ExperimentConfig& c, const std::string& key, const std::string& v) {
  if (key == "name") c.name = v;
  else if (key == "num_players") c.num_players = static_cast<int>(ToInt(key, v));
  else if (key == "games") c.games = ToInt(key, v);
  else if (key == "master_seed") c.master_seed = ToUint(key, v);
  else if (key == "max_turns") c.max_turns = static_cast<int>(ToInt(key, v));
  else if (key == "baseline_p0") c.baseline_p0 = ToReal(key, v);
  else if (key == "assisted_seat") c.assisted_seat = static_cast<int>(ToInt(key, v));
  else if (key == "test_seat") c.test_seat = static_cast<int>(ToInt(key, v));
  else if (key == "output_dir") c.output_dir = v;
  else if (key == "parallelism") c.parallelism = static_cast<int>(ToInt(key, v));
  else if (key == "max_attempts_per_game") c.max_attempts_per_game = static_cast<int>(ToInt(key, v));
  else if (key == "template_dir") c.template_dir = v;
  else if (key == "log_queries") c.log_queries = ToBool(key, v);
  else if (key == "on_backend_failure") {
    if (v == "abort_game") c.on_backend_failure = FailurePolicy::kAbortGame;
    else if (v == "random_fallback") c.on_backend_failure = FailurePolicy::kRandomFallback;
    else throw ConfigError("on_backend_failure must be abort_game or random_fallback");
  } else if (key == "log_turns") {
    if (v == "none") c.log_turns = TurnLogging::kNone;
    else if (v == "llm") c.log_turns = TurnLogging::kLlm;
    else if (v == "all") c.log_turns = TurnLogging::kAll;
    else throw ConfigError("log_turns must be none, llm or all");
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

inline std::string TokenProbsText(const std::vector<std::pair<std::string, double>>& items,
                                  char sep) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += sep;
    s += items[i].first + ":" + FormatReal(items[i].second, 17);
  }
  return s;
}

}  // namespace internal

// Parses the flat config format:
//
//   # comment
//   name = e5a
//   num_players = 2
//   [backend]            (named "default"; "[backend other]" for more)
//   kind = mock
//   [seat 0]
//   kind = random
//
// Seat sections without an index are numbered in order of appearance.
// When an assisted_seat is given, cooperative seats without an explicit
// "assist" key inherit it.
inline ExperimentConfig ParseConfig(std::istream& in) {
  ExperimentConfig c;
  c.seats.clear();
  enum class Section { kTop, kSeat, kBackend } section = Section::kTop;
  std::map<int, AgentSpec> seats;
  int next_seat = 0;
  int current_seat = 0;
  std::string current_backend;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = internal::Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    try {
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError("unterminated section header");
        std::istringstream hdr(line.substr(1, line.size() - 2));
        std::string kind, arg;
        hdr >> kind >> arg;
        if (kind == "seat") {
          section = Section::kSeat;
          current_seat = arg.empty() ? next_seat : static_cast<int>(internal::ToInt("seat", arg));
          if (seats.count(current_seat)) throw ConfigError("duplicate seat " + std::to_string(current_seat));
          seats[current_seat] = AgentSpec{};
          next_seat = current_seat + 1;
        } else if (kind == "backend") {
          section = Section::kBackend;
          current_backend = arg.empty() ? "default" : arg;
          c.backends[current_backend].name = current_backend;
        } else {
          throw ConfigError("unknown section [" + kind + "]");
        }
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("expected key = value");
      const std::string key = internal::Trim(line.substr(0, eq));
      const std::string value = internal::Trim(line.substr(eq + 1));
      switch (section) {
        case Section::kTop: internal::SetTopKey(c, key, value); break;
        case Section::kSeat: internal::SetSeatKey(seats[current_seat], key, value); break;
        case Section::kBackend: internal::SetBackendKey(c.backends[current_backend], key, value); break;
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  for (int s = 0; s < static_cast<int>(seats.size()); ++s) {
    if (!seats.count(s)) throw ConfigError("seat sections must be numbered 0..n-1");
    AgentSpec a = seats[s];
    if (a.kind == AgentKind::kLlm && a.role == RoleVariant::kCooperative && !a.assisted_seat) {
      a.assisted_seat = c.assisted_seat;
    }
    c.seats.push_back(a);
  }
  ValidateConfig(c);
  return c;
}

inline ExperimentConfig ParseConfigString(const std::string& text) {
  std::istringstream in(text);
  return ParseConfig(in);
}

inline ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return ParseConfig(in);
}

inline std::string SerializeConfig(const ExperimentConfig& c) {
  std::ostringstream o;
  o << "name = " << c.name << "\n";
  o << "num_players = " << c.num_players << "\n";
  o << "games = " << c.games << "\n";
  o << "master_seed = " << c.master_seed << "\n";
  o << "max_turns = " << c.max_turns << "\n";
  o << "baseline_p0 = " << FormatReal(c.baseline_p0, 17) << "\n";
  if (c.assisted_seat) o << "assisted_seat = " << *c.assisted_seat << "\n";
  if (c.test_seat) o << "test_seat = " << *c.test_seat << "\n";
  o << "output_dir = " << c.output_dir << "\n";
  o << "parallelism = " << c.parallelism << "\n";
  o << "on_backend_failure = "
    << (c.on_backend_failure == FailurePolicy::kAbortGame ? "abort_game" : "random_fallback") << "\n";
  o << "max_attempts_per_game = " << c.max_attempts_per_game << "\n";
  o << "log_turns = "
    << (c.log_turns == TurnLogging::kNone ? "none" : c.log_turns == TurnLogging::kLlm ? "llm" : "all")
    << "\n";
  if (c.log_queries) o << "log_queries = " << (*c.log_queries ? "true" : "false") << "\n";
  if (!c.template_dir.empty()) o << "template_dir = " << c.template_dir << "\n";
  for (const auto& [name, b] : c.backends) {
    o << "\n[backend " << name << "]\n";
    if (b.kind == BackendKind::kRemote) {
      const auto& r = b.remote;
      o << "kind = remote\nurl = " << r.base_url << "\npath = " << r.path << "\nmodel = " << r.model
        << "\n";
      if (!r.api_key_env.empty()) o << "api_key_env = " << r.api_key_env << "\n";
      o << "top_logprobs = " << r.top_logprobs << "\ntimeout_s = " << FormatReal(r.timeout_s, 17)
        << "\nretries = " << r.retries << "\nretry_backoff_ms = " << r.retry_backoff_ms
        << "\nmax_in_flight = " << r.max_in_flight
        << "\nrequests_per_second = " << FormatReal(r.requests_per_second, 17) << "\n";
    } else {
      const auto& m = b.mock;
      o << "kind = mock\nscript = "
        << (m.script == MockScript::kPositionBiased   ? "position_biased"
            : m.script == MockScript::kContentKeyword ? "content_keyword"
                                                      : "fixed_table")
        << "\n";
      if (!m.weights.empty()) o << "weights = " << internal::TokenProbsText(m.weights, ',') << "\n";
      if (!m.keywords.empty()) o << "keywords = " << internal::TokenProbsText(m.keywords, ';') << "\n";
      if (!m.table.empty()) {
        o << "table = ";
        for (std::size_t i = 0; i < m.table.size(); ++i) {
          if (i) o << ";";
          o << internal::TokenProbsText(m.table[i], ',');
        }
        o << "\n";
      }
      if (m.fail_every) o << "fail_every = " << m.fail_every << "\n";
    }
  }
  for (int s = 0; s < c.num_players; ++s) {
    const AgentSpec& a = c.seats[s];
    o << "\n[seat " << s << "]\nkind = " << ToString(a.kind) << "\n";
    if (a.kind == AgentKind::kLlm) {
      o << "method = " << ToString(a.method) << "\nrole = " << ToString(a.role) << "\n";
      if (a.assisted_seat) o << "assist = " << *a.assisted_seat << "\n";
      o << "backend = " << a.backend << "\n";
    }
  }
  return o.str();
}

}  // namespace unollm

#endif  // UNOLLM_HARNESS_CONFIG_H_
