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
#ifndef UNOLLM_STATS_REPORT_H_
#define UNOLLM_STATS_REPORT_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "unollm/harness/config.h"
#include "unollm/stats/ztest.h"
#include "unollm/util/csv.h"

namespace unollm {

class RunDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr char kTurnsHeader[] =
    "game_id,turn,seat,method,shift,letter,token_prob,action,cumulative,chosen,fallback";
inline constexpr char kSummaryHeader[] = "seat,wins,games,win_rate,p0,z,p_value";

inline std::string GamesHeader(int num_players) {
  std::string h = "game_id,winner,turns,capped";
  for (int s = 0; s < num_players; ++s) h += ",seat" + std::to_string(s) + "_payoff";
  return h;
}

struct SeatStats {
  int seat = 0;
  std::int64_t wins = 0;
  double win_rate = 0.0;
};

struct RunReport {
  std::string name;
  int num_players = 0;
  std::int64_t games = 0;
  std::int64_t capped = 0;
  double cap_rate = 0.0;
  std::vector<SeatStats> seats;
  int designated_seat = 0;
  ZTestResult test;
  std::int64_t fallback_turns = 0;
  std::int64_t backend_failures = 0;
  std::int64_t aborted_attempts = 0;
  std::string template_hash;
};

inline std::map<std::string, std::string> ReadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RunDataError("missing run records: cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

// Rebuilds per-seat win rates from games.csv and tests the designated seat.
// Throws RunDataError if records are missing or inconsistent.
inline RunReport SummarizeRun(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  if (!fs::exists(root / "games.csv") || !fs::exists(root / "config.cfg")) {
    throw RunDataError("missing run records in '" + dir + "': need config.cfg and games.csv");
  }
  ExperimentConfig cfg;
  try {
    cfg = LoadConfig((root / "config.cfg").string());
  } catch (const ConfigError& e) {
    throw RunDataError(std::string("corrupt config.cfg: ") + e.what());
  }
  CsvTable games;
  try {
    games = ReadCsv((root / "games.csv").string());
  } catch (const std::runtime_error& e) {
    throw RunDataError(std::string("corrupt games.csv: ") + e.what());
  }
  if (JoinCsv(games.header) != GamesHeader(cfg.num_players)) {
    throw RunDataError("games.csv header does not match " + GamesHeader(cfg.num_players));
  }
  const auto manifest = ReadManifest((root / "manifest.txt").string());

  RunReport r;
  r.name = cfg.name;
  r.num_players = cfg.num_players;
  r.games = static_cast<std::int64_t>(games.rows.size());
  if (r.games != cfg.games) {
    throw RunDataError("games.csv has " + std::to_string(r.games) + " rows, config says " +
                       std::to_string(cfg.games));
  }
  r.seats.resize(cfg.num_players);
  for (int s = 0; s < cfg.num_players; ++s) r.seats[s].seat = s;
  std::set<std::int64_t> ids;
  try {
    for (const auto& row : games.rows) {
      const std::int64_t id = std::stoll(row[0]);
      if (!ids.insert(id).second) throw RunDataError("duplicate game_id " + row[0]);
      const int winner = std::stoi(row[1]);
      const bool capped = row[3] == "1";
      if (capped != (winner < 0)) throw RunDataError("game " + row[0] + ": winner/capped mismatch");
      if (winner >= cfg.num_players) throw RunDataError("game " + row[0] + ": winner out of range");
      if (capped) {
        ++r.capped;
      } else {
        ++r.seats[winner].wins;
      }
    }
  } catch (const std::logic_error& e) {
    throw RunDataError(std::string("corrupt games.csv: ") + e.what());
  }
  for (auto& s : r.seats) s.win_rate = static_cast<double>(s.wins) / static_cast<double>(r.games);
  r.cap_rate = static_cast<double>(r.capped) / static_cast<double>(r.games);
  r.designated_seat = DesignatedSeat(cfg);
  r.test = ZTest(r.seats[r.designated_seat].wins, r.games, cfg.baseline_p0);
  auto count = [&](const char* key) -> std::int64_t {
    auto it = manifest.find(key);
    return it == manifest.end() ? 0 : std::stoll(it->second);
  };
  r.fallback_turns = count("fallback_turns");
  r.backend_failures = count("backend_failures");
  r.aborted_attempts = count("aborted_attempts");
  if (auto it = manifest.find("template_hash"); it != manifest.end()) r.template_hash = it->second;
  return r;
}

inline std::string SummaryCsv(const RunReport& r) {
  std::string out = std::string(kSummaryHeader) + "\n";
  for (const auto& s : r.seats) {
    std::vector<std::string> f = {std::to_string(s.seat), std::to_string(s.wins),
                                  std::to_string(r.games), FormatReal(s.win_rate), "", "", ""};
    if (s.seat == r.designated_seat) {
      f[4] = FormatReal(r.test.p0);
      f[5] = FormatReal(r.test.z);
      f[6] = FormatReal(r.test.p_value);
    }
    out += JoinCsv(f) + "\n";
  }
  return out;
}

inline std::string FormatReport(const RunReport& r) {
  std::ostringstream o;
  char buf[160];
  o << "experiment " << r.name << ": " << r.games << " games, " << r.num_players << " players\n";
  o << "seat      wins   win_rate\n";
  for (const auto& s : r.seats) {
    std::snprintf(buf, sizeof(buf), "%4d %9lld %9.2f%%%s\n", s.seat, static_cast<long long>(s.wins),
                  100.0 * s.win_rate, s.seat == r.designated_seat ? "  *" : "");
    o << buf;
  }
  std::snprintf(buf, sizeof(buf), "capped %lld (%.2f%%)\n", static_cast<long long>(r.capped),
                100.0 * r.cap_rate);
  o << buf;
  std::snprintf(buf, sizeof(buf),
                "z-test seat %d: p_hat=%.4f p0=%.4f n=%lld z=%.4f p=%.4g%s\n", r.designated_seat,
                r.test.p_hat, r.test.p0, static_cast<long long>(r.test.n), r.test.z,
                r.test.p_value,
                r.test.significant_01   ? " (p<0.01)"
                : r.test.significant_05 ? " (p<0.05)"
                                        : " (not significant)");
  o << buf;
  o << "backend failures " << r.backend_failures << ", aborted attempts " << r.aborted_attempts
    << ", fallback turns " << r.fallback_turns << "\n";
  return o.str();
}

inline void WriteSummaryFiles(const RunReport& r, const std::string& dir) {
  const std::filesystem::path root(dir);
  std::ofstream csv(root / "summary.csv", std::ios::binary);
  std::ofstream txt(root / "summary.txt", std::ios::binary);
  if (!csv || !txt) throw RunDataError("cannot write summary files in " + dir);
  csv << SummaryCsv(r);
  txt << FormatReport(r);
}

// Checks that every logged cloze/counterfactual score equals what its own
// per-shift rows imply. Returns the number of turns checked.
// Logged values carry 10 significant digits, hence the default tolerance.
inline std::int64_t VerifyTurnLog(const std::string& dir, double tol = 1e-8) {
  CsvTable turns;
  try {
    turns = ReadCsv((std::filesystem::path(dir) / "turns.csv").string());
  } catch (const std::runtime_error& e) {
    throw RunDataError(e.what());
  }
  if (JoinCsv(turns.header) != kTurnsHeader) throw RunDataError("turns.csv header mismatch");
  struct Acc {
    double sum = 0.0;
    double good = 0.0;
    double bad = 0.0;
    double logged = 0.0;
    std::string method;
  };
  std::map<std::tuple<std::string, std::string, std::string>, Acc> acc;
  for (const auto& row : turns.rows) {
    const std::string& method = row[3];
    if (method != "cloze" && method != "counterfactual") continue;
    Acc& a = acc[{row[0], row[1], row[7]}];
    a.method = method;
    const double p = std::stod(row[6]);
    a.logged = std::stod(row[8]);
    if (method == "cloze") a.sum += p;
    else if (row[5] == "bad") a.bad += p;
    else a.good += p;
  }
  std::set<std::pair<std::string, std::string>> turn_ids;
  for (const auto& [key, a] : acc) {
    const double expect = a.method == "cloze" ? a.sum : a.good - a.bad;
    if (std::abs(expect - a.logged) > tol * std::max(1.0, std::abs(a.logged))) {
      throw RunDataError("score mismatch in game " + std::get<0>(key) + " turn " +
                         std::get<1>(key) + " action " + std::get<2>(key));
    }
    turn_ids.insert({std::get<0>(key), std::get<1>(key)});
  }
  return static_cast<std::int64_t>(turn_ids.size());
}

}  // namespace unollm

#endif  // UNOLLM_STATS_REPORT_H_
