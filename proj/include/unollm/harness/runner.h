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
#ifndef UNOLLM_HARNESS_RUNNER_H_
#define UNOLLM_HARNESS_RUNNER_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "unollm/agents/agent.h"
#include "unollm/agents/llm_agent.h"
#include "unollm/backend/backend.h"
#include "unollm/backend/mock.h"
#include "unollm/backend/remote.h"
#include "unollm/engine/game.h"
#include "unollm/harness/config.h"
#include "unollm/prompting/templates.h"
#include "unollm/stats/report.h"
#include "unollm/util/csv.h"
#include "unollm/util/hash.h"
#include "unollm/util/rng.h"

namespace unollm {

struct TurnLogRow {
  int turn = 0;
  int seat = 0;
  std::string method;
  TurnRow row;
  bool fallback = false;
};

struct GameRecord {
  std::int64_t game_id = 0;
  std::optional<int> winner;
  int turns = 0;
  bool capped = false;
  std::vector<double> payoffs;
  std::vector<TurnLogRow> rows;
  std::vector<QueryRecord> queries;
  int attempts = 1;
  int fallback_turns = 0;
  int backend_failures = 0;
};

struct RunSummary {
  std::vector<std::int64_t> wins;
  std::int64_t games = 0;
  std::int64_t capped = 0;
  std::int64_t backend_failures = 0;
  std::int64_t aborted_attempts = 0;
  std::int64_t fallback_turns = 0;
  std::string template_hash;
  std::optional<RunReport> report;    // set when files were written
  std::vector<GameRecord> records;    // set when RunOptions::keep_records
};

// Maps a finished game to the payoffs that get recorded. Identity by default.
using PayoffShaper = std::function<std::vector<double>(const GameResult&)>;
using BackendFactory = std::function<std::unique_ptr<Backend>(const BackendSpec&)>;

struct RunOptions {
  PayoffShaper shaper;
  BackendFactory backend_factory;  // default: mock or shared remote client
  bool write_files = true;
  bool keep_records = false;
};

inline std::uint64_t GameSeed(std::uint64_t master_seed, std::int64_t game_id, int attempt) {
  const std::uint64_t base = DeriveSeed(master_seed, static_cast<std::uint64_t>(game_id));
  return attempt == 0 ? base : DeriveSeed(base, static_cast<std::uint64_t>(attempt));
}

inline std::uint64_t SeatSeed(std::uint64_t game_seed, int seat) {
  return DeriveSeed(game_seed, 0x5ea7000ULL + static_cast<std::uint64_t>(seat));
}

// Plays one attempt of one game. With abort_game, a BackendError escapes;
// with random_fallback the failing turn is replaced by a random move.
inline GameRecord PlayGame(const ExperimentConfig& cfg, const TemplateSet& templates,
                           std::int64_t game_id, int attempt, const BackendFactory& factory,
                           const PayoffShaper& shaper, bool log_queries) {
  const std::uint64_t seed = GameSeed(cfg.master_seed, game_id, attempt);
  GameState state = NewGame(cfg.num_players, seed, cfg.max_turns);

  std::shared_ptr<QueryLog> qlog = log_queries ? std::make_shared<QueryLog>() : nullptr;
  std::map<std::string, std::unique_ptr<Backend>> backends;
  std::vector<std::unique_ptr<Agent>> agents;
  std::vector<Rng> rngs;
  for (int s = 0; s < cfg.num_players; ++s) {
    const AgentSpec& spec = cfg.seats[s];
    rngs.emplace_back(SeatSeed(seed, s));
    switch (spec.kind) {
      case AgentKind::kRandom: agents.push_back(std::make_unique<RandomAgent>()); break;
      case AgentKind::kRule: agents.push_back(std::make_unique<RuleAgent>()); break;
      case AgentKind::kLlm: {
        auto& backend = backends[spec.backend];
        if (!backend) {
          backend = factory(cfg.backends.at(spec.backend));
          backend->set_log(qlog);
        }
        agents.push_back(std::make_unique<LlmAgent>(spec, s, *backend, templates));
        break;
      }
    }
  }

  GameRecord rec;
  rec.game_id = game_id;
  rec.attempts = attempt + 1;
  while (!IsTerminal(state)) {
    const int seat = state.current_seat;
    const Observation obs = Observe(state, seat);
    Decision d;
    try {
      d = agents[seat]->Act(obs, rngs[seat]);
    } catch (const BackendError&) {
      if (cfg.on_backend_failure == FailurePolicy::kAbortGame) throw;
      const ActionId a = RandomAct(obs, rngs[seat]);
      d = {a, "random", {TurnRow{.action = a, .chosen = true}}, true};
      ++rec.fallback_turns;
      ++rec.backend_failures;
    }
    const bool log_seat = cfg.log_turns == TurnLogging::kAll ||
                          (cfg.log_turns == TurnLogging::kLlm && cfg.seats[seat].kind == AgentKind::kLlm);
    if (log_seat) {
      for (const TurnRow& row : d.rows) {
        rec.rows.push_back({state.turn_count, seat, d.method, row, d.fallback});
      }
    }
    ApplyAction(state, d.action);
  }
  const GameResult result = Payoffs(state);
  rec.winner = result.winner;
  rec.turns = result.turns;
  rec.capped = result.terminated_by_cap;
  rec.payoffs = shaper ? shaper(result) : result.payoffs;
  if (rec.payoffs.size() != static_cast<std::size_t>(cfg.num_players)) {
    throw std::logic_error("payoff shaper returned the wrong number of payoffs");
  }
  if (qlog) rec.queries = qlog->Snapshot();
  return rec;
}

namespace internal {

inline std::string OptionalText(const std::optional<int>& v) {
  return v ? std::to_string(*v) : "";
}
inline std::string OptionalText(const std::optional<double>& v) {
  return v ? FormatReal(*v) : "";
}

inline std::string CsvSafe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

inline void WriteRunFiles(const ExperimentConfig& cfg, const RunSummary& sum,
                          const std::vector<GameRecord>& records, const std::string& template_version,
                          bool log_queries) {
  namespace fs = std::filesystem;
  const fs::path root(cfg.output_dir);
  auto open = [&](const char* name) {
    std::ofstream f(root / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (root / name).string());
    return f;
  };
  {
    auto f = open("config.cfg");
    f << SerializeConfig(cfg);
  }
  {
    auto f = open("games.csv");
    f << GamesHeader(cfg.num_players) << "\n";
    for (const auto& r : records) {
      std::vector<std::string> row = {std::to_string(r.game_id),
                                      r.winner ? std::to_string(*r.winner) : "-1",
                                      std::to_string(r.turns), r.capped ? "1" : "0"};
      for (double p : r.payoffs) row.push_back(FormatReal(p));
      f << JoinCsv(row) << "\n";
    }
  }
  {
    auto f = open("turns.csv");
    f << kTurnsHeader << "\n";
    for (const auto& r : records) {
      for (const auto& t : r.rows) {
        f << JoinCsv({std::to_string(r.game_id), std::to_string(t.turn), std::to_string(t.seat),
                      t.method, OptionalText(t.row.shift), t.row.letter,
                      OptionalText(t.row.token_prob), Shorthand(t.row.action),
                      OptionalText(t.row.cumulative), t.row.chosen ? "1" : "0",
                      t.fallback ? "1" : "0"})
          << "\n";
      }
    }
  }
  if (log_queries) {
    auto f = open("queries.csv");
    f << "game_id,prompt_hash,candidates,probs,latency_ms,retries,error\n";
    for (const auto& r : records) {
      for (const auto& q : r.queries) {
        std::string cands, probs;
        for (std::size_t i = 0; i < q.candidates.size(); ++i) {
          if (i) {
            cands += '|';
            probs += '|';
          }
          cands += CsvSafe(q.candidates[i]);
          if (auto p = q.distribution.Find(q.candidates[i])) probs += FormatReal(*p);
        }
        f << JoinCsv({std::to_string(r.game_id), HexDigest(q.prompt_hash), cands, probs,
                      FormatReal(q.latency_ms, 6), std::to_string(q.retries), CsvSafe(q.error)})
          << "\n";
      }
    }
  }
  {
    auto f = open("manifest.txt");
    f << "name=" << cfg.name << "\n"
      << "games=" << sum.games << "\n"
      << "capped=" << sum.capped << "\n"
      << "backend_failures=" << sum.backend_failures << "\n"
      << "aborted_attempts=" << sum.aborted_attempts << "\n"
      << "fallback_turns=" << sum.fallback_turns << "\n"
      << "template_version=" << template_version << "\n"
      << "template_hash=" << sum.template_hash << "\n"
      << "master_seed=" << cfg.master_seed << "\n";
  }
}

}  // namespace internal

// Plays cfg.games games (game g seeded from (master_seed, g)), then writes
// config.cfg, games.csv, turns.csv, manifest.txt, summary.csv, summary.txt
// and, for remote backends, queries.csv into cfg.output_dir. Results do not
// depend on cfg.parallelism.
inline RunSummary RunExperiment(const ExperimentConfig& cfg, RunOptions opts = {}) {
  ValidateConfig(cfg);
  const TemplateSet templates =
      cfg.template_dir.empty() ? TemplateSet::Default() : TemplateSet::LoadDirectory(cfg.template_dir);
  const bool log_queries = cfg.log_queries.value_or(UsesRemoteBackend(cfg));

  if (opts.write_files) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    std::ofstream probe(std::filesystem::path(cfg.output_dir) / "manifest.txt");
    if (ec || !probe) throw std::runtime_error("output directory is not writable: " + cfg.output_dir);
  }

  BackendFactory factory = opts.backend_factory;
  if (!factory) {
    std::map<std::string, std::shared_ptr<RemoteClient>> clients;
    for (const auto& [name, spec] : cfg.backends) {
      if (spec.kind == BackendKind::kRemote) clients[name] = std::make_shared<RemoteClient>(spec.remote);
    }
    factory = [clients](const BackendSpec& spec) -> std::unique_ptr<Backend> {
      if (spec.kind == BackendKind::kMock) return std::make_unique<MockBackend>(spec.mock);
      return std::make_unique<RemoteBackend>(clients.at(spec.name));
    };
  }

  std::vector<GameRecord> records(static_cast<std::size_t>(cfg.games));
  std::atomic<std::int64_t> next{0};
  std::atomic<std::int64_t> aborted{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;

  auto worker = [&] {
    while (!failed.load()) {
      const std::int64_t id = next.fetch_add(1);
      if (id >= cfg.games) return;
      try {
        int failures = 0;
        for (int attempt = 0;; ++attempt) {
          try {
            GameRecord rec = PlayGame(cfg, templates, id, attempt, factory, opts.shaper, log_queries);
            rec.backend_failures += failures;
            records[static_cast<std::size_t>(id)] = std::move(rec);
            break;
          } catch (const BackendError& e) {
            ++failures;
            aborted.fetch_add(1);
            if (attempt + 1 >= cfg.max_attempts_per_game) {
              throw std::runtime_error("game " + std::to_string(id) + " aborted " +
                                       std::to_string(attempt + 1) + " times; last error: " + e.what());
            }
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };

  const int threads = static_cast<int>(std::min<std::int64_t>(cfg.parallelism, cfg.games));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  RunSummary sum;
  sum.games = cfg.games;
  sum.wins.assign(cfg.num_players, 0);
  sum.aborted_attempts = aborted.load();
  sum.template_hash = HexDigest(templates.Hash());
  for (const auto& r : records) {
    if (r.winner) ++sum.wins[*r.winner];
    else ++sum.capped;
    sum.backend_failures += r.backend_failures;
    sum.fallback_turns += r.fallback_turns;
  }
  if (opts.write_files) {
    internal::WriteRunFiles(cfg, sum, records, templates.version(), log_queries);
    RunReport report = SummarizeRun(cfg.output_dir);
    WriteSummaryFiles(report, cfg.output_dir);
    sum.report = std::move(report);
  }
  if (opts.keep_records) sum.records = std::move(records);
  return sum;
}

}  // namespace unollm

#endif  // UNOLLM_HARNESS_RUNNER_H_
