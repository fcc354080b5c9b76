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
#ifndef UNOLLM_BACKEND_BACKEND_H_
#define UNOLLM_BACKEND_BACKEND_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "unollm/scoring/scoring.h"
#include "unollm/util/hash.h"

namespace unollm {

// Turn-level failure: transport error after retries, malformed reply, or a
// scripted mock failure. The harness decides whether to abort the game or
// substitute a random move.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BackendKind { kRemote, kMock };
enum class MockScript { kPositionBiased, kContentKeyword, kFixedTable };

struct RemoteSettings {
  std::string base_url;  // e.g. http://127.0.0.1:8000
  std::string path = "/v1/completions";
  std::string model;
  std::string api_key_env;  // empty: no Authorization header
  int top_logprobs = 20;
  double timeout_s = 60.0;
  int retries = 2;
  int retry_backoff_ms = 200;
  int max_in_flight = 8;
  double requests_per_second = 0.0;  // 0: unlimited
};

struct MockSettings {
  MockScript script = MockScript::kPositionBiased;
  // position_biased: token -> probability; unlisted candidates share the rest.
  std::vector<std::pair<std::string, double>> weights;
  // content_keyword: first matching keyword (in order) wins.
  std::vector<std::pair<std::string, double>> keywords;
  // fixed_table: replayed cyclically, one row per query.
  std::vector<std::vector<std::pair<std::string, double>>> table;
  int fail_every = 0;  // every Nth query throws BackendError; 0 disables
};

struct BackendSpec {
  std::string name = "default";
  BackendKind kind = BackendKind::kMock;
  RemoteSettings remote;
  MockSettings mock;
};

struct QueryRecord {
  std::uint64_t prompt_hash = 0;
  std::vector<std::string> candidates;
  TokenDistribution distribution;
  double latency_ms = 0.0;
  int retries = 0;
  std::string error;  // empty on success
};

// Thread-safe append-only sink.
class QueryLog {
 public:
  void Append(QueryRecord r) {
    std::lock_guard<std::mutex> lock(mu_);
    records_.push_back(std::move(r));
  }
  std::vector<QueryRecord> Snapshot() const {
    std::lock_guard<std::mutex> lock(mu_);
    return records_;
  }
  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return records_.size();
  }

 private:
  mutable std::mutex mu_;
  std::vector<QueryRecord> records_;
};

// Source of first-token probabilities. Score() validates, counts and logs;
// implementations provide Query().
class Backend {
 public:
  virtual ~Backend() = default;

  TokenDistribution Score(const std::string& prompt,
                          const std::vector<std::string>& candidates) {
    if (candidates.empty()) throw std::invalid_argument("no candidate tokens");
    if (std::set<std::string>(candidates.begin(), candidates.end()).size() !=
        candidates.size()) {
      throw std::invalid_argument("candidate tokens must be distinct");
    }
    ++queries_;
    QueryRecord rec;
    rec.prompt_hash = StableHash(prompt);
    rec.candidates = candidates;
    const auto start = std::chrono::steady_clock::now();
    try {
      rec.distribution = Query(prompt, candidates, rec.retries);
    } catch (const BackendError& e) {
      rec.error = e.what();
      rec.latency_ms = ElapsedMs(start);
      if (log_) log_->Append(std::move(rec));
      throw;
    }
    rec.latency_ms = ElapsedMs(start);
    if (log_) log_->Append(rec);
    return rec.distribution;
  }

  std::int64_t queries() const { return queries_; }
  void set_log(std::shared_ptr<QueryLog> log) { log_ = std::move(log); }

 protected:
  // retries: number of repeated attempts made, for the query record.
  virtual TokenDistribution Query(const std::string& prompt,
                                  const std::vector<std::string>& candidates,
                                  int& retries) = 0;

 private:
  static double ElapsedMs(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }

  std::int64_t queries_ = 0;
  std::shared_ptr<QueryLog> log_;
};

// "A:0.7,B:0.1" -> {{"A",0.7},{"B",0.1}}. The split is on the last ':' so
// tokens may contain colons; leading spaces inside tokens are preserved.
inline std::vector<std::pair<std::string, double>> ParseTokenProbs(const std::string& text,
                                                                   char sep = ',') {
  std::vector<std::pair<std::string, double>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(start, end - start);
    if (!item.empty()) {
      const std::size_t colon = item.rfind(':');
      if (colon == std::string::npos) {
        throw std::invalid_argument("expected token:probability, got '" + item + "'");
      }
      std::size_t used = 0;
      const std::string num = item.substr(colon + 1);
      double p = 0.0;
      try {
        p = std::stod(num, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != num.size() || p < 0.0 || p > 1.0) {
        throw std::invalid_argument("bad probability in '" + item + "'");
      }
      out.emplace_back(item.substr(0, colon), p);
    }
    start = end + 1;
  }
  return out;
}

}  // namespace unollm

#endif  // UNOLLM_BACKEND_BACKEND_H_
