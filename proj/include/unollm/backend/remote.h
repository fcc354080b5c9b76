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
#ifndef UNOLLM_BACKEND_REMOTE_H_
#define UNOLLM_BACKEND_REMOTE_H_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "unollm/backend/backend.h"

namespace unollm {

// Client-side rate limiter: capacity max(1, rate) tokens refilled at rate/s.
class TokenBucket {
 public:
  explicit TokenBucket(double rate_per_second)
      : rate_(rate_per_second),
        capacity_(std::max(1.0, rate_per_second)),
        tokens_(capacity_),
        last_(std::chrono::steady_clock::now()) {}

  void Acquire() {
    if (rate_ <= 0.0) return;
    std::unique_lock<std::mutex> lock(mu_);
    while (true) {
      const auto now = std::chrono::steady_clock::now();
      tokens_ = std::min(capacity_,
                         tokens_ + rate_ * std::chrono::duration<double>(now - last_).count());
      last_ = now;
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      const double wait_s = (1.0 - tokens_) / rate_;
      lock.unlock();
      std::this_thread::sleep_for(std::chrono::duration<double>(wait_s));
      lock.lock();
    }
  }

 private:
  double rate_;
  double capacity_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
  std::mutex mu_;
};

// Bounds the number of concurrent requests.
class InFlightLimiter {
 public:
  explicit InFlightLimiter(int cap) : free_(std::max(1, cap)) {}
  void Acquire() {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait(lock, [&] { return free_ > 0; });
    --free_;
  }
  void Release() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      ++free_;
    }
    cv_.notify_one();
  }

 private:
  int free_;
  std::mutex mu_;
  std::condition_variable cv_;
};

// Builds the completion request body: one generated token, top-k logprob
// alternatives, greedy.
inline nlohmann::json CompletionRequest(const RemoteSettings& s, const std::string& prompt) {
  return {{"model", s.model},
          {"prompt", prompt},
          {"max_tokens", 1},
          {"logprobs", s.top_logprobs},
          {"temperature", 0}};
}

// Reads choices[0].logprobs.top_logprobs[0] and maps each candidate to
// exp(logprob), or leaves it absent when not among the alternatives.
inline TokenDistribution ParseCompletionReply(const std::string& body,
                                              const std::vector<std::string>& candidates) {
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("malformed endpoint reply: ") + e.what());
  }
  try {
    const auto& top = reply.at("choices").at(0).at("logprobs").at("top_logprobs").at(0);
    if (!top.is_object()) throw BackendError("malformed endpoint reply: top_logprobs[0] is not an object");
    TokenDistribution d;
    for (const auto& c : candidates) {
      auto it = top.find(c);
      if (it == top.end()) continue;
      const double lp = it->get<double>();
      if (std::isnan(lp) || lp > 1e-9) {
        throw BackendError("malformed endpoint reply: bad logprob for '" + c + "'");
      }
      d.probs[c] = std::min(1.0, std::exp(lp));
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(std::string("malformed endpoint reply: ") + e.what());
  }
}

// Connection settings and shared limits; one per experiment, shared by every
// per-game RemoteBackend.
class RemoteClient {
 public:
  explicit RemoteClient(RemoteSettings settings)
      : settings_(std::move(settings)),
        bucket_(settings_.requests_per_second),
        in_flight_(settings_.max_in_flight) {
    if (settings_.base_url.empty()) throw std::invalid_argument("remote backend needs a url");
    if (settings_.top_logprobs < 1) throw std::invalid_argument("top_logprobs must be >= 1");
    if (settings_.retries < 0) throw std::invalid_argument("retries must be >= 0");
    if (!settings_.api_key_env.empty()) {
      const char* key = std::getenv(settings_.api_key_env.c_str());
      if (!key) {
        throw std::invalid_argument("environment variable " + settings_.api_key_env +
                                    " is not set");
      }
      api_key_ = key;
    }
  }

  const RemoteSettings& settings() const { return settings_; }

  // At most retries + 1 attempts. Transport errors, 429 and 5xx are retried;
  // other statuses and malformed bodies fail at once.
  TokenDistribution Complete(const std::string& prompt, const std::vector<std::string>& candidates,
                             int& retries_used) {
    if (static_cast<int>(candidates.size()) > settings_.top_logprobs) {
      throw BackendError("top_logprobs (" + std::to_string(settings_.top_logprobs) +
                         ") is smaller than the candidate count (" +
                         std::to_string(candidates.size()) + ")");
    }
    const std::string body = CompletionRequest(settings_, prompt).dump();
    std::string last_error;
    for (int attempt = 0; attempt <= settings_.retries; ++attempt) {
      retries_used = attempt;
      if (attempt > 0 && settings_.retry_backoff_ms > 0) {
        std::this_thread::sleep_for(
            std::chrono::milliseconds(settings_.retry_backoff_ms * (1 << std::min(attempt - 1, 6))));
      }
      bucket_.Acquire();
      in_flight_.Acquire();
      httplib::Result res = Post(body);
      in_flight_.Release();
      ++attempts_;
      if (!res) {
        last_error = "transport error: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status == 200) return ParseCompletionReply(res->body, candidates);
      last_error = "HTTP " + std::to_string(res->status);
      if (res->status != 429 && res->status < 500) break;
    }
    throw BackendError("completion request failed: " + last_error);
  }

  std::int64_t attempts() const { return attempts_.load(); }

 private:
  httplib::Result Post(const std::string& body) {
    httplib::Client client(settings_.base_url);
    const auto timeout = std::chrono::duration<double>(settings_.timeout_s);
    const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(timeout).count();
    client.set_connection_timeout(usec / 1000000, usec % 1000000);
    client.set_read_timeout(usec / 1000000, usec % 1000000);
    client.set_write_timeout(usec / 1000000, usec % 1000000);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    return client.Post(settings_.path, headers, body, "application/json");
  }

  RemoteSettings settings_;
  std::string api_key_;
  TokenBucket bucket_;
  InFlightLimiter in_flight_;
  std::atomic<std::int64_t> attempts_{0};
};

class RemoteBackend final : public Backend {
 public:
  explicit RemoteBackend(std::shared_ptr<RemoteClient> client) : client_(std::move(client)) {}

 protected:
  TokenDistribution Query(const std::string& prompt, const std::vector<std::string>& candidates,
                          int& retries) override {
    return client_->Complete(prompt, candidates, retries);
  }

 private:
  std::shared_ptr<RemoteClient> client_;
};

}  // namespace unollm

#endif  // UNOLLM_BACKEND_REMOTE_H_
