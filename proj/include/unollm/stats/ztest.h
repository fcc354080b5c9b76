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
#ifndef UNOLLM_STATS_ZTEST_H_
#define UNOLLM_STATS_ZTEST_H_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace unollm {

// Standard normal CDF. erfc keeps full relative precision in both tails.
inline double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// 1 - NormalCdf(z), without cancellation for large z.
inline double NormalUpperTail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

struct ZTestResult {
  double p_hat = 0.0;
  double p0 = 0.0;
  std::int64_t n = 0;
  double z = 0.0;
  double p_value = 0.0;  // one-sided, upper tail
  bool significant_05 = false;
  bool significant_01 = false;
};

// One-sided one-proportion z-test of H1: p > p0, no continuity correction.
inline ZTestResult ZTest(std::int64_t wins, std::int64_t n, double p0) {
  if (n < 1) throw std::invalid_argument("z-test needs n >= 1");
  if (wins < 0 || wins > n) {
    throw std::invalid_argument("z-test needs 0 <= wins <= n, got wins=" +
                                std::to_string(wins) + " n=" + std::to_string(n));
  }
  if (!(p0 > 0.0 && p0 < 1.0)) throw std::invalid_argument("z-test needs 0 < p0 < 1");
  ZTestResult r;
  r.n = n;
  r.p0 = p0;
  r.p_hat = static_cast<double>(wins) / static_cast<double>(n);
  r.z = (r.p_hat - p0) / std::sqrt(p0 * (1.0 - p0) / static_cast<double>(n));
  r.p_value = NormalUpperTail(r.z);
  r.significant_05 = r.p_value < 0.05;
  r.significant_01 = r.p_value < 0.01;
  return r;
}

}  // namespace unollm

#endif  // UNOLLM_STATS_ZTEST_H_
