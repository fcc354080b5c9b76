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
#ifndef UNOLLM_UNOLLM_H_
#define UNOLLM_UNOLLM_H_

#include "unollm/agents/agent.h"
#include "unollm/agents/llm_agent.h"
#include "unollm/backend/backend.h"
#include "unollm/backend/mock.h"
#include "unollm/backend/remote.h"
#include "unollm/engine/card.h"
#include "unollm/engine/game.h"
#include "unollm/harness/config.h"
#include "unollm/harness/presets.h"
#include "unollm/harness/runner.h"
#include "unollm/prompting/prompt.h"
#include "unollm/prompting/templates.h"
#include "unollm/scoring/scoring.h"
#include "unollm/stats/report.h"
#include "unollm/stats/ztest.h"

#endif  // UNOLLM_UNOLLM_H_
