// Copyright 2026 The clutter-mpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <json.hpp>

#include "cmpc/controllers.h"
#include "cmpc/world.h"

namespace cmpc {

nlohmann::json to_json(const Control& u);
nlohmann::json to_json(const WorldState& s);
nlohmann::json to_json(const CostBreakdown& c);
nlohmann::json to_json(const Plan& p);
nlohmann::json to_json(const ExecutionLog& log);

Control control_from_json(const nlohmann::json& j);
WorldState world_state_from_json(const nlohmann::json& j);
ExecutionLog execution_log_from_json(const nlohmann::json& j);

void write_json(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json(const std::string& path);

}  // namespace cmpc
