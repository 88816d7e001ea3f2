// Copyright 2026 The EPGM Authors.
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

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "epgm/fitting.hpp"
#include "epgm/models.hpp"
#include "epgm/realization.hpp"
#include "epgm/stats.hpp"

namespace epgm {

// Model parameter files:
//   {"model":"er","n0":N,"p0":P}
//   {"model":"cl","degrees":[...]}
//   {"model":"sb","blocks":[block of node 0, ...],"pB":[[...],...]}
//   {"model":"kr","theta":[[a,b],[b,c]],"k":K}
nlohmann::json model_to_json(const EdgeProbModel& m);
EdgeProbModel model_from_json(const nlohmann::json& j);

// Binding parameter files:
//   {"scheme":"eigm|local|parallel","R":R,"g":[per class],
//    "residual_coupling":"shared|independent","seed":S}
nlohmann::json binding_to_json(const BindingParams& b, std::uint64_t seed);
BindingParams binding_from_json(const nlohmann::json& j);

nlohmann::json fit_report_to_json(const FitReport& r);
nlohmann::json stats_to_json(const GraphStats& s);

Scheme scheme_from_string(std::string_view s);
std::string_view to_string(Scheme s);
ResidualCoupling residual_from_string(std::string_view s);
std::string_view to_string(ResidualCoupling r);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace epgm
