/*
 * Copyright 2026 the enchain authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ENCHAIN_SCENARIO_HPP
#define ENCHAIN_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "attack.hpp"
#include "plan.hpp"

namespace enchain {

/// Parsed scenario file. JSON schema (field names are normative):
///   enclaves: [1, 2]
///   nodes:    [{"id": "1", "tag_hex": "...16 hex...", "enclave": 1,
///               "function": "identity"}, ...]
///   edges:    [["1","2"], ...]
///   request:  "fig9"
///   data_hex: "deadbeef"
///   attacks:  optional list, see attack_from_json
///   seed:     optional integer; fixes nonces, keys and generated
///             attacks for reproducible runs
struct Scenario {
    ExecutionPlan plan;
    std::string request_id;
    Bytes data;
    std::vector<AttackSpec> attacks;
    std::optional<std::uint64_t> seed;
};

Scenario load_scenario_file(const std::string& path);         // Error{IoError, ParseError}
Scenario parse_scenario_json(const std::string& json_text);   // Error{ParseError}

}  // namespace enchain

#endif  // ENCHAIN_SCENARIO_HPP
