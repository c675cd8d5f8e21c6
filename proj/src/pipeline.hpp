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

#ifndef ENCHAIN_PIPELINE_HPP
#define ENCHAIN_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "attack.hpp"
#include "cost.hpp"
#include "protocol.hpp"
#include "scenario.hpp"
#include "verifier.hpp"

namespace enchain {

struct RunOptions {
    std::optional<std::uint64_t> seed_override;
    /// After the honest exchange, build a second request with a fresh
    /// nonce and feed it the first response; the replayed verdict
    /// becomes the report verdict.
    bool replay_experiment = false;
    /// When nonempty, write the envelope hex dumps here as JSON.
    std::string save_envelopes_path;
};

struct RunReport {
    std::string request_id;
    Digest plan_fingerprint;
    Nonce nonce;
    std::string attack_label;  // empty for an honest run
    std::string request_envelope_hex;
    std::string response_envelope_hex;
    Digest hash_user;
    Digest hash_cloud;
    Verdict verdict;
    Bytes result;
    OpCounters cloud_ops;
    OpCounters user_ops;
    OpCounters predicted_cloud_ops;
    OpCounters predicted_user_ops;
    bool replay_ran = false;
    Verdict replay_verdict;

    std::string to_text() const;
    std::string to_json() const;
};

/// Phases 1-4 end to end, applying at most one attack from the
/// scenario. Two or more configured attacks are a usage error; run a
/// campaign for lists.
RunReport run_scenario(const Scenario& scenario, const RunOptions& options = {});

enum class TraceSide { User, Cloud, Both };

struct TraceReport {
    TraceSide side = TraceSide::Both;
    ExecutionTrace user;
    ExecutionTrace cloud;

    std::string to_text() const;
    std::string to_json() const;
};

/// Honest symbolic execution of the scenario; no protocol envelopes.
TraceReport trace_scenario(const Scenario& scenario, TraceSide side = TraceSide::Both,
                           std::optional<std::uint64_t> seed_override = {});

struct CampaignOptions {
    std::size_t random_ddrc = 0;
    std::size_t random_otm = 0;
    std::optional<std::uint64_t> seed_override;
};

struct CampaignOutcome {
    CampaignReport report;

    std::string to_text() const;
    std::string to_json() const;
};

/// Baseline honest run (must Accept), then one isolated attacked run
/// per configured and generated attack.
CampaignOutcome campaign_scenario(const Scenario& scenario, const CampaignOptions& options = {});

struct BenchOptions {
    std::size_t repetitions = 5;
    /// Rows for the base plan chained 1..scale_count times.
    std::size_t scale_count = 1;
    std::optional<std::uint64_t> seed_override;
};

struct BenchOutcome {
    OverheadReport report;

    std::string to_text() const;
    std::string to_json() const;
};

BenchOutcome bench_scenario(const Scenario& scenario, const BenchOptions& options = {});

}  // namespace enchain

#endif  // ENCHAIN_PIPELINE_HPP
