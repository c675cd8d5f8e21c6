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

#ifndef ENCHAIN_ATTACK_HPP
#define ENCHAIN_ATTACK_HPP

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "plan.hpp"
#include "rng.hpp"
#include "runtime.hpp"

namespace enchain {

/// The untrusted scheduler runs a rewired plan while the user verifies
/// against the original.
struct DdrcAttack {
    PlanMutation mutation;
};

/// XORs a mask into one octet of a cross-enclave result in transit.
struct OtmTamper {
    Edge edge;
    std::size_t octet_index = 0;
    Byte xor_mask = 0xff;
};

/// Replaces the message on the victim edge with a message previously
/// captured from another node (both chain value and result).
struct OtmMisroute {
    Edge victim_edge;
    NodeId substitute_from;
};

using AttackKind = std::variant<DdrcAttack, OtmTamper, OtmMisroute>;

struct AttackSpec {
    AttackKind kind;

    bool is_ddrc() const { return std::holds_alternative<DdrcAttack>(kind); }
    std::string label() const;
};

/// True when both plans produce the same verification digest for
/// deterministic probe nonces. Sibling tag exchanges under a common
/// join are the canonical case: each contribution ends with its own
/// fixed-width tag, so the additive combiner satisfies
/// (A||t1)+(B||t2) == (A||t2)+(B||t1) and no verifier decision can
/// separate the two plans.
bool chain_invariant(const ExecutionPlan& plan, const ExecutionPlan& mutated);

/// Produces the attacker's plan rho'. Error{MutationInvalid} when the
/// mutation does not yield a valid, different labeled DAG, or when the
/// change is absorbed by the additive combiner (chain-invariant, hence
/// not a detectable attack).
ExecutionPlan apply_ddrc(const ExecutionPlan& plan, const DdrcAttack& spec);

/// Builds the channel hook for one OTM attack against the given plan.
/// Error{NotCrossEnclave} when the attack references data that never
/// enters the untrusted area; Error{NoSuchMessage} is raised in transit
/// when the referenced octet or captured message does not exist.
ChannelTap apply_otm(const ExecutionPlan& plan, const OtmTamper& spec);
ChannelTap apply_otm(const ExecutionPlan& plan, const OtmMisroute& spec);

/// Random attack generators used by campaigns. Mutations are drawn
/// until one applies cleanly; OTM specs always reference cross-enclave
/// edges of the plan.
AttackSpec random_ddrc(const ExecutionPlan& plan, RandomSource& rng);
AttackSpec random_otm(const ExecutionPlan& plan, RandomSource& rng, std::size_t min_result_len);

/// True when the plan admits a misroute (two cross-enclave senders in
/// topological order).
bool misroute_possible(const ExecutionPlan& plan);

struct CampaignRow {
    std::string attack;
    std::string verdict;
    bool detected = false;
};

struct CampaignReport {
    bool baseline_accepted = false;
    std::vector<CampaignRow> rows;

    std::size_t detected_count() const;
    double detection_rate() const;  // 1.0 over zero attacks
    bool all_detected() const { return detected_count() == rows.size(); }
};

}  // namespace enchain

#endif  // ENCHAIN_ATTACK_HPP
