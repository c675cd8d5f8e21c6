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

#ifndef ENCHAIN_COST_HPP
#define ENCHAIN_COST_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "digest.hpp"
#include "plan.hpp"
#include "rng.hpp"
#include "runtime.hpp"

namespace enchain {

/// The four hash-input shapes a node can take.
enum class InputCase {
    Source,             // no predecessors; consumes the nonce
    SameEnclaveSingle,  // one predecessor in the same enclave
    CrossEnclaveSingle, // one predecessor in another enclave
    MultiPredecessor,   // two or more predecessors
};

const char* input_case_name(InputCase c);

struct NodeProfile {
    NodeId id;
    InputCase input_case = InputCase::Source;
    std::size_t in_degree = 0;        // m
    std::size_t cross_in_degree = 0;  // m'
    std::size_t cross_out_degree = 0; // q'
    bool terminal = false;
};

/// Exact per-node structural statistics of a validated plan.
struct PlanProfile {
    std::size_t node_count = 0;
    std::vector<NodeProfile> nodes;

    std::size_t case_count(InputCase c) const;
    /// Case frequencies; they sum to 1 over the nodes.
    double case_fraction(InputCase c) const;
};

PlanProfile profile(const ExecutionPlan& plan);

/// Closed-form operation counts for the cloud-side chain computation,
/// evaluated per node from its case: 1 Con everywhere; a single
/// cross-enclave predecessor adds Xor+Hash; m predecessors add (m-1)
/// Add plus m' (Xor+Hash); each cross-enclave successor costs
/// 2 Hash + 1 Xor; the terminal node costs one final Hash.
OpCounters predict_cloud_ops(const PlanProfile& profile);

/// User-side counterpart: 1 Con per node, (m-1) Add for multi-
/// predecessor nodes, 1 Hash per cross-enclave out-edge plus the final
/// Hash. No xor anywhere.
OpCounters predict_user_ops(const PlanProfile& profile);

/// Chains `copies` instances of the base plan: each copy's sink feeds
/// every source of the next copy. Copy 0 keeps the base ids and tags;
/// later copies get derived ids and fresh derived tags.
ExecutionPlan scale_plan(const ExecutionPlan& base, std::size_t copies);

struct OverheadRow {
    std::size_t nodes = 0;
    std::size_t enclaves = 0;
    double mean_ms_with = 0;
    double mean_ms_without = 0;
    double delta_ms = 0;
    double delta_pct = 0;
    /// Directly measured time inside chain bookkeeping, median over
    /// repetitions. More precise than the with/without difference.
    double bookkeeping_ms = 0;
};

struct OverheadReport {
    std::size_t repetitions = 0;
    std::vector<OverheadRow> rows;
};

/// Interleaves chain-enabled and chain-disabled runs of the plan and
/// reports wall-time means. Error{WorkloadTooSmall} when the bare run
/// costs less than 1 ms per node, where the percentage would be noise.
OverheadRow benchmark_overhead(const ExecutionPlan& plan, const FunctionRegistry& fns,
                               ByteSpan data, const Nonce& r, std::size_t repetitions);

/// Least-squares fit quality of y against x.
double linear_fit_r2(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace enchain

#endif  // ENCHAIN_COST_HPP
