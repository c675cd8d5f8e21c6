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

#ifndef ENCHAIN_RUNTIME_HPP
#define ENCHAIN_RUNTIME_HPP

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "digest.hpp"
#include "plan.hpp"
#include "symbolic.hpp"

namespace enchain {

using BusinessFn = std::function<Bytes(const std::vector<Bytes>&)>;

/// Registry of ECall business functions. Immutable once execution
/// starts; lookups are by the plan's function names.
class FunctionRegistry {
  public:
    void register_function(const std::string& name, BusinessFn fn);  // Error{DuplicateName}
    const BusinessFn& lookup(const std::string& name) const;         // Error{FunctionFailure}
    bool contains(const std::string& name) const;

    /// identity, reverse, checksum, and the busyloop_<k>M workload
    /// family (k nested-loop megapasses, first input passed through).
    static FunctionRegistry with_builtins();

  private:
    std::map<std::string, BusinessFn> fns_;
};

/// Value crossing the untrusted area between two enclaves: the 32-octet
/// chain value and the business result it certifies. Raw (unhashed)
/// chain inputs never travel in one of these.
struct BoundaryMessage {
    NodeId from;
    NodeId to;
    Digest chain;
    Bytes result;
    sym::ExprPtr chain_expr;  // populated in symbolic runs
};

/// Hook applied to each message in transit; identity when empty. At
/// most one hook per run.
struct ChannelTap {
    std::function<void(BoundaryMessage&)> hook;

    bool active() const { return static_cast<bool>(hook); }
};

/// Per-enclave private state. Raw chain values and results are readable
/// only by nodes resident in the same enclave.
class EnclaveSim {
  public:
    explicit EnclaveSim(EnclaveId id) : id_(id) {}

    EnclaveId id() const { return id_; }
    void store_chain(const NodeId& node, Bytes h);
    void store_result(const NodeId& node, Bytes res);
    const Bytes& chain_of(const NodeId& node, EnclaveId reader) const;
    const Bytes& result_of(const NodeId& node, EnclaveId reader) const;

  private:
    void check_reader(EnclaveId reader) const;

    EnclaveId id_;
    std::map<NodeId, Bytes> chain_;
    std::map<NodeId, Bytes> results_;
};

struct NodeTrace {
    NodeId id;
    Bytes h;          // hash input h_i (empty when bookkeeping disabled)
    Bytes chain_out;  // published value H_i
    Bytes result;     // res_i (empty on the user side)
    std::string compact;  // e.g. "hash((H_2 + H_3 + H_4)||tag_5)"
    sym::ExprPtr expr;    // expanded H_i expression (symbolic runs)
};

struct ExecutionTrace {
    std::string side;  // "cloud" or "user"
    std::vector<NodeTrace> nodes;  // topological order; sink last
    Digest final_digest;
    sym::ExprPtr final_expr;

    std::string final_expression() const;
    std::string to_text() const;
};

struct ExecOptions {
    bool chain_enabled = true;
    bool symbolic = false;
    HashKind hash_kind = HashKind::Sha256;
    const ChannelTap* tap = nullptr;
    /// When set, time spent in hash-chain bookkeeping is accumulated
    /// here (benchmark instrumentation).
    std::chrono::nanoseconds* chain_time = nullptr;
};

struct ExecutionResult {
    Bytes result;
    Digest hash_cloud;
    ExecutionTrace trace;
    OpCounters counters;
};

/// Runs the plan in deterministic topological order: applies each
/// node's business function, accumulates the hash chain per node, and
/// routes every cross-enclave value through the (attackable) untrusted
/// channel. The sink's result and hash are handed back as if delivered
/// over the attestation channel.
ExecutionResult execute_plan(const ExecutionPlan& plan, const FunctionRegistry& fns,
                             ByteSpan data, const Nonce& r, const ExecOptions& opts = {});

}  // namespace enchain

#endif  // ENCHAIN_RUNTIME_HPP
