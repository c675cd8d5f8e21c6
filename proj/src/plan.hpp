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

#ifndef ENCHAIN_PLAN_HPP
#define ENCHAIN_PLAN_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "digest.hpp"
#include "error.hpp"

namespace enchain {

using NodeId = std::string;
using EnclaveId = std::uint32_t;

/// One ECall invocation slot in the plan. The (tag, function, enclave)
/// triple is the invoked function's identity; the id names the slot.
struct PlanNode {
    NodeId id;
    Tag tag;
    EnclaveId enclave = 0;
    std::string function;
};

struct Edge {
    NodeId from;
    NodeId to;

    auto operator<=>(const Edge&) const = default;
};

enum class EdgeClass { SameEnclave, CrossEnclave };

enum class PlanIssueKind {
    EmptyPlan,
    DuplicateNodeId,
    DuplicateTag,
    DanglingEdge,
    DuplicateEdge,
    CyclicPlan,
    MultipleSinks,
    DisconnectedPlan,
};

const char* plan_issue_name(PlanIssueKind kind);

struct PlanIssue {
    PlanIssueKind kind;
    std::string detail;  // offending node or edge

    std::string to_string() const;
};

/// Labeled DAG of ECall invocations with enclave assignment. Immutable
/// after construction; mutation produces a new plan.
class ExecutionPlan {
  public:
    ExecutionPlan() = default;
    ExecutionPlan(std::vector<PlanNode> nodes, std::vector<Edge> edges);

    const std::vector<PlanNode>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_node(const NodeId& id) const;
    const PlanNode& node(const NodeId& id) const;  // throws Error{InvalidPlan}

    /// Predecessor/successor ids in ascending id order.
    const std::vector<NodeId>& predecessors(const NodeId& id) const;
    const std::vector<NodeId>& successors(const NodeId& id) const;

    bool has_edge(const NodeId& from, const NodeId& to) const;

    /// nullopt when every plan invariant holds; otherwise the first
    /// violated invariant with the offending node/edge.
    std::optional<PlanIssue> validate() const;

    /// Kahn's order; ties broken by ascending node id so the order is
    /// deterministic. Throws Error{InvalidPlan} on a cyclic plan.
    std::vector<NodeId> topological_order() const;

    /// SameEnclave iff both endpoints share an enclave. Throws
    /// Error{UnknownEdge} for edges not in the plan.
    EdgeClass classify(const Edge& edge) const;
    EdgeClass classify(const NodeId& from, const NodeId& to) const;

    /// The unique sink of a validated plan.
    NodeId sink() const;

    /// Equality as a labeled DAG: tags identify nodes (they are unique
    /// per plan), so two plans are equal when the tag-keyed node
    /// attributes and the tag-pair edge sets match. Node ids are slot
    /// names and do not participate.
    bool same_labeled(const ExecutionPlan& other) const;

    /// Digest over the canonical (tag-keyed) form; shown in
    /// verification reports.
    Digest fingerprint() const;

  private:
    std::vector<PlanNode> nodes_;  // sorted by id
    std::vector<Edge> edges_;      // sorted
    std::map<NodeId, std::size_t> index_;
    std::map<NodeId, std::vector<NodeId>> preds_;
    std::map<NodeId, std::vector<NodeId>> succs_;
};

struct SwapTags {
    NodeId a;
    NodeId b;
};

struct RewireEdge {
    Edge edge;     // existing edge to remove
    NodeId new_to;  // replacement destination (same source)
};

struct DropNode {
    NodeId node;
};

/// Inserts a parallel twin of `node`: same function and enclave, same
/// wiring, fresh id and fresh tag (a second entry point cloned by the
/// attacker; a same-tag copy can never pass validation).
struct DuplicateNode {
    NodeId node;
    Tag fresh_tag;
};

using PlanMutation = std::variant<SwapTags, RewireEdge, DropNode, DuplicateNode>;

std::string mutation_label(const PlanMutation& m);

/// Applies the mutation and returns the attacker's plan. Throws
/// Error{MutationInvalid} when the result would violate plan invariants
/// or does not differ from the input as a labeled DAG.
ExecutionPlan mutate(const ExecutionPlan& plan, const PlanMutation& mutation);

/// Static registry mapping request identifiers to plan templates.
class PlanRegistry {
  public:
    void add(std::string request_id, ExecutionPlan plan);   // Error{DuplicateName}
    const ExecutionPlan& resolve(const std::string& request_id) const;  // Error{UnknownRequest}
    bool contains(const std::string& request_id) const;

  private:
    std::map<std::string, ExecutionPlan> plans_;
};

}  // namespace enchain

#endif  // ENCHAIN_PLAN_HPP
