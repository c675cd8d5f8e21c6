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

#include "plan.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace enchain {

const char* plan_issue_name(PlanIssueKind kind) {
    switch (kind) {
        case PlanIssueKind::EmptyPlan: return "EmptyPlan";
        case PlanIssueKind::DuplicateNodeId: return "DuplicateNodeId";
        case PlanIssueKind::DuplicateTag: return "DuplicateTag";
        case PlanIssueKind::DanglingEdge: return "DanglingEdge";
        case PlanIssueKind::DuplicateEdge: return "DuplicateEdge";
        case PlanIssueKind::CyclicPlan: return "CyclicPlan";
        case PlanIssueKind::MultipleSinks: return "MultipleSinks";
        case PlanIssueKind::DisconnectedPlan: return "DisconnectedPlan";
    }
    return "UnknownIssue";
}

std::string PlanIssue::to_string() const {
    return std::string(plan_issue_name(kind)) + " (" + detail + ")";
}

ExecutionPlan::ExecutionPlan(std::vector<PlanNode> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    std::sort(nodes_.begin(), nodes_.end(),
              [](const PlanNode& a, const PlanNode& b) { return a.id < b.id; });
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        index_.emplace(nodes_[i].id, i);
        preds_[nodes_[i].id];
        succs_[nodes_[i].id];
    }
    for (const Edge& e : edges_) {
        if (index_.count(e.from) && index_.count(e.to)) {
            succs_[e.from].push_back(e.to);
            preds_[e.to].push_back(e.from);
        }
    }
    // edges_ is sorted, so adjacency lists come out in ascending order.
}

bool ExecutionPlan::has_node(const NodeId& id) const { return index_.count(id) != 0; }

const PlanNode& ExecutionPlan::node(const NodeId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw Error(Errc::InvalidPlan, "unknown node " + id);
    }
    return nodes_[it->second];
}

const std::vector<NodeId>& ExecutionPlan::predecessors(const NodeId& id) const {
    auto it = preds_.find(id);
    if (it == preds_.end()) {
        throw Error(Errc::InvalidPlan, "unknown node " + id);
    }
    return it->second;
}

const std::vector<NodeId>& ExecutionPlan::successors(const NodeId& id) const {
    auto it = succs_.find(id);
    if (it == succs_.end()) {
        throw Error(Errc::InvalidPlan, "unknown node " + id);
    }
    return it->second;
}

bool ExecutionPlan::has_edge(const NodeId& from, const NodeId& to) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

std::optional<PlanIssue> ExecutionPlan::validate() const {
    if (nodes_.empty()) {
        return PlanIssue{PlanIssueKind::EmptyPlan, "plan has no nodes"};
    }
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (nodes_[i].id == nodes_[i - 1].id) {
            return PlanIssue{PlanIssueKind::DuplicateNodeId, "node " + nodes_[i].id};
        }
    }
    {
        std::set<Tag> seen;
        for (const PlanNode& n : nodes_) {
            if (!seen.insert(n.tag).second) {
                return PlanIssue{PlanIssueKind::DuplicateTag,
                                 "tag " + n.tag.hex() + " at node " + n.id};
            }
        }
    }
    for (const Edge& e : edges_) {
        if (!has_node(e.from) || !has_node(e.to)) {
            return PlanIssue{PlanIssueKind::DanglingEdge, e.from + "->" + e.to};
        }
        if (e.from == e.to) {
            return PlanIssue{PlanIssueKind::CyclicPlan, "self-loop at " + e.from};
        }
    }
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i] == edges_[i - 1]) {
            return PlanIssue{PlanIssueKind::DuplicateEdge,
                             edges_[i].from + "->" + edges_[i].to};
        }
    }
    // Cycle check: Kahn's algorithm must consume every node.
    {
        std::map<NodeId, std::size_t> indeg;
        for (const PlanNode& n : nodes_) indeg[n.id] = predecessors(n.id).size();
        std::queue<NodeId> ready;
        for (const auto& [id, d] : indeg) {
            if (d == 0) ready.push(id);
        }
        std::size_t visited = 0;
        while (!ready.empty()) {
            NodeId id = ready.front();
            ready.pop();
            ++visited;
            for (const NodeId& s : successors(id)) {
                if (--indeg[s] == 0) ready.push(s);
            }
        }
        if (visited != nodes_.size()) {
            std::string leftover;
            for (const auto& [id, d] : indeg) {
                if (d > 0) {
                    leftover = id;
                    break;
                }
            }
            return PlanIssue{PlanIssueKind::CyclicPlan, "cycle through node " + leftover};
        }
    }
    {
        std::vector<NodeId> sinks;
        for (const PlanNode& n : nodes_) {
            if (successors(n.id).empty()) sinks.push_back(n.id);
        }
        if (sinks.size() != 1) {
            std::ostringstream os;
            for (const NodeId& s : sinks) os << s << " ";
            return PlanIssue{PlanIssueKind::MultipleSinks,
                             std::to_string(sinks.size()) + " sinks: " + os.str()};
        }
    }
    // Weak connectivity over the undirected view.
    {
        std::set<NodeId> seen;
        std::queue<NodeId> frontier;
        frontier.push(nodes_.front().id);
        seen.insert(nodes_.front().id);
        while (!frontier.empty()) {
            NodeId id = frontier.front();
            frontier.pop();
            auto visit = [&](const NodeId& next) {
                if (seen.insert(next).second) frontier.push(next);
            };
            for (const NodeId& s : successors(id)) visit(s);
            for (const NodeId& p : predecessors(id)) visit(p);
        }
        if (seen.size() != nodes_.size()) {
            for (const PlanNode& n : nodes_) {
                if (!seen.count(n.id)) {
                    return PlanIssue{PlanIssueKind::DisconnectedPlan,
                                     "node " + n.id + " unreachable"};
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<NodeId> ExecutionPlan::topological_order() const {
    std::map<NodeId, std::size_t> indeg;
    for (const PlanNode& n : nodes_) indeg[n.id] = predecessors(n.id).size();
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<NodeId>> ready;
    for (const auto& [id, d] : indeg) {
        if (d == 0) ready.push(id);
    }
    std::vector<NodeId> order;
    order.reserve(nodes_.size());
    while (!ready.empty()) {
        NodeId id = ready.top();
        ready.pop();
        order.push_back(id);
        for (const NodeId& s : successors(id)) {
            if (--indeg[s] == 0) ready.push(s);
        }
    }
    if (order.size() != nodes_.size()) {
        throw Error(Errc::InvalidPlan, "topological order requested for a cyclic plan");
    }
    return order;
}

EdgeClass ExecutionPlan::classify(const Edge& edge) const {
    if (!has_edge(edge.from, edge.to)) {
        throw Error(Errc::UnknownEdge, edge.from + "->" + edge.to);
    }
    return node(edge.from).enclave == node(edge.to).enclave ? EdgeClass::SameEnclave
                                                            : EdgeClass::CrossEnclave;
}

EdgeClass ExecutionPlan::classify(const NodeId& from, const NodeId& to) const {
    return classify(Edge{from, to});
}

NodeId ExecutionPlan::sink() const {
    for (const PlanNode& n : nodes_) {
        if (successors(n.id).empty()) return n.id;
    }
    throw Error(Errc::InvalidPlan, "plan has no sink");
}

namespace {

struct CanonicalForm {
    // tag hex -> (enclave, function)
    std::map<std::string, std::pair<EnclaveId, std::string>> nodes;
    std::set<std::pair<std::string, std::string>> edges;  // (tag_from, tag_to)
};

CanonicalForm canonical(const ExecutionPlan& plan) {
    CanonicalForm form;
    std::map<NodeId, std::string> tag_of;
    for (const PlanNode& n : plan.nodes()) {
        tag_of[n.id] = n.tag.hex();
        form.nodes.emplace(n.tag.hex(), std::make_pair(n.enclave, n.function));
    }
    for (const Edge& e : plan.edges()) {
        form.edges.emplace(tag_of.at(e.from), tag_of.at(e.to));
    }
    return form;
}

}  // namespace

bool ExecutionPlan::same_labeled(const ExecutionPlan& other) const {
    CanonicalForm a = canonical(*this);
    CanonicalForm b = canonical(other);
    return a.nodes == b.nodes && a.edges == b.edges;
}

Digest ExecutionPlan::fingerprint() const {
    CanonicalForm form = canonical(*this);
    std::ostringstream os;
    for (const auto& [tag, attrs] : form.nodes) {
        os << "node:" << tag << "," << attrs.first << "," << attrs.second << ";";
    }
    for (const auto& [from, to] : form.edges) {
        os << "edge:" << from << "," << to << ";";
    }
    return hash_bytes(as_span(to_bytes(os.str())));
}

std::string mutation_label(const PlanMutation& m) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SwapTags>) {
                return "swap_tags(" + v.a + "," + v.b + ")";
            } else if constexpr (std::is_same_v<T, RewireEdge>) {
                return "rewire_edge(" + v.edge.from + "->" + v.edge.to + " => " + v.edge.from +
                       "->" + v.new_to + ")";
            } else if constexpr (std::is_same_v<T, DropNode>) {
                return "drop_node(" + v.node + ")";
            } else {
                return "duplicate_node(" + v.node + ")";
            }
        },
        m);
}

namespace {

ExecutionPlan rebuild(std::vector<PlanNode> nodes, std::vector<Edge> edges,
                      const ExecutionPlan& original, const std::string& what) {
    ExecutionPlan mutated(std::move(nodes), std::move(edges));
    if (auto issue = mutated.validate()) {
        throw Error(Errc::MutationInvalid, what + ": " + issue->to_string());
    }
    if (mutated.same_labeled(original)) {
        throw Error(Errc::MutationInvalid, what + ": labeled plan unchanged");
    }
    return mutated;
}

}  // namespace

ExecutionPlan mutate(const ExecutionPlan& plan, const PlanMutation& mutation) {
    const std::string what = mutation_label(mutation);
    std::vector<PlanNode> nodes = plan.nodes();
    std::vector<Edge> edges = plan.edges();
    auto find = [&](const NodeId& id) -> PlanNode* {
        for (PlanNode& n : nodes) {
            if (n.id == id) return &n;
        }
        throw Error(Errc::MutationInvalid, what + ": unknown node " + id);
    };

    if (const auto* swap = std::get_if<SwapTags>(&mutation)) {
        if (swap->a == swap->b) {
            throw Error(Errc::MutationInvalid, what + ": nodes must differ");
        }
        PlanNode* a = find(swap->a);
        PlanNode* b = find(swap->b);
        // The invoked function identity moves as a unit; the slots keep
        // their wiring.
        std::swap(a->tag, b->tag);
        std::swap(a->function, b->function);
        std::swap(a->enclave, b->enclave);
        return rebuild(std::move(nodes), std::move(edges), plan, what);
    }
    if (const auto* rewire = std::get_if<RewireEdge>(&mutation)) {
        auto it = std::find(edges.begin(), edges.end(), rewire->edge);
        if (it == edges.end()) {
            throw Error(Errc::MutationInvalid,
                        what + ": no edge " + rewire->edge.from + "->" + rewire->edge.to);
        }
        find(rewire->new_to);
        *it = Edge{rewire->edge.from, rewire->new_to};
        return rebuild(std::move(nodes), std::move(edges), plan, what);
    }
    if (const auto* drop = std::get_if<DropNode>(&mutation)) {
        find(drop->node);
        // The scheduler skips the call: splice predecessors to successors.
        const auto& incoming = plan.predecessors(drop->node);
        const auto& outgoing = plan.successors(drop->node);
        std::vector<Edge> kept;
        for (const Edge& e : edges) {
            if (e.from != drop->node && e.to != drop->node) kept.push_back(e);
        }
        for (const NodeId& p : incoming) {
            for (const NodeId& s : outgoing) {
                Edge spliced{p, s};
                if (std::find(kept.begin(), kept.end(), spliced) == kept.end()) {
                    kept.push_back(spliced);
                }
            }
        }
        std::erase_if(nodes, [&](const PlanNode& n) { return n.id == drop->node; });
        return rebuild(std::move(nodes), std::move(kept), plan, what);
    }
    const auto& dup = std::get<DuplicateNode>(mutation);
    const PlanNode* original = find(dup.node);
    PlanNode twin = *original;
    twin.id = dup.node + "+dup";
    while (plan.has_node(twin.id)) twin.id += "'";
    twin.tag = dup.fresh_tag;
    for (const NodeId& p : plan.predecessors(dup.node)) edges.push_back(Edge{p, twin.id});
    for (const NodeId& s : plan.successors(dup.node)) edges.push_back(Edge{twin.id, s});
    nodes.push_back(twin);
    return rebuild(std::move(nodes), std::move(edges), plan, what);
}

void PlanRegistry::add(std::string request_id, ExecutionPlan plan) {
    if (plans_.count(request_id)) {
        throw Error(Errc::DuplicateName, "request " + request_id + " already registered");
    }
    plans_.emplace(std::move(request_id), std::move(plan));
}

const ExecutionPlan& PlanRegistry::resolve(const std::string& request_id) const {
    auto it = plans_.find(request_id);
    if (it == plans_.end()) {
        throw Error(Errc::UnknownRequest, request_id);
    }
    return it->second;
}

bool PlanRegistry::contains(const std::string& request_id) const {
    return plans_.count(request_id) != 0;
}

}  // namespace enchain
