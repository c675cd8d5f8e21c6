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

#include "attack.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "verifier.hpp"

namespace enchain {

std::string AttackSpec::label() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DdrcAttack>) {
                return "ddrc:" + mutation_label(v.mutation);
            } else if constexpr (std::is_same_v<T, OtmTamper>) {
                return "otm_tamper(" + v.edge.from + "->" + v.edge.to + ", octet " +
                       std::to_string(v.octet_index) + ", mask " +
                       to_hex(ByteSpan(&v.xor_mask, 1)) + ")";
            } else {
                return "otm_misroute(" + v.victim_edge.from + "->" + v.victim_edge.to +
                       " <= " + v.substitute_from + ")";
            }
        },
        kind);
}

bool chain_invariant(const ExecutionPlan& plan, const ExecutionPlan& mutated) {
    // Probe nonces derived from the original plan keep runs reproducible.
    Digest base = plan.fingerprint();
    for (int probe = 0; probe < 2; ++probe) {
        Bytes salted = base.bytes();
        salted.push_back(static_cast<Byte>(probe));
        Digest d = hash_bytes(as_span(salted));
        Nonce r = Nonce::from_bytes(ByteSpan(d.octets.data(), kNonceSize));
        if (!(compute_user_hash(plan, r).hash_user ==
              compute_user_hash(mutated, r).hash_user)) {
            return false;
        }
    }
    return true;
}

ExecutionPlan apply_ddrc(const ExecutionPlan& plan, const DdrcAttack& spec) {
    ExecutionPlan mutated = mutate(plan, spec.mutation);
    if (chain_invariant(plan, mutated)) {
        throw Error(Errc::MutationInvalid,
                    mutation_label(spec.mutation) +
                        ": absorbed by the additive combiner; the chain cannot "
                        "distinguish the two plans");
    }
    return mutated;
}

namespace {

void require_cross(const ExecutionPlan& plan, const Edge& edge, const char* what) {
    if (!plan.has_edge(edge.from, edge.to)) {
        throw Error(Errc::NoSuchMessage, std::string(what) + ": no edge " + edge.from + "->" +
                                             edge.to);
    }
    if (plan.classify(edge) != EdgeClass::CrossEnclave) {
        throw Error(Errc::NotCrossEnclave,
                    std::string(what) + ": edge " + edge.from + "->" + edge.to +
                        " never leaves its enclave");
    }
}

}  // namespace

ChannelTap apply_otm(const ExecutionPlan& plan, const OtmTamper& spec) {
    require_cross(plan, spec.edge, "otm_tamper");
    if (spec.xor_mask == 0) {
        throw Error(Errc::AttackInvalid, "otm_tamper: zero mask leaves the message unchanged");
    }
    ChannelTap tap;
    tap.hook = [spec](BoundaryMessage& msg) {
        if (msg.from != spec.edge.from || msg.to != spec.edge.to) {
            return;
        }
        if (spec.octet_index >= msg.result.size()) {
            throw Error(Errc::NoSuchMessage,
                        "otm_tamper: octet " + std::to_string(spec.octet_index) +
                            " beyond result of " + std::to_string(msg.result.size()) +
                            " octets");
        }
        msg.result[spec.octet_index] ^= spec.xor_mask;
    };
    return tap;
}

ChannelTap apply_otm(const ExecutionPlan& plan, const OtmMisroute& spec) {
    require_cross(plan, spec.victim_edge, "otm_misroute");
    if (spec.substitute_from == spec.victim_edge.from) {
        throw Error(Errc::AttackInvalid,
                    "otm_misroute: substitute equals the victim sender");
    }
    bool substitute_emits = false;
    for (const NodeId& s : plan.successors(spec.substitute_from)) {
        if (plan.classify(spec.substitute_from, s) == EdgeClass::CrossEnclave) {
            substitute_emits = true;
            break;
        }
    }
    if (!substitute_emits) {
        throw Error(Errc::NotCrossEnclave,
                    "otm_misroute: node " + spec.substitute_from +
                        " emits nothing into the untrusted area");
    }
    // The hook captures every message it sees and replays the
    // substitute's capture onto the victim edge.
    auto captured = std::make_shared<std::map<NodeId, BoundaryMessage>>();
    ChannelTap tap;
    tap.hook = [spec, captured](BoundaryMessage& msg) {
        if (msg.from == spec.victim_edge.from && msg.to == spec.victim_edge.to) {
            auto it = captured->find(spec.substitute_from);
            if (it == captured->end()) {
                throw Error(Errc::NoSuchMessage,
                            "otm_misroute: no captured message from " + spec.substitute_from);
            }
            msg.chain = it->second.chain;
            msg.result = it->second.result;
            msg.chain_expr = it->second.chain_expr;
            return;
        }
        captured->emplace(msg.from, msg);
    };
    return tap;
}

namespace {

std::set<NodeId> reachable_from(const ExecutionPlan& plan, const NodeId& start) {
    std::set<NodeId> seen{start};
    std::vector<NodeId> frontier{start};
    while (!frontier.empty()) {
        NodeId id = frontier.back();
        frontier.pop_back();
        for (const NodeId& s : plan.successors(id)) {
            if (seen.insert(s).second) frontier.push_back(s);
        }
    }
    return seen;
}

}  // namespace

AttackSpec random_ddrc(const ExecutionPlan& plan, RandomSource& rng) {
    const auto& nodes = plan.nodes();
    const auto& edges = plan.edges();
    for (int attempt = 0; attempt < 256; ++attempt) {
        PlanMutation mutation;
        switch (rng.below(4)) {
            case 0: {
                if (nodes.size() < 2) continue;
                std::size_t a = rng.below(nodes.size());
                std::size_t b = rng.below(nodes.size());
                if (a == b) continue;
                mutation = SwapTags{nodes[a].id, nodes[b].id};
                break;
            }
            case 1: {
                if (edges.empty()) continue;
                const Edge& e = edges[rng.below(edges.size())];
                const PlanNode& target = nodes[rng.below(nodes.size())];
                if (target.id == e.to || target.id == e.from) continue;
                // Keep the rewired edge acyclic: the new head must not
                // reach the tail.
                if (reachable_from(plan, target.id).count(e.from)) continue;
                mutation = RewireEdge{e, target.id};
                break;
            }
            case 2: {
                if (nodes.size() < 2) continue;
                mutation = DropNode{nodes[rng.below(nodes.size())].id};
                break;
            }
            default: {
                const PlanNode& n = nodes[rng.below(nodes.size())];
                Tag fresh = rng.tag();
                mutation = DuplicateNode{n.id, fresh};
                break;
            }
        }
        try {
            DdrcAttack candidate{std::move(mutation)};
            apply_ddrc(plan, candidate);  // dry run; campaign applies it again
            return AttackSpec{std::move(candidate)};
        } catch (const Error& e) {
            if (e.code() != Errc::MutationInvalid) throw;
        }
    }
    throw Error(Errc::AttackInvalid, "no applicable mutation found for this plan");
}

AttackSpec random_otm(const ExecutionPlan& plan, RandomSource& rng,
                      std::size_t min_result_len) {
    std::vector<Edge> cross;
    for (const Edge& e : plan.edges()) {
        if (plan.classify(e) == EdgeClass::CrossEnclave) cross.push_back(e);
    }
    if (cross.empty()) {
        throw Error(Errc::AttackInvalid, "plan has no cross-enclave edges");
    }
    // One in five attacks misroutes when the plan allows it.
    if (rng.below(5) == 0) {
        std::vector<NodeId> order = plan.topological_order();
        std::map<NodeId, std::size_t> pos;
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        std::vector<std::pair<Edge, NodeId>> options;
        for (const Edge& victim : cross) {
            for (const Edge& source : cross) {
                if (source.from != victim.from && pos[source.from] < pos[victim.from]) {
                    options.emplace_back(victim, source.from);
                }
            }
        }
        if (!options.empty()) {
            const auto& [victim, substitute] = options[rng.below(options.size())];
            return AttackSpec{OtmMisroute{victim, substitute}};
        }
    }
    const Edge& edge = cross[rng.below(cross.size())];
    OtmTamper tamper;
    tamper.edge = edge;
    tamper.octet_index = min_result_len == 0 ? 0 : rng.below(min_result_len);
    tamper.xor_mask = static_cast<Byte>(1 + rng.below(255));
    return AttackSpec{tamper};
}

bool misroute_possible(const ExecutionPlan& plan) {
    std::vector<NodeId> senders;
    for (const PlanNode& n : plan.nodes()) {
        for (const NodeId& s : plan.successors(n.id)) {
            if (plan.classify(n.id, s) == EdgeClass::CrossEnclave) {
                senders.push_back(n.id);
                break;
            }
        }
    }
    return senders.size() >= 2;
}

std::size_t CampaignReport::detected_count() const {
    std::size_t n = 0;
    for (const CampaignRow& row : rows) {
        if (row.detected) ++n;
    }
    return n;
}

double CampaignReport::detection_rate() const {
    if (rows.empty()) return 1.0;
    return static_cast<double>(detected_count()) / static_cast<double>(rows.size());
}

}  // namespace enchain
