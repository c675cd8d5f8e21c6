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

#include "verifier.hpp"

#include <map>

namespace enchain {

namespace {

struct UserNodeState {
    Bytes h;
    Bytes crossing;  // hash(h), present when the node has a cross-enclave successor
    sym::ExprPtr h_expr;
    sym::ExprPtr crossing_expr;
    std::string h_compact;
    bool has_cross_successor = false;
    bool has_same_successor = false;
};

}  // namespace

UserHashResult compute_user_hash(const ExecutionPlan& plan, const Nonce& r,
                                 const UserHashOptions& opts) {
    const std::vector<NodeId> order = plan.topological_order();
    Algebra alg(opts.hash_kind);

    std::map<NodeId, UserNodeState> states;
    UserHashResult out;
    out.trace.side = "user";

    for (const NodeId& id : order) {
        const PlanNode& node = plan.node(id);
        const std::vector<NodeId>& preds = plan.predecessors(id);
        const std::vector<NodeId>& succs = plan.successors(id);
        UserNodeState& st = states[id];

        std::vector<Bytes> contributions;
        std::vector<sym::ExprPtr> contribution_exprs;
        std::vector<std::string> contribution_compacts;
        if (preds.empty()) {
            contributions.push_back(Bytes(r.octets.begin(), r.octets.end()));
            if (opts.symbolic) {
                contribution_exprs.push_back(sym::symbol("r"));
                contribution_compacts.push_back("r");
            }
        } else {
            for (const NodeId& u : preds) {
                const UserNodeState& ust = states.at(u);
                if (plan.classify(u, id) == EdgeClass::SameEnclave) {
                    contributions.push_back(ust.h);
                    if (opts.symbolic) {
                        contribution_exprs.push_back(ust.h_expr);
                        contribution_compacts.push_back(
                            ust.has_cross_successor ? "h_" + u : "H_" + u);
                    }
                } else {
                    contributions.push_back(ust.crossing);
                    if (opts.symbolic) {
                        contribution_exprs.push_back(ust.crossing_expr);
                        contribution_compacts.push_back("H_" + u);
                    }
                }
            }
        }

        const Bytes tag_bytes(node.tag.octets.begin(), node.tag.octets.end());
        if (contributions.size() == 1) {
            st.h = alg.concat(as_span(contributions[0]), as_span(tag_bytes));
            if (opts.symbolic) {
                st.h_expr = sym::concat(contribution_exprs[0], sym::symbol("tag_" + id));
                st.h_compact = contribution_compacts[0] + "||tag_" + id;
            }
        } else {
            Bytes summed = alg.add(contributions);
            st.h = alg.concat(as_span(summed), as_span(tag_bytes));
            if (opts.symbolic) {
                st.h_expr = sym::concat(sym::add(contribution_exprs), sym::symbol("tag_" + id));
                std::string joined;
                for (std::size_t i = 0; i < contribution_compacts.size(); ++i) {
                    if (i) joined += " + ";
                    joined += contribution_compacts[i];
                }
                st.h_compact = "(" + joined + ")||tag_" + id;
            }
        }

        NodeTrace nt;
        nt.id = id;
        nt.h = st.h;

        if (succs.empty()) {
            out.hash_user = alg.hash(as_span(st.h));
            nt.chain_out = out.hash_user.bytes();
            if (opts.symbolic) {
                nt.expr = sym::hashed(st.h_expr);
                nt.compact = "hash(" + st.h_compact + ")";
                out.trace.final_expr = nt.expr;
            }
            out.trace.final_digest = out.hash_user;
        } else {
            for (const NodeId& s : succs) {
                if (plan.classify(id, s) == EdgeClass::CrossEnclave) {
                    st.has_cross_successor = true;
                    // One hash per crossing edge, mirroring the
                    // per-edge cost of the cloud side.
                    st.crossing = alg.hash(as_span(st.h)).bytes();
                } else {
                    st.has_same_successor = true;
                }
            }
            if (st.has_cross_successor) {
                nt.chain_out = st.crossing;
                if (opts.symbolic) {
                    st.crossing_expr = sym::hashed(st.h_expr);
                    nt.expr = st.crossing_expr;
                    nt.compact = "hash(" + st.h_compact + ")";
                }
            } else {
                nt.chain_out = st.h;
                if (opts.symbolic) {
                    nt.expr = st.h_expr;
                    nt.compact = st.h_compact;
                }
            }
        }

        out.trace.nodes.push_back(std::move(nt));
    }

    out.counters = alg.counters();
    return out;
}

const char* reject_reason_name(RejectReason reason) {
    switch (reason) {
        case RejectReason::BadSignature: return "BadSignature";
        case RejectReason::HashMismatch: return "HashMismatch";
    }
    return "Unknown";
}

std::string Verdict::to_string() const {
    if (accepted) return "Accept";
    return std::string("Reject(") + (reason ? reject_reason_name(*reason) : "?") + ")";
}

Verdict verify(const Digest& expected, const Digest& received_hash, ByteSpan received_result,
               bool sig_ok) {
    (void)received_result;  // bound by the signature, not by the comparison
    if (!sig_ok) {
        return Verdict::reject(RejectReason::BadSignature);
    }
    if (!(expected == received_hash)) {
        return Verdict::reject(RejectReason::HashMismatch);
    }
    return Verdict::accept();
}

}  // namespace enchain
