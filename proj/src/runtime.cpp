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

#include "runtime.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace enchain {

void FunctionRegistry::register_function(const std::string& name, BusinessFn fn) {
    if (fns_.count(name)) {
        throw Error(Errc::DuplicateName, "function " + name + " already registered");
    }
    fns_.emplace(name, std::move(fn));
}

const BusinessFn& FunctionRegistry::lookup(const std::string& name) const {
    auto it = fns_.find(name);
    if (it == fns_.end()) {
        throw Error(Errc::FunctionFailure, "function " + name + " not registered");
    }
    return it->second;
}

bool FunctionRegistry::contains(const std::string& name) const { return fns_.count(name) != 0; }

namespace {

Bytes concat_inputs(const std::vector<Bytes>& inputs) {
    Bytes out;
    for (const Bytes& in : inputs) {
        out.insert(out.end(), in.begin(), in.end());
    }
    return out;
}

// The workload loop: k passes over a 1000x1000 nested loop. The
// volatile sink keeps the loop from being optimized away.
Bytes busyloop(const std::vector<Bytes>& inputs, int megapasses) {
    volatile unsigned long long sink = 0;
    for (int rep = 0; rep < megapasses; ++rep) {
        for (int i = 0; i < 1000; ++i) {
            for (int j = 0; j < 1000; ++j) {
                sink = static_cast<unsigned long long>(j + i);
            }
        }
    }
    (void)sink;
    return inputs.empty() ? Bytes{} : inputs.front();
}

}  // namespace

FunctionRegistry FunctionRegistry::with_builtins() {
    FunctionRegistry reg;
    reg.register_function("identity", [](const std::vector<Bytes>& in) { return concat_inputs(in); });
    reg.register_function("reverse", [](const std::vector<Bytes>& in) {
        Bytes out = concat_inputs(in);
        std::reverse(out.begin(), out.end());
        return out;
    });
    reg.register_function("checksum", [](const std::vector<Bytes>& in) {
        return hash_bytes(as_span(concat_inputs(in))).bytes();
    });
    for (int k : {1, 2, 4, 8, 16}) {
        reg.register_function("busyloop_" + std::to_string(k) + "M",
                              [k](const std::vector<Bytes>& in) { return busyloop(in, k); });
    }
    return reg;
}

void EnclaveSim::store_chain(const NodeId& node, Bytes h) { chain_[node] = std::move(h); }

void EnclaveSim::store_result(const NodeId& node, Bytes res) { results_[node] = std::move(res); }

void EnclaveSim::check_reader(EnclaveId reader) const {
    if (reader != id_) {
        // Module invariant, not a runtime condition: enclave-private
        // state is only reachable from resident nodes.
        throw std::logic_error("enclave " + std::to_string(id_) +
                               " state read from enclave " + std::to_string(reader));
    }
}

const Bytes& EnclaveSim::chain_of(const NodeId& node, EnclaveId reader) const {
    check_reader(reader);
    auto it = chain_.find(node);
    if (it == chain_.end()) {
        throw Error(Errc::MissingContribution, "no stored chain value for node " + node);
    }
    return it->second;
}

const Bytes& EnclaveSim::result_of(const NodeId& node, EnclaveId reader) const {
    check_reader(reader);
    auto it = results_.find(node);
    if (it == results_.end()) {
        throw Error(Errc::MissingContribution, "no stored result for node " + node);
    }
    return it->second;
}

std::string ExecutionTrace::final_expression() const {
    return final_expr ? sym::render(final_expr) : std::string();
}

std::string ExecutionTrace::to_text() const {
    std::ostringstream os;
    for (const NodeTrace& n : nodes) {
        os << "node " << n.id << "\n";
        if (!n.compact.empty()) {
            os << "  H_" << n.id << " = " << n.compact << "\n";
        }
        os << "  h   = " << to_hex(as_span(n.h)) << "\n";
        os << "  H   = " << to_hex(as_span(n.chain_out)) << "\n";
        if (side == "cloud") {
            os << "  res = " << to_hex(as_span(n.result)) << "\n";
        }
    }
    os << "hash_" << side << " = " << final_digest.hex() << "\n";
    if (final_expr) {
        os << "hash_" << side << " expression:\n  " << final_expression() << "\n";
    }
    return os.str();
}

namespace {

struct ScopedTimer {
    explicit ScopedTimer(std::chrono::nanoseconds* acc) : acc_(acc) {
        if (acc_) start_ = std::chrono::steady_clock::now();
    }
    ~ScopedTimer() {
        if (acc_) *acc_ += std::chrono::steady_clock::now() - start_;
    }
    std::chrono::nanoseconds* acc_;
    std::chrono::steady_clock::time_point start_;
};

struct NodeState {
    Bytes h;
    sym::ExprPtr h_expr;
    std::string h_compact;
    bool has_cross_successor = false;
};

}  // namespace

ExecutionResult execute_plan(const ExecutionPlan& plan, const FunctionRegistry& fns,
                             ByteSpan data, const Nonce& r, const ExecOptions& opts) {
    const std::vector<NodeId> order = plan.topological_order();
    Algebra alg(opts.hash_kind);

    std::map<EnclaveId, EnclaveSim> enclaves;
    auto enclave_of = [&](EnclaveId id) -> EnclaveSim& {
        return enclaves.try_emplace(id, id).first->second;
    };

    std::map<std::pair<NodeId, NodeId>, BoundaryMessage> delivered;
    std::map<NodeId, NodeState> states;

    ExecutionResult out;
    out.trace.side = "cloud";
    const Bytes data_bytes(data.begin(), data.end());

    for (const NodeId& id : order) {
        const PlanNode& node = plan.node(id);
        const std::vector<NodeId>& preds = plan.predecessors(id);
        const std::vector<NodeId>& succs = plan.successors(id);
        EnclaveSim& home = enclave_of(node.enclave);

        // Business inputs, ascending predecessor id. Same-enclave
        // results are read inside the enclave; cross-enclave results
        // arrive through the untrusted channel.
        std::vector<Bytes> inputs;
        if (preds.empty()) {
            inputs.push_back(data_bytes);
        } else {
            for (const NodeId& u : preds) {
                if (plan.classify(u, id) == EdgeClass::SameEnclave) {
                    inputs.push_back(home.result_of(u, node.enclave));
                } else {
                    auto it = delivered.find({u, id});
                    if (it == delivered.end()) {
                        throw Error(Errc::MissingContribution,
                                    "no message delivered on edge " + u + "->" + id);
                    }
                    inputs.push_back(it->second.result);
                }
            }
        }

        Bytes res;
        try {
            res = fns.lookup(node.function)(inputs);
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw Error(Errc::FunctionFailure, "node " + id + ": " + e.what());
        }

        NodeTrace nt;
        nt.id = id;
        nt.result = res;

        if (opts.chain_enabled) {
            ScopedTimer timer(opts.chain_time);
            NodeState& st = states[id];

            // Hash input: gather one contribution per incoming edge,
            // then bind the function tag.
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
                    const NodeState& ust = states.at(u);
                    if (plan.classify(u, id) == EdgeClass::SameEnclave) {
                        contributions.push_back(home.chain_of(u, node.enclave));
                        if (opts.symbolic) {
                            contribution_exprs.push_back(ust.h_expr);
                            contribution_compacts.push_back(
                                ust.has_cross_successor ? "h_" + u : "H_" + u);
                        }
                    } else {
                        const BoundaryMessage& msg = delivered.at({u, id});
                        Digest received_hash = alg.hash(as_span(msg.result));
                        Digest contribution = alg.xored(msg.chain, received_hash);
                        contributions.push_back(contribution.bytes());
                        if (opts.symbolic) {
                            contribution_exprs.push_back(sym::xored(
                                msg.chain_expr, sym::hashed(sym::symbol("res'_" + u))));
                            contribution_compacts.push_back("H_" + u + " ⊕ hash(res'_" + u + ")");
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
                    st.h_expr = sym::concat(sym::add(contribution_exprs),
                                            sym::symbol("tag_" + id));
                    std::string joined;
                    for (std::size_t i = 0; i < contribution_compacts.size(); ++i) {
                        if (i) joined += " + ";
                        joined += contribution_compacts[i];
                    }
                    st.h_compact = "(" + joined + ")||tag_" + id;
                }
            }

            // Hash output per successor class. Cross-enclave edges get
            // xor(hash(h), hash(res)) recomputed per edge; same-enclave
            // successors later read the raw h inside the enclave; the
            // terminal node publishes hash(h).
            nt.h = st.h;
            if (succs.empty()) {
                out.hash_cloud = alg.hash(as_span(st.h));
                nt.chain_out = out.hash_cloud.bytes();
                if (opts.symbolic) {
                    nt.expr = sym::hashed(st.h_expr);
                    nt.compact = "hash(" + st.h_compact + ")";
                    out.trace.final_expr = nt.expr;
                }
                out.trace.final_digest = out.hash_cloud;
            } else {
                bool stored = false;
                Digest last_chain{};
                sym::ExprPtr last_chain_expr;
                for (const NodeId& s : succs) {
                    if (plan.classify(id, s) == EdgeClass::SameEnclave) {
                        if (!stored) {
                            home.store_chain(id, st.h);
                            stored = true;
                        }
                    } else {
                        st.has_cross_successor = true;
                        Digest chain = alg.xored(alg.hash(as_span(st.h)), alg.hash(as_span(res)));
                        BoundaryMessage msg{id, s, chain, res, nullptr};
                        if (opts.symbolic) {
                            msg.chain_expr = sym::xored(sym::hashed(st.h_expr),
                                                        sym::hashed(sym::symbol("res_" + id)));
                        }
                        if (opts.tap && opts.tap->active()) {
                            opts.tap->hook(msg);
                        }
                        last_chain = msg.chain;
                        last_chain_expr = msg.chain_expr;
                        delivered[{id, s}] = std::move(msg);
                    }
                }
                if (st.has_cross_successor) {
                    nt.chain_out = last_chain.bytes();
                    if (opts.symbolic) {
                        nt.expr = last_chain_expr;
                        nt.compact = "hash(" + st.h_compact + ") ⊕ hash(res_" + id + ")";
                    }
                } else {
                    nt.chain_out = st.h;
                    if (opts.symbolic) {
                        nt.expr = st.h_expr;
                        nt.compact = st.h_compact;
                    }
                }
            }
        }

        // Result distribution. The sink's result is returned over the
        // attestation channel; everything else is either enclave-local
        // or already carried by the boundary messages above.
        home.store_result(id, res);
        if (succs.empty()) {
            out.result = res;
        } else if (!opts.chain_enabled) {
            for (const NodeId& s : succs) {
                if (plan.classify(id, s) == EdgeClass::CrossEnclave) {
                    BoundaryMessage msg{id, s, Digest{}, res, nullptr};
                    if (opts.tap && opts.tap->active()) {
                        opts.tap->hook(msg);
                    }
                    delivered[{id, s}] = std::move(msg);
                }
            }
        }

        out.trace.nodes.push_back(std::move(nt));
    }

    out.counters = alg.counters();
    return out;
}

}  // namespace enchain
