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

#include "cost.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

namespace enchain {

const char* input_case_name(InputCase c) {
    switch (c) {
        case InputCase::Source: return "source";
        case InputCase::SameEnclaveSingle: return "same-enclave";
        case InputCase::CrossEnclaveSingle: return "cross-enclave";
        case InputCase::MultiPredecessor: return "multi-predecessor";
    }
    return "?";
}

std::size_t PlanProfile::case_count(InputCase c) const {
    std::size_t n = 0;
    for (const NodeProfile& np : nodes) {
        if (np.input_case == c) ++n;
    }
    return n;
}

double PlanProfile::case_fraction(InputCase c) const {
    if (nodes.empty()) return 0.0;
    return static_cast<double>(case_count(c)) / static_cast<double>(nodes.size());
}

PlanProfile profile(const ExecutionPlan& plan) {
    PlanProfile out;
    out.node_count = plan.nodes().size();
    for (const PlanNode& n : plan.nodes()) {
        NodeProfile np;
        np.id = n.id;
        const auto& preds = plan.predecessors(n.id);
        const auto& succs = plan.successors(n.id);
        np.in_degree = preds.size();
        for (const NodeId& u : preds) {
            if (plan.classify(u, n.id) == EdgeClass::CrossEnclave) ++np.cross_in_degree;
        }
        for (const NodeId& s : succs) {
            if (plan.classify(n.id, s) == EdgeClass::CrossEnclave) ++np.cross_out_degree;
        }
        np.terminal = succs.empty();
        if (np.in_degree == 0) {
            np.input_case = InputCase::Source;
        } else if (np.in_degree == 1) {
            np.input_case = np.cross_in_degree == 1 ? InputCase::CrossEnclaveSingle
                                                    : InputCase::SameEnclaveSingle;
        } else {
            np.input_case = InputCase::MultiPredecessor;
        }
        out.nodes.push_back(np);
    }
    return out;
}

OpCounters predict_cloud_ops(const PlanProfile& profile) {
    OpCounters ops;
    for (const NodeProfile& np : profile.nodes) {
        ops.con_count += 1;
        switch (np.input_case) {
            case InputCase::Source:
            case InputCase::SameEnclaveSingle:
                break;
            case InputCase::CrossEnclaveSingle:
                ops.xor_count += 1;
                ops.hash_count += 1;
                break;
            case InputCase::MultiPredecessor:
                ops.add_count += np.in_degree - 1;
                ops.xor_count += np.cross_in_degree;
                ops.hash_count += np.cross_in_degree;
                break;
        }
        ops.hash_count += 2 * np.cross_out_degree;
        ops.xor_count += np.cross_out_degree;
        if (np.terminal) {
            ops.hash_count += 1;
        }
    }
    return ops;
}

OpCounters predict_user_ops(const PlanProfile& profile) {
    OpCounters ops;
    for (const NodeProfile& np : profile.nodes) {
        ops.con_count += 1;
        if (np.input_case == InputCase::MultiPredecessor) {
            ops.add_count += np.in_degree - 1;
        }
        ops.hash_count += np.cross_out_degree;
        if (np.terminal) {
            ops.hash_count += 1;
        }
    }
    return ops;
}

namespace {

Tag derived_tag(const Tag& base, std::size_t copy) {
    Bytes input(base.octets.begin(), base.octets.end());
    input.push_back(static_cast<Byte>(copy >> 8));
    input.push_back(static_cast<Byte>(copy));
    Digest d = hash_bytes(as_span(input));
    return Tag::from_bytes(ByteSpan(d.octets.data(), kTagSize));
}

}  // namespace

ExecutionPlan scale_plan(const ExecutionPlan& base, std::size_t copies) {
    if (copies <= 1) {
        return base;
    }
    std::vector<PlanNode> nodes;
    std::vector<Edge> edges;
    auto copy_id = [](const NodeId& id, std::size_t c) {
        return c == 0 ? id : id + "@" + std::to_string(c);
    };
    std::vector<NodeId> sources;
    for (const PlanNode& n : base.nodes()) {
        if (base.predecessors(n.id).empty()) sources.push_back(n.id);
    }
    const NodeId base_sink = base.sink();
    for (std::size_t c = 0; c < copies; ++c) {
        for (const PlanNode& n : base.nodes()) {
            PlanNode copy = n;
            copy.id = copy_id(n.id, c);
            if (c > 0) copy.tag = derived_tag(n.tag, c);
            nodes.push_back(std::move(copy));
        }
        for (const Edge& e : base.edges()) {
            edges.push_back(Edge{copy_id(e.from, c), copy_id(e.to, c)});
        }
        if (c > 0) {
            for (const NodeId& s : sources) {
                edges.push_back(Edge{copy_id(base_sink, c - 1), copy_id(s, c)});
            }
        }
    }
    ExecutionPlan scaled(std::move(nodes), std::move(edges));
    if (auto issue = scaled.validate()) {
        throw Error(Errc::InvalidPlan, "scaled plan invalid: " + issue->to_string());
    }
    return scaled;
}

OverheadRow benchmark_overhead(const ExecutionPlan& plan, const FunctionRegistry& fns,
                               ByteSpan data, const Nonce& r, std::size_t repetitions) {
    if (repetitions == 0) {
        throw Error(Errc::InvalidArgument, "repetitions must be positive");
    }
    using clock = std::chrono::steady_clock;
    const std::size_t n = plan.nodes().size();

    ExecOptions with_chain;
    ExecOptions without_chain;
    without_chain.chain_enabled = false;

    // Warmup both configurations, then check the workload is large
    // enough for the percentage to mean anything. The fastest of three
    // bare runs estimates the true cost; transient stalls only inflate.
    execute_plan(plan, fns, data, r, with_chain);
    double bare_ms = std::numeric_limits<double>::infinity();
    for (int probe = 0; probe < 3; ++probe) {
        auto bare_start = clock::now();
        execute_plan(plan, fns, data, r, without_chain);
        bare_ms = std::min(bare_ms, std::chrono::duration<double, std::milli>(
                                        clock::now() - bare_start)
                                        .count());
    }
    if (bare_ms / static_cast<double>(n) < 1.0) {
        throw Error(Errc::WorkloadTooSmall,
                    "per-node cost " + std::to_string(bare_ms / static_cast<double>(n)) +
                        " ms is below 1 ms");
    }

    double total_with = 0;
    double total_without = 0;
    std::vector<double> bookkeeping_samples;
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        std::chrono::nanoseconds bookkeeping{0};
        with_chain.chain_time = &bookkeeping;
        auto t0 = clock::now();
        execute_plan(plan, fns, data, r, with_chain);
        auto t1 = clock::now();
        execute_plan(plan, fns, data, r, without_chain);
        auto t2 = clock::now();
        total_with += std::chrono::duration<double, std::milli>(t1 - t0).count();
        total_without += std::chrono::duration<double, std::milli>(t2 - t1).count();
        bookkeeping_samples.push_back(
            std::chrono::duration<double, std::milli>(bookkeeping).count());
    }
    // Scheduling stalls inside the microsecond-scale bracketed sections
    // only ever inflate a sample; the median discards them.
    std::sort(bookkeeping_samples.begin(), bookkeeping_samples.end());
    const double bookkeeping_median = bookkeeping_samples[bookkeeping_samples.size() / 2];

    OverheadRow row;
    row.nodes = n;
    std::set<EnclaveId> enclaves;
    for (const PlanNode& node : plan.nodes()) enclaves.insert(node.enclave);
    row.enclaves = enclaves.size();
    row.mean_ms_with = total_with / static_cast<double>(repetitions);
    row.mean_ms_without = total_without / static_cast<double>(repetitions);
    row.delta_ms = row.mean_ms_with - row.mean_ms_without;
    row.delta_pct = row.mean_ms_without > 0 ? 100.0 * row.delta_ms / row.mean_ms_without : 0.0;
    row.bookkeeping_ms = bookkeeping_median;
    return row;
}

double linear_fit_r2(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(Errc::InvalidArgument, "need at least two points");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0) {
        throw Error(Errc::InvalidArgument, "degenerate x values");
    }
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fit = slope * x[i] + intercept;
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    if (ss_tot == 0) {
        return 1.0;
    }
    return 1.0 - ss_res / ss_tot;
}

}  // namespace enchain
