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

#include "pipeline.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace enchain {

namespace {

using nlohmann::json;

std::optional<std::uint64_t> effective_seed(const Scenario& scenario,
                                            const std::optional<std::uint64_t>& override) {
    if (override.has_value()) return override;
    return scenario.seed;
}

json counters_json(const OpCounters& c) {
    return json{{"hash", c.hash_count}, {"xor", c.xor_count}, {"add", c.add_count},
                {"con", c.con_count}};
}

std::string counters_text(const OpCounters& c) {
    std::ostringstream os;
    os << "hash=" << c.hash_count << " xor=" << c.xor_count << " add=" << c.add_count
       << " con=" << c.con_count;
    return os.str();
}

json trace_json(const ExecutionTrace& t) {
    json nodes = json::array();
    for (const NodeTrace& n : t.nodes) {
        json entry{{"id", n.id},
                   {"h_hex", to_hex(as_span(n.h))},
                   {"chain_hex", to_hex(as_span(n.chain_out))}};
        if (t.side == "cloud") {
            entry["result_hex"] = to_hex(as_span(n.result));
        }
        if (!n.compact.empty()) {
            entry["value"] = n.compact;
        }
        nodes.push_back(std::move(entry));
    }
    json out{{"side", t.side}, {"nodes", std::move(nodes)},
             {"hash_hex", t.final_digest.hex()}};
    if (t.final_expr) {
        out["expression"] = t.final_expression();
    }
    return out;
}

struct PreparedRun {
    std::unique_ptr<RandomSource> rng;
    FunctionRegistry fns;
    PlanRegistry plans;
};

PreparedRun prepare(const Scenario& scenario, const std::optional<std::uint64_t>& seed_override) {
    PreparedRun p;
    p.rng = make_random_source(effective_seed(scenario, seed_override));
    p.fns = FunctionRegistry::with_builtins();
    p.plans.add(scenario.request_id, scenario.plan);
    return p;
}

struct AttackSetup {
    std::optional<ExecutionPlan> scheduled;  // DDRC override
    std::optional<ChannelTap> tap;           // OTM hook
};

AttackSetup configure_attack(const ExecutionPlan& plan, const AttackSpec& spec) {
    AttackSetup setup;
    if (const auto* ddrc = std::get_if<DdrcAttack>(&spec.kind)) {
        setup.scheduled = apply_ddrc(plan, *ddrc);
    } else if (const auto* tamper = std::get_if<OtmTamper>(&spec.kind)) {
        setup.tap = apply_otm(plan, *tamper);
    } else {
        setup.tap = apply_otm(plan, std::get<OtmMisroute>(spec.kind));
    }
    return setup;
}

}  // namespace

std::string RunReport::to_text() const {
    std::ostringstream os;
    os << "request: " << request_id << "\n";
    os << "plan fingerprint: " << plan_fingerprint.hex() << "\n";
    os << "nonce r: " << nonce.hex() << "\n";
    if (!attack_label.empty()) {
        os << "attack: " << attack_label << "\n";
    }
    os << "request envelope:  " << request_envelope_hex << "\n";
    os << "response envelope: " << response_envelope_hex << "\n";
    os << "hash_user  (expected) = " << hash_user.hex() << "\n";
    os << "hash_cloud (received) = " << hash_cloud.hex() << "\n";
    os << "verdict: " << verdict.to_string() << "\n";
    if (verdict.accepted) {
        os << "result: " << to_hex(as_span(result)) << "\n";
    }
    os << "cloud ops: " << counters_text(cloud_ops)
       << "  (predicted " << counters_text(predicted_cloud_ops) << ")\n";
    os << "user ops:  " << counters_text(user_ops)
       << "  (predicted " << counters_text(predicted_user_ops) << ")\n";
    if (replay_ran) {
        os << "replayed response against fresh nonce: " << replay_verdict.to_string() << "\n";
    }
    return os.str();
}

std::string RunReport::to_json() const {
    json out{{"request", request_id},
             {"plan_fingerprint", plan_fingerprint.hex()},
             {"nonce_hex", nonce.hex()},
             {"request_envelope_hex", request_envelope_hex},
             {"response_envelope_hex", response_envelope_hex},
             {"hash_user", hash_user.hex()},
             {"hash_cloud", hash_cloud.hex()},
             {"verdict", verdict.to_string()},
             {"accepted", verdict.accepted},
             {"cloud_ops", counters_json(cloud_ops)},
             {"user_ops", counters_json(user_ops)},
             {"predicted_cloud_ops", counters_json(predicted_cloud_ops)},
             {"predicted_user_ops", counters_json(predicted_user_ops)}};
    if (!attack_label.empty()) {
        out["attack"] = attack_label;
    }
    if (verdict.accepted) {
        out["result_hex"] = to_hex(as_span(result));
    } else {
        out["reject_reason"] = reject_reason_name(*verdict.reason);
    }
    if (replay_ran) {
        out["replay_verdict"] = replay_verdict.to_string();
    }
    return out.dump(2) + "\n";
}

RunReport run_scenario(const Scenario& scenario, const RunOptions& options) {
    if (scenario.attacks.size() > 1) {
        throw Error(Errc::InvalidArgument,
                    "run applies at most one attack; use a campaign for " +
                        std::to_string(scenario.attacks.size()));
    }
    if (options.replay_experiment && !scenario.attacks.empty()) {
        throw Error(Errc::InvalidArgument, "replay experiment runs without configured attacks");
    }

    PreparedRun p = prepare(scenario, options.seed_override);
    Session session = Session::establish(*p.rng);

    AttackSetup setup;
    RunReport report;
    if (!scenario.attacks.empty()) {
        setup = configure_attack(scenario.plan, scenario.attacks.front());
        report.attack_label = scenario.attacks.front().label();
    }

    Session::BuiltRequest built =
        session.build_request(as_span(scenario.data), scenario.request_id, p.plans);

    CloudOptions cloud_opts;
    cloud_opts.tap = setup.tap ? &*setup.tap : nullptr;
    cloud_opts.plan_override = setup.scheduled ? &*setup.scheduled : nullptr;
    Session::CloudOutcome cloud = session.cloud_handle(built.envelope, p.plans, p.fns, cloud_opts);

    Session::ReceiveOutcome received =
        session.user_receive(scenario.plan, built.nonce, cloud.envelope);

    report.request_id = scenario.request_id;
    report.plan_fingerprint = scenario.plan.fingerprint();
    report.nonce = built.nonce;
    report.request_envelope_hex = to_hex(as_span(built.envelope.ciphertext));
    report.response_envelope_hex = to_hex(as_span(cloud.envelope.ciphertext));
    report.hash_user = received.hash_user;
    report.hash_cloud = received.hash_cloud;
    report.verdict = received.verdict;
    report.result = received.result;
    report.cloud_ops = cloud.exec.counters;
    report.user_ops = received.user.counters;
    // Predictions describe what actually ran: the attacked plan on the
    // cloud side, the honest plan on the user side.
    report.predicted_cloud_ops =
        predict_cloud_ops(profile(setup.scheduled ? *setup.scheduled : scenario.plan));
    report.predicted_user_ops = predict_user_ops(profile(scenario.plan));

    if (options.replay_experiment) {
        Session::BuiltRequest second =
            session.build_request(as_span(scenario.data), scenario.request_id, p.plans);
        Session::ReceiveOutcome replayed =
            session.user_receive(scenario.plan, second.nonce, cloud.envelope);
        report.replay_ran = true;
        report.replay_verdict = replayed.verdict;
        report.verdict = replayed.verdict;
    }

    if (!options.save_envelopes_path.empty()) {
        json dump{{"request", scenario.request_id},
                  {"nonce_hex", report.nonce.hex()},
                  {"request_envelope_hex", report.request_envelope_hex},
                  {"response_envelope_hex", report.response_envelope_hex}};
        std::ofstream out(options.save_envelopes_path, std::ios::binary);
        if (!out) {
            throw Error(Errc::IoError, "cannot write " + options.save_envelopes_path);
        }
        out << dump.dump(2) << "\n";
    }
    return report;
}

std::string TraceReport::to_text() const {
    std::ostringstream os;
    if (side == TraceSide::User || side == TraceSide::Both) {
        os << "--- user side ---\n" << user.to_text();
    }
    if (side == TraceSide::Cloud || side == TraceSide::Both) {
        os << "--- cloud side ---\n" << cloud.to_text();
    }
    return os.str();
}

std::string TraceReport::to_json() const {
    json out;
    if (side == TraceSide::User || side == TraceSide::Both) {
        out["user"] = trace_json(user);
    }
    if (side == TraceSide::Cloud || side == TraceSide::Both) {
        out["cloud"] = trace_json(cloud);
    }
    return out.dump(2) + "\n";
}

TraceReport trace_scenario(const Scenario& scenario, TraceSide side,
                           std::optional<std::uint64_t> seed_override) {
    PreparedRun p = prepare(scenario, seed_override);
    const Nonce r = p.rng->nonce();

    TraceReport report;
    report.side = side;
    if (side == TraceSide::User || side == TraceSide::Both) {
        UserHashOptions opts;
        opts.symbolic = true;
        report.user = compute_user_hash(scenario.plan, r, opts).trace;
    }
    if (side == TraceSide::Cloud || side == TraceSide::Both) {
        ExecOptions opts;
        opts.symbolic = true;
        report.cloud =
            execute_plan(scenario.plan, p.fns, as_span(scenario.data), r, opts).trace;
    }
    return report;
}

std::string CampaignOutcome::to_text() const {
    std::ostringstream os;
    os << "baseline: " << (report.baseline_accepted ? "Accept" : "Reject") << "\n";
    os << "attacks: " << report.rows.size() << ", detected: " << report.detected_count()
       << ", detection rate: " << std::fixed << std::setprecision(1)
       << report.detection_rate() * 100.0 << "%\n";
    std::size_t i = 0;
    for (const CampaignRow& row : report.rows) {
        os << "  " << ++i << ". " << row.attack << " -> " << row.verdict
           << (row.detected ? " [detected]" : " [MISSED]") << "\n";
    }
    return os.str();
}

std::string CampaignOutcome::to_json() const {
    json rows = json::array();
    for (const CampaignRow& row : report.rows) {
        rows.push_back(json{{"attack", row.attack},
                            {"verdict", row.verdict},
                            {"detected", row.detected}});
    }
    json out{{"baseline_accepted", report.baseline_accepted},
             {"attack_count", report.rows.size()},
             {"detected_count", report.detected_count()},
             {"detection_rate", report.detection_rate()},
             {"rows", std::move(rows)}};
    return out.dump(2) + "\n";
}

CampaignOutcome campaign_scenario(const Scenario& scenario, const CampaignOptions& options) {
    PreparedRun p = prepare(scenario, options.seed_override);

    auto run_once = [&](const AttackSpec* spec) -> Verdict {
        Session session = Session::establish(*p.rng);
        AttackSetup setup;
        if (spec) {
            setup = configure_attack(scenario.plan, *spec);
        }
        Session::BuiltRequest built =
            session.build_request(as_span(scenario.data), scenario.request_id, p.plans);
        CloudOptions cloud_opts;
        cloud_opts.tap = setup.tap ? &*setup.tap : nullptr;
        cloud_opts.plan_override = setup.scheduled ? &*setup.scheduled : nullptr;
        Session::CloudOutcome cloud =
            session.cloud_handle(built.envelope, p.plans, p.fns, cloud_opts);
        return session.user_receive(scenario.plan, built.nonce, cloud.envelope).verdict;
    };

    CampaignOutcome outcome;
    Verdict baseline = run_once(nullptr);
    outcome.report.baseline_accepted = baseline.accepted;
    if (!baseline.accepted) {
        throw Error(Errc::BaselineFailed,
                    "honest run verdict " + baseline.to_string());
    }

    auto execute_spec = [&](const AttackSpec& spec) {
        Verdict verdict = run_once(&spec);
        outcome.report.rows.push_back(
            CampaignRow{spec.label(), verdict.to_string(), !verdict.accepted});
    };

    for (const AttackSpec& spec : scenario.attacks) {
        execute_spec(spec);
    }
    for (std::size_t i = 0; i < options.random_ddrc; ++i) {
        execute_spec(random_ddrc(scenario.plan, *p.rng));
    }
    const std::size_t tamper_bound = scenario.data.empty() ? 1 : scenario.data.size();
    for (std::size_t i = 0; i < options.random_otm; ++i) {
        // A generated tamper can still reference an octet past the
        // actual payload on exotic workloads; redraw a few times.
        bool done = false;
        for (int attempt = 0; attempt < 20 && !done; ++attempt) {
            AttackSpec spec = random_otm(scenario.plan, *p.rng, tamper_bound);
            try {
                execute_spec(spec);
                done = true;
            } catch (const Error& e) {
                if (e.code() != Errc::NoSuchMessage) throw;
            }
        }
        if (!done) {
            throw Error(Errc::AttackInvalid,
                        "could not generate an applicable OTM attack for this scenario");
        }
    }
    return outcome;
}

std::string BenchOutcome::to_text() const {
    std::ostringstream os;
    os << "repetitions: " << report.repetitions << "\n";
    os << std::left << std::setw(7) << "nodes" << std::setw(10) << "enclaves" << std::right
       << std::setw(14) << "with_ms" << std::setw(14) << "without_ms" << std::setw(12)
       << "delta_ms" << std::setw(11) << "delta_pct" << std::setw(16) << "bookkeeping_ms"
       << "\n";
    for (const OverheadRow& row : report.rows) {
        os << std::left << std::setw(7) << row.nodes << std::setw(10) << row.enclaves
           << std::right << std::fixed << std::setprecision(3) << std::setw(14)
           << row.mean_ms_with << std::setw(14) << row.mean_ms_without << std::setw(12)
           << row.delta_ms << std::setw(10) << std::setprecision(2) << row.delta_pct << "%"
           << std::setw(16) << std::setprecision(4) << row.bookkeeping_ms << "\n";
    }
    return os.str();
}

std::string BenchOutcome::to_json() const {
    json rows = json::array();
    for (const OverheadRow& row : report.rows) {
        rows.push_back(json{{"nodes", row.nodes},
                            {"enclaves", row.enclaves},
                            {"mean_ms_with", row.mean_ms_with},
                            {"mean_ms_without", row.mean_ms_without},
                            {"delta_ms", row.delta_ms},
                            {"delta_pct", row.delta_pct},
                            {"bookkeeping_ms", row.bookkeeping_ms}});
    }
    json out{{"repetitions", report.repetitions}, {"rows", std::move(rows)}};
    return out.dump(2) + "\n";
}

BenchOutcome bench_scenario(const Scenario& scenario, const BenchOptions& options) {
    if (options.repetitions == 0) {
        throw Error(Errc::InvalidArgument, "repetitions must be positive");
    }
    if (options.scale_count == 0) {
        throw Error(Errc::InvalidArgument, "scale count must be positive");
    }
    PreparedRun p = prepare(scenario, options.seed_override);

    BenchOutcome outcome;
    outcome.report.repetitions = options.repetitions;
    for (std::size_t k = 1; k <= options.scale_count; ++k) {
        ExecutionPlan scaled = scale_plan(scenario.plan, k);
        const Nonce r = p.rng->nonce();
        outcome.report.rows.push_back(
            benchmark_overhead(scaled, p.fns, as_span(scenario.data), r, options.repetitions));
    }
    return outcome;
}

}  // namespace enchain
