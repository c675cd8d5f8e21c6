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

// Command-line front end. Talks to the library exclusively through the
// C API in enchain/enchain.h.
//
// Exit codes: 0 verification accepted (or command completed), 2 verdict
// rejected / attack detection below 100%, 1 operational error.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "enchain/enchain.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitReject = 2;

struct GlobalArgs {
    std::string scenario_path;
    std::string format = "text";
    std::uint64_t seed = 0;
    bool has_seed = false;
};

struct ScenarioHandle {
    enchain_scenario* ptr = nullptr;
    ~ScenarioHandle() { enchain_scenario_free(ptr); }
};

struct ReportHandle {
    enchain_report* ptr = nullptr;
    ~ReportHandle() { enchain_report_free(ptr); }
};

int fail() {
    std::fprintf(stderr, "error: %s\n", enchain_last_error());
    return kExitError;
}

bool load_scenario(const GlobalArgs& args, const std::string& positional,
                   ScenarioHandle& handle) {
    const std::string& path = !positional.empty() ? positional : args.scenario_path;
    if (path.empty()) {
        std::fprintf(stderr, "error: no scenario file given (use --scenario or a positional path)\n");
        return false;
    }
    enchain_status status = enchain_scenario_from_file(path.c_str(), &handle.ptr);
    if (status != ENCHAIN_OK) {
        std::fprintf(stderr, "error: %s\n", enchain_last_error());
        return false;
    }
    return true;
}

int emit(const GlobalArgs& args, const ReportHandle& report) {
    const char* body = args.format == "json" ? enchain_report_json(report.ptr)
                                             : enchain_report_text(report.ptr);
    std::fputs(body, stdout);
    switch (enchain_report_verdict(report.ptr)) {
        case ENCHAIN_VERDICT_REJECT:
            return kExitReject;
        case ENCHAIN_VERDICT_ACCEPT:
        case ENCHAIN_VERDICT_NONE:
            return kExitOk;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hash-chain verifiable execution of multi-enclave plans"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags remain valid after the subcommand

    GlobalArgs args;
    app.add_option("--scenario", args.scenario_path, "Scenario file (JSON)");
    app.add_option("--seed", args.seed, "Override the scenario seed")
        ->each([&args](const std::string&) { args.has_seed = true; });
    app.add_option("--format", args.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    std::string run_path;
    bool run_replay = false;
    std::string save_envelopes;
    CLI::App* run = app.add_subcommand("run", "Execute the four protocol phases and verify");
    run->add_option("path", run_path, "Scenario file (JSON)");
    run->add_flag("--replay", run_replay,
                  "Replay the response against a second request with a fresh nonce");
    run->add_option("--save-envelopes", save_envelopes,
                    "Persist request/response envelope hex dumps to this file");

    std::string trace_path;
    std::string trace_side = "both";
    CLI::App* trace = app.add_subcommand("trace", "Print symbolic hash-chain traces");
    trace->add_option("path", trace_path, "Scenario file (JSON)");
    trace->add_option("--side", trace_side, "Which side to print")
        ->check(CLI::IsMember({"user", "cloud", "both"}))
        ->capture_default_str();

    std::string campaign_path;
    std::uint32_t random_ddrc = 0;
    std::uint32_t random_otm = 0;
    CLI::App* campaign = app.add_subcommand("campaign", "Run attack batches and report detection");
    campaign->add_option("path", campaign_path, "Scenario file (JSON)");
    campaign->add_option("--random-ddrc", random_ddrc, "Generate N random plan mutations");
    campaign->add_option("--random-otm", random_otm, "Generate N random channel attacks");

    std::string bench_path;
    std::uint32_t reps = 5;
    std::uint32_t scales = 1;
    CLI::App* bench = app.add_subcommand("bench", "Measure hash-chain bookkeeping overhead");
    bench->add_option("path", bench_path, "Scenario file (JSON)");
    bench->add_option("--reps", reps, "Repetitions per configuration")->capture_default_str();
    bench->add_option("--scales", scales, "Chain the plan 1..N times, one row each")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        ScenarioHandle scenario;
        if (!load_scenario(args, run_path, scenario)) return kExitError;
        enchain_run_options options{};
        options.has_seed = args.has_seed ? 1 : 0;
        options.seed = args.seed;
        options.replay = run_replay ? 1 : 0;
        options.save_envelopes_path = save_envelopes.empty() ? nullptr : save_envelopes.c_str();
        ReportHandle report;
        enchain_status status = enchain_run(scenario.ptr, &options, &report.ptr);
        if (status != ENCHAIN_OK) return fail();
        return emit(args, report);
    }
    if (trace->parsed()) {
        ScenarioHandle scenario;
        if (!load_scenario(args, trace_path, scenario)) return kExitError;
        enchain_trace_side side = ENCHAIN_TRACE_BOTH;
        if (trace_side == "user") side = ENCHAIN_TRACE_USER;
        if (trace_side == "cloud") side = ENCHAIN_TRACE_CLOUD;
        ReportHandle report;
        enchain_status status = enchain_trace(scenario.ptr, side, &report.ptr);
        if (status != ENCHAIN_OK) return fail();
        return emit(args, report);
    }
    if (campaign->parsed()) {
        ScenarioHandle scenario;
        if (!load_scenario(args, campaign_path, scenario)) return kExitError;
        enchain_campaign_options options{};
        options.has_seed = args.has_seed ? 1 : 0;
        options.seed = args.seed;
        options.random_ddrc = random_ddrc;
        options.random_otm = random_otm;
        ReportHandle report;
        enchain_status status = enchain_campaign(scenario.ptr, &options, &report.ptr);
        if (status != ENCHAIN_OK) return fail();
        return emit(args, report);
    }
    // bench
    ScenarioHandle scenario;
    if (!load_scenario(args, bench_path, scenario)) return kExitError;
    if (reps == 0) {
        std::fprintf(stderr, "error: --reps must be positive\n");
        return kExitError;
    }
    enchain_bench_options options{};
    options.has_seed = args.has_seed ? 1 : 0;
    options.seed = args.seed;
    options.repetitions = reps;
    options.scale_count = scales;
    ReportHandle report;
    enchain_status status = enchain_bench(scenario.ptr, &options, &report.ptr);
    if (status != ENCHAIN_OK) return fail();
    return emit(args, report);
}
