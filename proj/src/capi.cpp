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

#include "enchain/enchain.h"

#include <memory>
#include <new>
#include <string>

#include "error.hpp"
#include "pipeline.hpp"
#include "scenario.hpp"

namespace {

thread_local std::string g_last_error;

struct ReportImpl {
    std::string text;
    std::string json;
    enchain_verdict verdict = ENCHAIN_VERDICT_NONE;
};

enchain::Scenario* unwrap(enchain_scenario* s) {
    return reinterpret_cast<enchain::Scenario*>(s);
}

const enchain::Scenario* unwrap(const enchain_scenario* s) {
    return reinterpret_cast<const enchain::Scenario*>(s);
}

ReportImpl* unwrap(enchain_report* r) { return reinterpret_cast<ReportImpl*>(r); }

const ReportImpl* unwrap(const enchain_report* r) {
    return reinterpret_cast<const ReportImpl*>(r);
}

enchain_status status_of(const enchain::Error& e) {
    using enchain::Errc;
    switch (e.code()) {
        case Errc::ParseError:
        case Errc::InvalidPlan:
            return ENCHAIN_ERR_PARSE;
        case Errc::IoError:
            return ENCHAIN_ERR_IO;
        case Errc::InvalidArgument:
            return ENCHAIN_ERR_INVALID_ARGUMENT;
        case Errc::BaselineFailed:
            return ENCHAIN_ERR_BASELINE_FAILED;
        case Errc::WorkloadTooSmall:
            return ENCHAIN_ERR_WORKLOAD_TOO_SMALL;
        default:
            return ENCHAIN_ERR_RUNTIME;
    }
}

template <typename Fn>
enchain_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return ENCHAIN_OK;
    } catch (const enchain::Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return ENCHAIN_ERR_RUNTIME;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ENCHAIN_ERR_RUNTIME;
    }
}

enchain_status finish_report(ReportImpl* impl, enchain_report** out) {
    *out = reinterpret_cast<enchain_report*>(impl);
    return ENCHAIN_OK;
}

}  // namespace

extern "C" {

enchain_status enchain_scenario_from_file(const char* path, enchain_scenario** out) {
    if (!path || !out) {
        g_last_error = "null argument";
        return ENCHAIN_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        auto* scenario = new enchain::Scenario(enchain::load_scenario_file(path));
        *out = reinterpret_cast<enchain_scenario*>(scenario);
    });
}

enchain_status enchain_scenario_from_json(const char* json_text, enchain_scenario** out) {
    if (!json_text || !out) {
        g_last_error = "null argument";
        return ENCHAIN_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        auto* scenario = new enchain::Scenario(enchain::parse_scenario_json(json_text));
        *out = reinterpret_cast<enchain_scenario*>(scenario);
    });
}

void enchain_scenario_free(enchain_scenario* scenario) { delete unwrap(scenario); }

enchain_status enchain_run(const enchain_scenario* scenario, const enchain_run_options* options,
                           enchain_report** out) {
    if (!scenario || !out) {
        g_last_error = "null argument";
        return ENCHAIN_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        enchain::RunOptions run_opts;
        if (options) {
            if (options->has_seed) run_opts.seed_override = options->seed;
            run_opts.replay_experiment = options->replay != 0;
            if (options->save_envelopes_path) {
                run_opts.save_envelopes_path = options->save_envelopes_path;
            }
        }
        enchain::RunReport report = enchain::run_scenario(*unwrap(scenario), run_opts);
        auto impl = std::make_unique<ReportImpl>();
        impl->text = report.to_text();
        impl->json = report.to_json();
        impl->verdict =
            report.verdict.accepted ? ENCHAIN_VERDICT_ACCEPT : ENCHAIN_VERDICT_REJECT;
        finish_report(impl.release(), out);
    });
}

enchain_status enchain_trace(const enchain_scenario* scenario, enchain_trace_side side,
                             enchain_report** out) {
    if (!scenario || !out) {
        g_last_error = "null argument";
        return ENCHAIN_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        enchain::TraceSide trace_side = enchain::TraceSide::Both;
        if (side == ENCHAIN_TRACE_USER) trace_side = enchain::TraceSide::User;
        if (side == ENCHAIN_TRACE_CLOUD) trace_side = enchain::TraceSide::Cloud;
        enchain::TraceReport report = enchain::trace_scenario(*unwrap(scenario), trace_side);
        auto impl = std::make_unique<ReportImpl>();
        impl->text = report.to_text();
        impl->json = report.to_json();
        impl->verdict = ENCHAIN_VERDICT_NONE;
        finish_report(impl.release(), out);
    });
}

enchain_status enchain_campaign(const enchain_scenario* scenario,
                                const enchain_campaign_options* options, enchain_report** out) {
    if (!scenario || !out) {
        g_last_error = "null argument";
        return ENCHAIN_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        enchain::CampaignOptions campaign_opts;
        if (options) {
            if (options->has_seed) campaign_opts.seed_override = options->seed;
            campaign_opts.random_ddrc = options->random_ddrc;
            campaign_opts.random_otm = options->random_otm;
        }
        enchain::CampaignOutcome outcome =
            enchain::campaign_scenario(*unwrap(scenario), campaign_opts);
        auto impl = std::make_unique<ReportImpl>();
        impl->text = outcome.to_text();
        impl->json = outcome.to_json();
        impl->verdict = outcome.report.all_detected() ? ENCHAIN_VERDICT_ACCEPT
                                                      : ENCHAIN_VERDICT_REJECT;
        finish_report(impl.release(), out);
    });
}

enchain_status enchain_bench(const enchain_scenario* scenario,
                             const enchain_bench_options* options, enchain_report** out) {
    if (!scenario || !out) {
        g_last_error = "null argument";
        return ENCHAIN_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        enchain::BenchOptions bench_opts;
        if (options) {
            if (options->has_seed) bench_opts.seed_override = options->seed;
            if (options->repetitions) bench_opts.repetitions = options->repetitions;
            if (options->scale_count) bench_opts.scale_count = options->scale_count;
        }
        if (options && options->repetitions == 0) {
            throw enchain::Error(enchain::Errc::InvalidArgument,
                                 "repetitions must be positive");
        }
        enchain::BenchOutcome outcome = enchain::bench_scenario(*unwrap(scenario), bench_opts);
        auto impl = std::make_unique<ReportImpl>();
        impl->text = outcome.to_text();
        impl->json = outcome.to_json();
        impl->verdict = ENCHAIN_VERDICT_NONE;
        finish_report(impl.release(), out);
    });
}

enchain_verdict enchain_report_verdict(const enchain_report* report) {
    if (!report) return ENCHAIN_VERDICT_NONE;
    return unwrap(report)->verdict;
}

const char* enchain_report_text(const enchain_report* report) {
    if (!report) return "";
    return unwrap(report)->text.c_str();
}

const char* enchain_report_json(const enchain_report* report) {
    if (!report) return "";
    return unwrap(report)->json.c_str();
}

void enchain_report_free(enchain_report* report) { delete unwrap(report); }

const char* enchain_last_error(void) { return g_last_error.c_str(); }

const char* enchain_version(void) { return "0.1.0"; }

}  // extern "C"
