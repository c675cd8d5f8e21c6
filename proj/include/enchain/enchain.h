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

/*
 * C interface to the enchain library: hash-chain verification of
 * multi-enclave execution plans, with attack injection and an
 * operation-cost model.
 *
 * All entry points are thread-compatible: distinct handles may be used
 * from distinct threads. On failure they return a nonzero status and
 * leave a message readable through enchain_last_error() on the calling
 * thread.
 */

#ifndef ENCHAIN_H
#define ENCHAIN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum enchain_status {
    ENCHAIN_OK = 0,
    ENCHAIN_ERR_PARSE = 1,          /* malformed scenario file or JSON */
    ENCHAIN_ERR_IO = 2,             /* file not readable/writable */
    ENCHAIN_ERR_INVALID_ARGUMENT = 3,
    ENCHAIN_ERR_BASELINE_FAILED = 4,    /* honest campaign run rejected */
    ENCHAIN_ERR_WORKLOAD_TOO_SMALL = 5, /* bench below 1 ms per node */
    ENCHAIN_ERR_RUNTIME = 6,        /* any other execution failure */
} enchain_status;

typedef enum enchain_verdict {
    ENCHAIN_VERDICT_ACCEPT = 0,
    ENCHAIN_VERDICT_REJECT = 1,
    ENCHAIN_VERDICT_NONE = 2, /* report carries no verdict (trace/bench) */
} enchain_verdict;

typedef enum enchain_trace_side {
    ENCHAIN_TRACE_USER = 0,
    ENCHAIN_TRACE_CLOUD = 1,
    ENCHAIN_TRACE_BOTH = 2,
} enchain_trace_side;

/* Opaque handles. */
typedef struct enchain_scenario enchain_scenario;
typedef struct enchain_report enchain_report;

/* Scenario loading. The returned handle must be released with
 * enchain_scenario_free. */
enchain_status enchain_scenario_from_file(const char* path, enchain_scenario** out);
enchain_status enchain_scenario_from_json(const char* json_text, enchain_scenario** out);
void enchain_scenario_free(enchain_scenario* scenario);

typedef struct enchain_run_options {
    int has_seed;       /* overrides the scenario seed when nonzero */
    uint64_t seed;
    int replay;         /* replay the response against a fresh nonce */
    const char* save_envelopes_path; /* NULL to skip */
} enchain_run_options;

typedef struct enchain_campaign_options {
    int has_seed;
    uint64_t seed;
    uint32_t random_ddrc; /* generated plan mutations */
    uint32_t random_otm;  /* generated channel attacks */
} enchain_campaign_options;

typedef struct enchain_bench_options {
    int has_seed;
    uint64_t seed;
    uint32_t repetitions; /* per configuration; must be positive */
    uint32_t scale_count; /* rows for the plan chained 1..scale_count times */
} enchain_bench_options;

/* Commands. Options pointers may be NULL for defaults. Each returns a
 * report handle to be released with enchain_report_free. */
enchain_status enchain_run(const enchain_scenario* scenario, const enchain_run_options* options,
                           enchain_report** out);
enchain_status enchain_trace(const enchain_scenario* scenario, enchain_trace_side side,
                             enchain_report** out);
enchain_status enchain_campaign(const enchain_scenario* scenario,
                                const enchain_campaign_options* options, enchain_report** out);
enchain_status enchain_bench(const enchain_scenario* scenario,
                             const enchain_bench_options* options, enchain_report** out);

/* Report access. Returned strings live as long as the report handle. */
enchain_verdict enchain_report_verdict(const enchain_report* report);
const char* enchain_report_text(const enchain_report* report);
const char* enchain_report_json(const enchain_report* report);
void enchain_report_free(enchain_report* report);

/* Message for the most recent failing call on this thread; empty string
 * when nothing failed yet. */
const char* enchain_last_error(void);

const char* enchain_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ENCHAIN_H */
