#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <iterator>
#include <string>

#include "enchain/enchain.h"

namespace {

std::string scenario_file(const char* name) {
    return std::string(ENCHAIN_SCENARIO_DIR) + "/" + name;
}

struct Scenario {
    enchain_scenario* ptr = nullptr;
    ~Scenario() { enchain_scenario_free(ptr); }
};

struct Report {
    enchain_report* ptr = nullptr;
    ~Report() { enchain_report_free(ptr); }
};

}  // namespace

TEST_CASE("scenario loads from file and runs to an accept verdict") {
    Scenario s;
    REQUIRE(enchain_scenario_from_file(scenario_file("hybrid.json").c_str(), &s.ptr) ==
            ENCHAIN_OK);
    Report r;
    REQUIRE(enchain_run(s.ptr, nullptr, &r.ptr) == ENCHAIN_OK);
    CHECK(enchain_report_verdict(r.ptr) == ENCHAIN_VERDICT_ACCEPT);
    std::string text = enchain_report_text(r.ptr);
    CHECK(text.find("verdict: Accept") != std::string::npos);
    std::string json = enchain_report_json(r.ptr);
    CHECK(json.find("\"accepted\": true") != std::string::npos);
}

TEST_CASE("seeded runs render byte-identical reports") {
    Scenario s;
    REQUIRE(enchain_scenario_from_file(scenario_file("hybrid.json").c_str(), &s.ptr) ==
            ENCHAIN_OK);
    enchain_run_options opts{};
    opts.has_seed = 1;
    opts.seed = 99;
    Report a;
    Report b;
    REQUIRE(enchain_run(s.ptr, &opts, &a.ptr) == ENCHAIN_OK);
    REQUIRE(enchain_run(s.ptr, &opts, &b.ptr) == ENCHAIN_OK);
    CHECK(std::string(enchain_report_text(a.ptr)) == enchain_report_text(b.ptr));
    CHECK(std::string(enchain_report_json(a.ptr)) == enchain_report_json(b.ptr));
    // A different seed moves the nonce and ciphertexts.
    opts.seed = 100;
    Report c;
    REQUIRE(enchain_run(s.ptr, &opts, &c.ptr) == ENCHAIN_OK);
    CHECK(std::string(enchain_report_text(a.ptr)) != enchain_report_text(c.ptr));
}

TEST_CASE("the tampered scenario is rejected") {
    Scenario s;
    REQUIRE(enchain_scenario_from_file(scenario_file("hybrid_tamper.json").c_str(), &s.ptr) ==
            ENCHAIN_OK);
    Report r;
    REQUIRE(enchain_run(s.ptr, nullptr, &r.ptr) == ENCHAIN_OK);
    CHECK(enchain_report_verdict(r.ptr) == ENCHAIN_VERDICT_REJECT);
    CHECK(std::string(enchain_report_text(r.ptr)).find("HashMismatch") != std::string::npos);
}

TEST_CASE("replay option rejects the replayed response") {
    Scenario s;
    REQUIRE(enchain_scenario_from_file(scenario_file("hybrid.json").c_str(), &s.ptr) ==
            ENCHAIN_OK);
    enchain_run_options opts{};
    opts.replay = 1;
    Report r;
    REQUIRE(enchain_run(s.ptr, &opts, &r.ptr) == ENCHAIN_OK);
    CHECK(enchain_report_verdict(r.ptr) == ENCHAIN_VERDICT_REJECT);
}

TEST_CASE("saved envelopes land on disk") {
    Scenario s;
    REQUIRE(enchain_scenario_from_file(scenario_file("hybrid.json").c_str(), &s.ptr) ==
            ENCHAIN_OK);
    std::string path = "capi_envelopes.json";
    enchain_run_options opts{};
    opts.save_envelopes_path = path.c_str();
    Report r;
    REQUIRE(enchain_run(s.ptr, &opts, &r.ptr) == ENCHAIN_OK);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body.find("request_envelope_hex") != std::string::npos);
    CHECK(body.find("response_envelope_hex") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("a single-node scenario traces to hash(r||tag)") {
    Scenario s;
    REQUIRE(enchain_scenario_from_json(R"({
        "enclaves": [1],
        "nodes": [{"id": "1", "tag_hex": "0000000000000001", "enclave": 1,
                   "function": "identity"}],
        "edges": [],
        "request": "one",
        "data_hex": "aa",
        "seed": 3
    })",
                                       &s.ptr) == ENCHAIN_OK);
    Report r;
    REQUIRE(enchain_trace(s.ptr, ENCHAIN_TRACE_USER, &r.ptr) == ENCHAIN_OK);
    std::string text = enchain_report_text(r.ptr);
    CHECK(text.find("H_1 = hash(r||tag_1)") != std::string::npos);
    CHECK(text.find("hash(r||tag_1)") != std::string::npos);
}

TEST_CASE("traces expose each side") {
    Scenario s;
    REQUIRE(enchain_scenario_from_file(scenario_file("hybrid.json").c_str(), &s.ptr) ==
            ENCHAIN_OK);
    Report user;
    REQUIRE(enchain_trace(s.ptr, ENCHAIN_TRACE_USER, &user.ptr) == ENCHAIN_OK);
    std::string user_text = enchain_report_text(user.ptr);
    CHECK(user_text.find("hash_user") != std::string::npos);
    CHECK(user_text.find("hash_cloud") == std::string::npos);
    CHECK(enchain_report_verdict(user.ptr) == ENCHAIN_VERDICT_NONE);

    Report both;
    REQUIRE(enchain_trace(s.ptr, ENCHAIN_TRACE_BOTH, &both.ptr) == ENCHAIN_OK);
    std::string both_text = enchain_report_text(both.ptr);
    CHECK(both_text.find("hash_user") != std::string::npos);
    CHECK(both_text.find("hash_cloud") != std::string::npos);
}

TEST_CASE("campaigns run generated attacks through the C surface") {
    Scenario s;
    REQUIRE(enchain_scenario_from_file(scenario_file("hybrid.json").c_str(), &s.ptr) ==
            ENCHAIN_OK);
    enchain_campaign_options opts{};
    opts.random_ddrc = 20;
    opts.random_otm = 20;
    Report r;
    REQUIRE(enchain_campaign(s.ptr, &opts, &r.ptr) == ENCHAIN_OK);
    CHECK(enchain_report_verdict(r.ptr) == ENCHAIN_VERDICT_ACCEPT);
    CHECK(std::string(enchain_report_json(r.ptr)).find("\"detection_rate\": 1.0") !=
          std::string::npos);
}

TEST_CASE("bench on a trivial workload reports WorkloadTooSmall") {
    Scenario s;
    REQUIRE(enchain_scenario_from_file(scenario_file("hybrid.json").c_str(), &s.ptr) ==
            ENCHAIN_OK);
    enchain_bench_options opts{};
    opts.repetitions = 1;
    opts.scale_count = 1;
    Report r;
    CHECK(enchain_bench(s.ptr, &opts, &r.ptr) == ENCHAIN_ERR_WORKLOAD_TOO_SMALL);
    CHECK(std::string(enchain_last_error()).find("1 ms") != std::string::npos);
}

TEST_CASE("parse failures carry a status and a message") {
    enchain_scenario* raw = nullptr;
    CHECK(enchain_scenario_from_json("{", &raw) == ENCHAIN_ERR_PARSE);
    CHECK(raw == nullptr);
    CHECK(std::string(enchain_last_error()).size() > 0);

    CHECK(enchain_scenario_from_file("/no/such/file.json", &raw) == ENCHAIN_ERR_IO);
}

TEST_CASE("null arguments are invalid, not crashes") {
    CHECK(enchain_scenario_from_file(nullptr, nullptr) == ENCHAIN_ERR_INVALID_ARGUMENT);
    CHECK(enchain_run(nullptr, nullptr, nullptr) == ENCHAIN_ERR_INVALID_ARGUMENT);
    CHECK(enchain_report_verdict(nullptr) == ENCHAIN_VERDICT_NONE);
    CHECK(std::string(enchain_report_text(nullptr)).empty());
    enchain_report_free(nullptr);
    enchain_scenario_free(nullptr);
}

TEST_CASE("version string is present") {
    CHECK(std::string(enchain_version()) == "0.1.0");
}
