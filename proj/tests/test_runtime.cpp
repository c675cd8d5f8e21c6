#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "generators.hpp"
#include "runtime.hpp"

using namespace enchain;
using testfix::hybrid_plan;
using testfix::tag_of;

namespace {

const FunctionRegistry& builtins() {
    static FunctionRegistry reg = FunctionRegistry::with_builtins();
    return reg;
}

Nonce nonce_of(Byte fill) {
    Nonce r;
    r.octets.fill(fill);
    return r;
}

ExecutionPlan same_enclave_chain2() {
    std::vector<PlanNode> nodes{{"a", tag_of(1), 1, "identity"},
                                {"b", tag_of(2), 1, "identity"}};
    return ExecutionPlan(std::move(nodes), {{"a", "b"}});
}

}  // namespace

TEST_CASE("source node hashes r||tag") {
    ExecutionPlan plan({{"s", tag_of(9), 1, "identity"}}, {});
    Nonce r = nonce_of(0xab);
    ExecutionResult out = execute_plan(plan, builtins(), as_span(Bytes{1, 2}), r);
    // Hand evaluation through the raw primitives.
    Bytes tag = testfix::tag_octets(9);
    Bytes h = concat_bytes(r.span(), as_span(tag));
    CHECK(out.hash_cloud == hash_bytes(as_span(h)));
    CHECK(out.result == Bytes{1, 2});
}

TEST_CASE("same-enclave chain folds tags by concatenation") {
    Nonce r = nonce_of(0x5c);
    Bytes data = to_bytes("payload");
    ExecutionResult out = execute_plan(same_enclave_chain2(), builtins(), as_span(data), r);
    Bytes t1 = testfix::tag_octets(1);
    Bytes t2 = testfix::tag_octets(2);
    Bytes expected_h = concat_bytes(as_span(concat_bytes(r.span(), as_span(t1))), as_span(t2));
    CHECK(out.hash_cloud == hash_bytes(as_span(expected_h)));
    // Data threads through identity nodes unchanged.
    CHECK(out.result == data);
}

TEST_CASE("same-enclave predecessor contributes its raw hash input") {
    ExecutionResult out =
        execute_plan(same_enclave_chain2(), builtins(), as_span(Bytes{7}), nonce_of(1),
                     ExecOptions{});
    const NodeTrace& a = out.trace.nodes[0];
    const NodeTrace& b = out.trace.nodes[1];
    // b's hash input is exactly a's h followed by b's tag.
    Bytes t2 = testfix::tag_octets(2);
    CHECK(b.h == concat_bytes(as_span(a.h), as_span(t2)));
    CHECK(a.chain_out == a.h);
}

TEST_CASE("cross-enclave chain values cancel against result hashes") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 40; ++i) {
        ExecutionPlan plan = testgen::random_plan(rng, {.require_cross_edge = true});
        Bytes data = testgen::random_data(rng);
        Nonce r = testgen::random_nonce(rng);

        std::vector<BoundaryMessage> seen;
        ChannelTap recorder;
        recorder.hook = [&seen](BoundaryMessage& m) { seen.push_back(m); };
        ExecOptions opts;
        opts.tap = &recorder;
        ExecutionResult out = execute_plan(plan, builtins(), as_span(data), r, opts);

        std::map<NodeId, const NodeTrace*> by_id;
        for (const NodeTrace& nt : out.trace.nodes) by_id[nt.id] = &nt;
        CHECK_FALSE(seen.empty());
        for (const BoundaryMessage& m : seen) {
            const NodeTrace& sender = *by_id.at(m.from);
            // Only the hashed form crosses: 32 octets, xor of hash(h)
            // and hash(res), never the raw h.
            CHECK(m.chain.octets.size() == kDigestSize);
            CHECK(xor_digests(m.chain, hash_bytes(as_span(m.result))) ==
                  hash_bytes(as_span(sender.h)));
            CHECK(m.result == sender.result);
        }
    }
}

TEST_CASE("identity tap and absent tap agree") {
    ChannelTap identity;  // no hook
    ExecOptions with_tap;
    with_tap.tap = &identity;
    Bytes data = to_bytes("x");
    Nonce r = nonce_of(3);
    ExecutionResult a = execute_plan(hybrid_plan(), builtins(), as_span(data), r, with_tap);
    ExecutionResult b = execute_plan(hybrid_plan(), builtins(), as_span(data), r);
    CHECK(a.hash_cloud == b.hash_cloud);
    CHECK(a.result == b.result);
}

TEST_CASE("execution is deterministic for fixed plan, data and nonce") {
    std::mt19937_64 rng(43);
    ExecutionPlan plan = testgen::random_plan(rng);
    Bytes data = testgen::random_data(rng);
    Nonce r = testgen::random_nonce(rng);
    ExecutionResult a = execute_plan(plan, builtins(), as_span(data), r);
    ExecutionResult b = execute_plan(plan, builtins(), as_span(data), r);
    CHECK(a.hash_cloud == b.hash_cloud);
    CHECK(a.result == b.result);
    CHECK(a.counters == b.counters);
    REQUIRE(a.trace.nodes.size() == b.trace.nodes.size());
    for (std::size_t i = 0; i < a.trace.nodes.size(); ++i) {
        CHECK(a.trace.nodes[i].h == b.trace.nodes[i].h);
        CHECK(a.trace.nodes[i].chain_out == b.trace.nodes[i].chain_out);
    }
}

TEST_CASE("distinct nonces give distinct cloud hashes") {
    ExecutionPlan plan = hybrid_plan();
    Bytes data = to_bytes("fixed");
    std::mt19937_64 rng(47);
    std::set<std::string> hashes;
    for (int i = 0; i < 1000; ++i) {
        Nonce r = testgen::random_nonce(rng);
        hashes.insert(execute_plan(plan, builtins(), as_span(data), r).hash_cloud.hex());
    }
    CHECK(hashes.size() == 1000);
}

TEST_CASE("reference plan cloud counters match the hand count") {
    // Inputs: three sources (1 Con each), one same-enclave single
    // (1 Con), the join with m=3, m'=1 (2 Add + 1 Xor + 1 Hash + 1 Con),
    // one cross single (1 Xor + 1 Hash + 1 Con), one same single
    // (1 Con). Outputs: two crossing edges (2 Hash + 1 Xor each) and
    // the terminal hash.
    ExecutionResult out =
        execute_plan(hybrid_plan(), builtins(), as_span(Bytes{1}), nonce_of(9));
    CHECK(out.counters == OpCounters{7, 4, 2, 7});
}

TEST_CASE("registry rejects duplicates and reports failures by node") {
    FunctionRegistry reg;
    reg.register_function("f", [](const std::vector<Bytes>& in) { return in.front(); });
    CHECK_THROWS_AS(reg.register_function("f", [](const std::vector<Bytes>& in) {
        return in.front();
    }),
                    Error);
    CHECK(builtins().contains("busyloop_1M"));

    FunctionRegistry throwing;
    throwing.register_function("identity", [](const std::vector<Bytes>&) -> Bytes {
        throw std::runtime_error("boom");
    });
    try {
        execute_plan(same_enclave_chain2(), throwing, as_span(Bytes{1}), nonce_of(2));
        FAIL("expected FunctionFailure");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::FunctionFailure);
    }

    FunctionRegistry empty;
    CHECK_THROWS_AS(execute_plan(same_enclave_chain2(), empty, as_span(Bytes{1}), nonce_of(2)),
                    Error);
}

TEST_CASE("enclave state is unreadable from another enclave") {
    EnclaveSim enclave(1);
    enclave.store_chain("n", Bytes{1, 2, 3});
    CHECK(enclave.chain_of("n", 1) == Bytes{1, 2, 3});
    CHECK_THROWS_AS(enclave.chain_of("n", 2), std::logic_error);
    CHECK_THROWS_AS(enclave.result_of("n", 2), std::logic_error);
}

TEST_CASE("disabled bookkeeping performs no chain operations") {
    ExecOptions opts;
    opts.chain_enabled = false;
    ExecutionResult out =
        execute_plan(hybrid_plan(), builtins(), as_span(Bytes{1, 2}), nonce_of(4), opts);
    CHECK(out.counters == OpCounters{});
    CHECK(out.hash_cloud == Digest{});
    // Business results still flow.
    CHECK_FALSE(out.result.empty());
}

TEST_CASE("trace text lists nodes and the final digest") {
    ExecOptions opts;
    opts.symbolic = true;
    ExecutionResult out =
        execute_plan(hybrid_plan(), builtins(), as_span(Bytes{0xde}), nonce_of(5), opts);
    std::string text = out.trace.to_text();
    CHECK(text.find("node 1") != std::string::npos);
    CHECK(text.find("hash_cloud = " + out.hash_cloud.hex()) != std::string::npos);
    CHECK(text.find("res'_3") != std::string::npos);
}
