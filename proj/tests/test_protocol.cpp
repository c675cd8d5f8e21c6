#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "protocol.hpp"

using namespace enchain;
using testfix::hybrid_plan;

namespace {

struct Context {
    SeededRandom rng{20260809};
    FunctionRegistry fns = FunctionRegistry::with_builtins();
    PlanRegistry plans;

    Context() { plans.add("hybrid", hybrid_plan()); }
};

}  // namespace

TEST_CASE("sessions draw fresh keys") {
    Context ctx;
    Session a = Session::establish(ctx.rng);
    Session b = Session::establish(ctx.rng);
    CHECK(a.keys().session_key != b.keys().session_key);
    CHECK(a.keys().user_verify_key != b.keys().user_verify_key);
}

TEST_CASE("attestation failure flag refuses the session") {
    Context ctx;
    CHECK_THROWS_AS(Session::establish(ctx.rng, true), Error);
}

TEST_CASE("session signatures round-trip on random messages") {
    Context ctx;
    Session s = Session::establish(ctx.rng);
    for (int i = 0; i < 20; ++i) {
        Bytes msg = ctx.rng.bytes(1 + i * 7);
        auto sig = sign_detached(s.keys().cloud_sign_key, as_span(msg));
        CHECK(signature_valid(s.keys().user_verify_key, as_span(msg),
                              ByteSpan(sig.data(), sig.size())));
        msg[0] ^= 1;
        CHECK_FALSE(signature_valid(s.keys().user_verify_key, as_span(msg),
                                    ByteSpan(sig.data(), sig.size())));
    }
}

TEST_CASE("identical build_request calls differ in nonce and ciphertext") {
    Context ctx;
    Session s = Session::establish(ctx.rng);
    Bytes data = to_bytes("same");
    auto first = s.build_request(as_span(data), "hybrid", ctx.plans);
    auto second = s.build_request(as_span(data), "hybrid", ctx.plans);
    CHECK_FALSE(first.nonce == second.nonce);
    CHECK(first.envelope.ciphertext != second.envelope.ciphertext);
    CHECK(s.seen_nonce_count() == 2);
}

TEST_CASE("unknown request ids are refused at build time") {
    Context ctx;
    Session s = Session::establish(ctx.rng);
    CHECK_THROWS_AS(s.build_request(as_span(Bytes{1}), "missing", ctx.plans), Error);
}

TEST_CASE("request envelope decrypts back to its three fields") {
    Context ctx;
    Session s = Session::establish(ctx.rng);
    Bytes data = to_bytes("round trip");
    auto built = s.build_request(as_span(data), "hybrid", ctx.plans);
    Bytes plain = aead_open(s.keys().session_key, as_span(built.envelope.ciphertext));
    std::vector<Bytes> fields = decode_fields(as_span(plain), 3);
    CHECK(fields[0] == data);
    CHECK(std::string(fields[1].begin(), fields[1].end()) == "hybrid");
    CHECK(Nonce::from_bytes(as_span(fields[2])) == built.nonce);
}

TEST_CASE("honest pipeline accepts and returns the business result") {
    Context ctx;
    Session s = Session::establish(ctx.rng);
    Bytes data = to_bytes("abc");
    auto built = s.build_request(as_span(data), "hybrid", ctx.plans);
    auto cloud = s.cloud_handle(built.envelope, ctx.plans, ctx.fns);
    auto received = s.user_receive(hybrid_plan(), built.nonce, cloud.envelope);
    CHECK(received.verdict.accepted);
    CHECK(received.result == cloud.exec.result);
    CHECK(received.hash_user == received.hash_cloud);
}

TEST_CASE("a flipped request octet fails decryption") {
    Context ctx;
    Session s = Session::establish(ctx.rng);
    auto built = s.build_request(as_span(Bytes{9, 9}), "hybrid", ctx.plans);
    RequestEnvelope corrupted = built.envelope;
    corrupted.ciphertext[corrupted.ciphertext.size() / 2] ^= 0x10;
    CHECK_THROWS_AS(s.cloud_handle(corrupted, ctx.plans, ctx.fns), Error);
}

TEST_CASE("every single-octet corruption of either envelope fails decryption") {
    Context ctx;
    Session s = Session::establish(ctx.rng);
    Bytes data = to_bytes("integrity");
    auto built = s.build_request(as_span(data), "hybrid", ctx.plans);
    auto cloud = s.cloud_handle(built.envelope, ctx.plans, ctx.fns);
    std::mt19937_64 rng(67);
    for (int i = 0; i < 200; ++i) {
        RequestEnvelope req = built.envelope;
        req.ciphertext[rng() % req.ciphertext.size()] ^=
            static_cast<Byte>(1 + rng() % 255);
        CHECK_THROWS_AS(s.cloud_handle(req, ctx.plans, ctx.fns), Error);

        ResponseEnvelope resp = cloud.envelope;
        resp.ciphertext[rng() % resp.ciphertext.size()] ^=
            static_cast<Byte>(1 + rng() % 255);
        CHECK_THROWS_AS(s.user_receive(hybrid_plan(), built.nonce, resp), Error);
    }
}

TEST_CASE("tampered cross-enclave traffic is rejected with a hash mismatch") {
    Context ctx;
    Session s = Session::establish(ctx.rng);
    ChannelTap tap;
    tap.hook = [](BoundaryMessage& m) {
        if (m.from == "3") m.result[0] ^= 0xff;
    };
    auto built = s.build_request(as_span(Bytes{1, 2, 3}), "hybrid", ctx.plans);
    CloudOptions opts;
    opts.tap = &tap;
    auto cloud = s.cloud_handle(built.envelope, ctx.plans, ctx.fns, opts);
    auto received = s.user_receive(hybrid_plan(), built.nonce, cloud.envelope);
    CHECK_FALSE(received.verdict.accepted);
    CHECK(*received.verdict.reason == RejectReason::HashMismatch);
}

TEST_CASE("replayed responses fail against a fresh nonce") {
    Context ctx;
    Session s = Session::establish(ctx.rng);
    Bytes data = to_bytes("task");
    auto first = s.build_request(as_span(data), "hybrid", ctx.plans);
    auto first_response = s.cloud_handle(first.envelope, ctx.plans, ctx.fns);
    CHECK(s.user_receive(hybrid_plan(), first.nonce, first_response.envelope)
              .verdict.accepted);

    auto second = s.build_request(as_span(data), "hybrid", ctx.plans);
    auto replayed = s.user_receive(hybrid_plan(), second.nonce, first_response.envelope);
    CHECK_FALSE(replayed.verdict.accepted);
    CHECK(*replayed.verdict.reason == RejectReason::HashMismatch);
}

TEST_CASE("modifying signed content without re-signing breaks the signature") {
    Context ctx;
    Session s = Session::establish(ctx.rng);
    auto built = s.build_request(as_span(Bytes{5, 5}), "hybrid", ctx.plans);
    auto cloud = s.cloud_handle(built.envelope, ctx.plans, ctx.fns);

    Bytes plain = aead_open(s.keys().session_key, as_span(cloud.envelope.ciphertext));
    std::vector<Bytes> fields = decode_fields(as_span(plain), 3);

    SUBCASE("result modified") { fields[0].push_back(0x00); }
    SUBCASE("hash modified") { fields[1][4] ^= 0x80; }

    Bytes forged_plain =
        encode_fields({as_span(fields[0]), as_span(fields[1]), as_span(fields[2])});
    ResponseEnvelope forged{aead_seal(s.keys().session_key, as_span(forged_plain), ctx.rng)};
    auto received = s.user_receive(hybrid_plan(), built.nonce, forged);
    CHECK_FALSE(received.verdict.accepted);
    CHECK(*received.verdict.reason == RejectReason::BadSignature);
}

TEST_CASE("truncated plaintexts are decrypt failures") {
    CHECK_THROWS_AS(decode_fields(as_span(Bytes{0, 0, 0, 9, 1}), 1), Error);
    Bytes two = encode_fields({as_span(Bytes{1}), as_span(Bytes{2})});
    CHECK_THROWS_AS(decode_fields(as_span(two), 3), Error);
}

TEST_CASE("seeded randomness reproduces the whole conversation") {
    auto transcript = [](std::uint64_t seed) {
        SeededRandom rng(seed);
        FunctionRegistry fns = FunctionRegistry::with_builtins();
        PlanRegistry plans;
        plans.add("hybrid", hybrid_plan());
        Session s = Session::establish(rng);
        auto built = s.build_request(as_span(Bytes{1, 2}), "hybrid", plans);
        auto cloud = s.cloud_handle(built.envelope, plans, fns);
        return to_hex(as_span(built.envelope.ciphertext)) +
               to_hex(as_span(cloud.envelope.ciphertext));
    };
    CHECK(transcript(7) == transcript(7));
    CHECK(transcript(7) != transcript(8));
}
