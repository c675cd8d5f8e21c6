#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "attack.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "pipeline.hpp"
#include "protocol.hpp"

using namespace enchain;
using testfix::hybrid_plan;
using testfix::tag_of;

namespace {

// One full protocol round with the given attack; returns the verdict.
Verdict attacked_round(const ExecutionPlan& plan, const AttackSpec& spec, RandomSource& rng) {
    FunctionRegistry fns = FunctionRegistry::with_builtins();
    PlanRegistry plans;
    plans.add("q", plan);
    Session s = Session::establish(rng);
    auto built = s.build_request(as_span(Bytes{1, 2, 3, 4}), "q", plans);

    std::optional<ExecutionPlan> scheduled;
    std::optional<ChannelTap> tap;
    if (const auto* ddrc = std::get_if<DdrcAttack>(&spec.kind)) {
        scheduled = apply_ddrc(plan, *ddrc);
    } else if (const auto* tamper = std::get_if<OtmTamper>(&spec.kind)) {
        tap = apply_otm(plan, *tamper);
    } else {
        tap = apply_otm(plan, std::get<OtmMisroute>(spec.kind));
    }
    CloudOptions opts;
    opts.plan_override = scheduled ? &*scheduled : nullptr;
    opts.tap = tap ? &*tap : nullptr;
    auto cloud = s.cloud_handle(built.envelope, plans, fns, opts);
    return s.user_receive(plan, built.nonce, cloud.envelope).verdict;
}

}  // namespace

TEST_CASE("swapping a two-step plan runs the second function first and is caught") {
    ExecutionPlan plan({{"f", tag_of(1), 1, "identity"}, {"g", tag_of(2), 1, "reverse"}},
                       {{"f", "g"}});
    DdrcAttack attack{SwapTags{"f", "g"}};
    ExecutionPlan swapped = apply_ddrc(plan, attack);
    CHECK(swapped.node("f").function == "reverse");
    CHECK(swapped.node("g").function == "identity");

    SeededRandom rng(1);
    Verdict verdict = attacked_round(plan, AttackSpec{attack}, rng);
    CHECK_FALSE(verdict.accepted);
    CHECK(*verdict.reason == RejectReason::HashMismatch);
}

TEST_CASE("a mutation that leaves the labeled plan unchanged is refused") {
    ExecutionPlan plan = hybrid_plan();
    CHECK_THROWS_AS(apply_ddrc(plan, DdrcAttack{RewireEdge{{"3", "5"}, "5"}}), Error);
}

TEST_CASE("additive absorption: sibling tag swaps under a join are chain-invariant") {
    // Nodes 2 and 4 both contribute raw values into join 5, each value
    // ending with its own 8-octet tag. Integer addition satisfies
    // (A||t2)+(B||t4) == (A||t4)+(B||t2), so the verifier digest is
    // identical for every nonce and the swap is not a detectable
    // attack. It must be refused, not executed.
    ExecutionPlan plan = hybrid_plan();
    ExecutionPlan swapped = mutate(plan, SwapTags{"2", "4"});
    CHECK_FALSE(swapped.same_labeled(plan));  // a genuinely different labeled DAG
    CHECK(chain_invariant(plan, swapped));
    std::mt19937_64 rng(97);
    for (int i = 0; i < 20; ++i) {
        Nonce r = testgen::random_nonce(rng);
        CHECK(compute_user_hash(plan, r).hash_user ==
              compute_user_hash(swapped, r).hash_user);
    }
    try {
        apply_ddrc(plan, DdrcAttack{SwapTags{"2", "4"}});
        FAIL("expected MutationInvalid");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MutationInvalid);
        CHECK(std::string(e.what()).find("absorbed") != std::string::npos);
    }
    // A swap across the join boundary is not absorbed and is detected.
    CHECK_FALSE(chain_invariant(plan, mutate(plan, SwapTags{"2", "5"})));
}

TEST_CASE("rerouting the join edge into the tail yields a valid attacked plan") {
    ExecutionPlan attacked = apply_ddrc(hybrid_plan(), DdrcAttack{RewireEdge{{"3", "5"}, "6"}});
    CHECK_FALSE(attacked.validate().has_value());
    SeededRandom rng(2);
    Verdict verdict =
        attacked_round(hybrid_plan(), AttackSpec{DdrcAttack{RewireEdge{{"3", "5"}, "6"}}}, rng);
    CHECK_FALSE(verdict.accepted);
}

TEST_CASE("tampering one octet on a crossing edge is detected end to end") {
    SeededRandom rng(3);
    Verdict verdict =
        attacked_round(hybrid_plan(), AttackSpec{OtmTamper{{"3", "5"}, 0, 0xff}}, rng);
    CHECK_FALSE(verdict.accepted);
    CHECK(*verdict.reason == RejectReason::HashMismatch);
}

TEST_CASE("misrouting an earlier capture onto a later edge is detected") {
    SeededRandom rng(4);
    Verdict verdict =
        attacked_round(hybrid_plan(), AttackSpec{OtmMisroute{{"5", "6"}, "3"}}, rng);
    CHECK_FALSE(verdict.accepted);
    CHECK(*verdict.reason == RejectReason::HashMismatch);
}

TEST_CASE("attacks cannot reach inside an enclave") {
    ExecutionPlan plan = hybrid_plan();
    // 4->5 stays within enclave 1: nothing to tamper in transit.
    CHECK_THROWS_AS(apply_otm(plan, OtmTamper{{"4", "5"}, 0, 0xff}), Error);
    try {
        apply_otm(plan, OtmTamper{{"4", "5"}, 0, 0xff});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotCrossEnclave);
    }
    // Node 4 emits nothing into the untrusted area either.
    CHECK_THROWS_AS(apply_otm(plan, OtmMisroute{{"3", "5"}, "4"}), Error);
    // Unknown edges are not attackable.
    CHECK_THROWS_AS(apply_otm(plan, OtmTamper{{"1", "7"}, 0, 0xff}), Error);
}

TEST_CASE("a zero tamper mask is not an attack") {
    CHECK_THROWS_AS(apply_otm(hybrid_plan(), OtmTamper{{"3", "5"}, 0, 0x00}), Error);
}

TEST_CASE("tampering an octet past the payload raises NoSuchMessage in transit") {
    SeededRandom rng(5);
    try {
        attacked_round(hybrid_plan(), AttackSpec{OtmTamper{{"3", "5"}, 4096, 0x01}}, rng);
        FAIL("expected NoSuchMessage");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NoSuchMessage);
    }
}

TEST_CASE("misroute without a prior capture raises NoSuchMessage in transit") {
    // Victim 3->5 transits before node 5 ever emits.
    SeededRandom rng(6);
    try {
        attacked_round(hybrid_plan(), AttackSpec{OtmMisroute{{"3", "5"}, "5"}}, rng);
        FAIL("expected NoSuchMessage");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NoSuchMessage);
    }
}

TEST_CASE("campaign with no attacks reports a vacuous 100%") {
    Scenario scenario;
    scenario.plan = hybrid_plan();
    scenario.request_id = "hybrid";
    scenario.data = Bytes{1, 2, 3, 4};
    scenario.seed = 11;
    CampaignOutcome outcome = campaign_scenario(scenario);
    CHECK(outcome.report.baseline_accepted);
    CHECK(outcome.report.rows.empty());
    CHECK(outcome.report.detection_rate() == 1.0);
    CHECK(outcome.report.all_detected());
}

TEST_CASE("random campaigns on the reference plan detect everything") {
    Scenario scenario;
    scenario.plan = hybrid_plan();
    scenario.request_id = "hybrid";
    scenario.data = Bytes{9, 8, 7, 6};
    scenario.seed = 12;
    CampaignOptions options;
    options.random_ddrc = 100;
    options.random_otm = 100;
    CampaignOutcome outcome = campaign_scenario(scenario, options);
    CHECK(outcome.report.rows.size() == 200);
    CHECK(outcome.report.all_detected());
    std::string text = outcome.to_text();
    CHECK(text.find("detection rate: 100.0%") != std::string::npos);
}

TEST_CASE("generated attacks always apply to their plan") {
    std::mt19937_64 seed_rng(71);
    SeededRandom rng(71);
    for (int i = 0; i < 60; ++i) {
        ExecutionPlan plan =
            testgen::random_plan(seed_rng, {.require_cross_edge = true});
        AttackSpec ddrc = random_ddrc(plan, rng);
        CHECK(ddrc.is_ddrc());
        CHECK_NOTHROW(apply_ddrc(plan, std::get<DdrcAttack>(ddrc.kind)));
        AttackSpec otm = random_otm(plan, rng, 4);
        CHECK_FALSE(otm.is_ddrc());
    }
}

TEST_CASE("misroute feasibility matches the sender census") {
    CHECK(misroute_possible(hybrid_plan()));
    ExecutionPlan single({{"a", tag_of(1), 1, "identity"}, {"b", tag_of(2), 2, "identity"}},
                         {{"a", "b"}});
    CHECK_FALSE(misroute_possible(single));
}
