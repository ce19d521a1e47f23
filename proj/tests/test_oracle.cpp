#include <catch2/catch_amalgamated.hpp>

#include "ccdn/heuristics.hpp"
#include "ccdn/oracle.hpp"
#include "support/fixtures.hpp"

using namespace ccdn;

TEST_CASE("one zone with local demand places locally") {
    Topology t;
    t.add_region(1);
    t.add_zone(1, 1, 0.7);
    t.finalize();
    DemandMatrix dm(1, 1);
    dm.set(1, 1, 3);
    Params p;
    p.paths_per_pair = 2;
    Instance inst = make_instance(t, dm, p);
    auto best = exact_optimal(inst);
    REQUIRE(best.config.placed(1, 1));
    REQUIRE(best.objective == Catch::Approx(0.7));
    REQUIRE(best.feasible_count >= 1);
}

TEST_CASE("two zones: remote placement wins exactly when storage plus transport is cheaper") {
    auto build = [](double alpha_a, double alpha_b) {
        Topology t;
        t.add_region(1);
        t.add_zone(1, 1, alpha_a);
        t.add_zone(2, 1, alpha_b);
        t.add_link(1, 2, 100.0, EdgeKind::inter_zone);
        t.finalize();
        DemandMatrix dm(2, 1);
        dm.set(2, 1, 2);
        Params p;
        p.paths_per_pair = 2;
        TariffBook tariffs;
        tariffs.inter_zone = {{1.0, 0.001}};
        tariffs.inter_region = {{1.0, 0.01}};
        return make_instance(t, dm, p, DelayModel{}, tariffs);
    };
    SECTION("cheap remote zone: 0.1 storage + 0.02 transport beats 0.9") {
        auto best = exact_optimal(build(0.1, 0.9));
        REQUIRE(best.config.placed(1, 1));
        REQUIRE_FALSE(best.config.placed(2, 1));
        REQUIRE(best.objective == Catch::Approx(0.12));
    }
    SECTION("nearly-equal zones: self-delivery avoids the transport cost") {
        auto best = exact_optimal(build(0.1, 0.11));
        REQUIRE(best.config.placed(2, 1));
        REQUIRE_FALSE(best.config.placed(1, 1));
        REQUIRE(best.objective == Catch::Approx(0.11));
    }
}

TEST_CASE("oracle output always validates cleanly") {
    rng::Engine g(606);
    for (int trial = 0; trial < 10; ++trial) {
        Instance inst = fixtures::tiny_instance(g);
        auto best = exact_optimal(inst);
        REQUIRE(validate(inst, best.config, true).empty());
    }
}

TEST_CASE("oracle respects its limits") {
    SECTION("too many zones") {
        rng::Engine g(1);
        Topology t = fixtures::random_topology(g, 6);
        DemandMatrix dm(6, 1);
        dm.set(1, 1, 1);
        Params p;
        p.paths_per_pair = 2;
        Instance inst = make_instance(t, dm, p);
        REQUIRE_THROWS_AS(exact_optimal(inst), BudgetError);
    }
    SECTION("too many paths per pair") {
        DemandMatrix dm(3, 1);
        dm.set(1, 1, 1);
        Params p;
        p.paths_per_pair = 3;
        Instance inst = make_instance(fixtures::line_topology(3), dm, p);
        REQUIRE_THROWS_AS(exact_optimal(inst), BudgetError);
    }
    SECTION("work budget exceeded") {
        rng::Engine g(2);
        Instance inst = fixtures::tiny_instance(g);
        OracleLimits lim;
        lim.work_budget = 3;
        REQUIRE_THROWS_AS(exact_optimal(inst, lim), BudgetError);
    }
}

TEST_CASE("oracle reports infeasibility when the SLA cannot hold") {
    // Q below T_S + T_ISP makes every used path a violation
    DemandMatrix dm(2, 1);
    dm.set(2, 1, 1);
    Params p;
    p.paths_per_pair = 2;
    p.qos_ms = 15.0;
    Instance inst = make_instance(fixtures::line_topology(2), dm, p);
    REQUIRE_THROWS_AS(exact_optimal(inst), InfeasibleError);
    // without the SLA constraint the same instance solves fine
    REQUIRE_NOTHROW(exact_optimal(inst, OracleLimits{}, false));
}

TEST_CASE("the sla-lenient optimum never exceeds the strict one") {
    rng::Engine g(707);
    for (int trial = 0; trial < 8; ++trial) {
        Instance inst = fixtures::tiny_instance(g);
        auto strict = exact_optimal(inst);
        auto lenient = exact_optimal(inst, OracleLimits{}, false);
        REQUIRE(lenient.objective <= strict.objective + 1e-12);
    }
}

TEST_CASE("oracle bounds every heuristic on tiny instances") {
    rng::Engine g(808);
    for (int trial = 0; trial < 10; ++trial) {
        Instance inst = fixtures::tiny_instance(g);
        auto strict = exact_optimal(inst);
        auto lenient = exact_optimal(inst, OracleLimits{}, false);
        for (PriorityKind kind : {PriorityKind::WSNA, PriorityKind::GS, PriorityKind::SNA}) {
            auto res = place(inst, kind);
            const double bound =
                kind == PriorityKind::WSNA ? strict.objective : lenient.objective;
            REQUIRE(bound <= res.eval.report.total + 1e-9);
        }
    }
}

TEST_CASE("brute-force betweenness matches the definition on the known shapes") {
    auto luts_for = [](const Topology& t) {
        return build_luts(t, DelayModel{}, TariffBook{}, 10.0, 1000.0);
    };
    Topology line = fixtures::line_topology(3);
    REQUIRE(bc_bruteforce(line, luts_for(line)) == std::vector<double>{0.0, 1.0, 0.0});
    Topology tri = fixtures::cycle_topology(3);
    REQUIRE(bc_bruteforce(tri, luts_for(tri)) == std::vector<double>{0.0, 0.0, 0.0});
    rng::Engine g(1);
    Topology big = fixtures::random_topology(g, 9); // 9 zones: one too many
    REQUIRE_THROWS_AS(bc_bruteforce(big, luts_for(big)), BudgetError);
}
