#include <catch2/catch_amalgamated.hpp>

#include "ccdn/lut.hpp"
#include "ccdn/rng.hpp"

using namespace ccdn;

namespace {
Edge edge(double capacity, EdgeKind kind = EdgeKind::inter_zone) {
    return Edge{1, 2, capacity, kind};
}
} // namespace

TEST_CASE("latency lut endpoints and interior") {
    const DelayParams dp{2.0, 8.0};
    LatencyLut lut = build_latency_lut(edge(100.0), dp, 10.0, 1000.0);
    REQUIRE(lut.v.size() == 11);
    SECTION("zero load gives the base delay") { REQUIRE(lut.v[0] == 2.0); }
    SECTION("saturation clamps to the cap") { REQUIRE(lut.v[10] == 1000.0); }
    SECTION("rho = 0.5 evaluates the queuing formula") {
        // d0 + q * rho / (1 - rho) = 2 + 8 * 1 = 10
        REQUIRE(lut.v[5] == Catch::Approx(10.0).margin(1e-12));
    }
}

TEST_CASE("latency lut is monotone for random parameters") {
    rng::Engine g(21);
    for (int trial = 0; trial < 40; ++trial) {
        const DelayParams dp{rng::uniform_real(g, 0.5, 50.0), rng::uniform_real(g, 0.0, 400.0)};
        const double mu = 10.0;
        const double cap = 10.0 * static_cast<double>(rng::uniform_int(g, 2, 100));
        LatencyLut lut = build_latency_lut(edge(cap), dp, mu, 1000.0);
        for (std::size_t p = 1; p < lut.v.size(); ++p) REQUIRE(lut.v[p] >= lut.v[p - 1]);
        REQUIRE(lut.v[0] > 0.0);
        REQUIRE(lut.v.back() <= 1000.0);
    }
}

TEST_CASE("latency lut rejects bad inputs") {
    REQUIRE_THROWS_AS(build_latency_lut(edge(105.0), DelayParams{2.0, 8.0}, 10.0, 1000.0),
                      TopologyError); // granularity does not divide capacity
    REQUIRE_THROWS_AS(build_latency_lut(edge(100.0), DelayParams{2.0, 8.0}, 10.0, 1.0),
                      TopologyError); // cap below base delay
}

TEST_CASE("bandwidth cost lut") {
    SECTION("no load, no cost") {
        BandwidthCostLut lut = build_bandwidth_cost_lut(edge(100.0), {{1.0, 0.5}}, 10.0);
        REQUIRE(lut.w[0] == 0.0);
    }
    SECTION("single tier is linear") {
        BandwidthCostLut lut = build_bandwidth_cost_lut(edge(100.0), {{1.0, 0.5}}, 10.0);
        for (int p = 0; p <= 10; ++p)
            REQUIRE(lut.w[static_cast<std::size_t>(p)] == Catch::Approx(0.5 * 10.0 * p));
    }
    SECTION("tiered cost integrates piecewise") {
        // tiers: up to 40% at 1.0/Mbps, then 0.5/Mbps; load 60 of 100 Mbps
        BandwidthCostLut lut =
            build_bandwidth_cost_lut(edge(100.0), {{0.4, 1.0}, {1.0, 0.5}}, 10.0);
        REQUIRE(lut.w[6] == Catch::Approx(40.0 * 1.0 + 20.0 * 0.5));
    }
    SECTION("marginal cost never increases") {
        rng::Engine g(33);
        for (int trial = 0; trial < 40; ++trial) {
            const double cap = 10.0 * static_cast<double>(rng::uniform_int(g, 2, 100));
            Tariff t;
            double frac = 0.0;
            double rate = rng::uniform_real(g, 0.5, 1.0);
            const int tiers = static_cast<int>(rng::uniform_int(g, 1, 4));
            for (int i = 0; i < tiers; ++i) {
                frac = i + 1 == tiers ? 1.0 : frac + rng::uniform_real(g, 0.05, 0.3);
                frac = std::min(frac, 1.0);
                t.push_back({frac, rate});
                rate *= rng::uniform_real(g, 0.3, 0.9);
                if (frac >= 1.0) break;
            }
            if (t.back().upto_fraction < 1.0) t.push_back({1.0, rate});
            BandwidthCostLut lut = build_bandwidth_cost_lut(edge(cap), t, 10.0);
            double prev_marginal = std::numeric_limits<double>::infinity();
            for (std::size_t p = 1; p < lut.w.size(); ++p) {
                const double marginal = lut.w[p] - lut.w[p - 1];
                REQUIRE(marginal <= prev_marginal + 1e-12);
                REQUIRE(lut.w[p] >= lut.w[p - 1]);
                prev_marginal = marginal;
            }
        }
    }
}

TEST_CASE("tariff validation") {
    REQUIRE_THROWS_AS(check_tariff({}), TopologyError);
    REQUIRE_THROWS_AS(check_tariff({{0.4, 0.5}, {1.0, 0.5}}), TopologyError);   // flat
    REQUIRE_THROWS_AS(check_tariff({{0.4, 0.5}, {1.0, 0.6}}), TopologyError);   // increasing
    REQUIRE_THROWS_AS(check_tariff({{0.4, 0.5}, {0.4, 0.3}}), TopologyError);   // frac not rising
    REQUIRE_THROWS_AS(check_tariff({{0.9, 0.5}}), TopologyError);               // not covering
    REQUIRE_NOTHROW(check_tariff({{0.4, 0.5}, {1.0, 0.3}}));
}

TEST_CASE("inter-region pricing must dominate inter-zone pricing") {
    Topology t;
    t.add_region(1);
    t.add_region(2);
    t.add_zone(1, 1, 0.5);
    t.add_zone(2, 2, 0.5);
    t.add_zone(3, 2, 0.5);
    t.add_link(1, 2, 100.0, EdgeKind::inter_region);
    t.add_link(2, 3, 100.0, EdgeKind::inter_zone);
    t.finalize();

    TariffBook bad;
    bad.inter_zone = {{1.0, 0.01}};
    bad.inter_region = {{1.0, 0.005}}; // cheaper than inter-zone
    REQUIRE_THROWS_AS(build_luts(t, DelayModel{}, bad, 10.0, 1000.0), TopologyError);

    LutSet luts = build_luts(t, DelayModel{}, TariffBook{}, 10.0, 1000.0);
    const auto& ir = luts.cost[static_cast<std::size_t>(t.directed_index(1, 2))];
    const auto& iz = luts.cost[static_cast<std::size_t>(t.directed_index(2, 3))];
    for (std::size_t p = 1; p < std::min(ir.w.size(), iz.w.size()); ++p) REQUIRE(ir.w[p] > iz.w[p]);
}
