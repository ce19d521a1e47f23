#pragma once

// Shared topology/instance builders for the unit and acceptance suites.

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ccdn/ccdn.hpp"

namespace fixtures {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ccdn::Topology amazon_fixture() {
    return ccdn::load_topology(read_file(std::string(CCDN_SOURCE_DIR) + "/data/amazon_na.topo"));
}

// Single-region line 1 - 2 - ... - n over 100 Mbps inter-zone links.
inline ccdn::Topology line_topology(int n, double alpha = 0.5, double capacity = 100.0) {
    ccdn::Topology t;
    t.add_region(1);
    for (int m = 1; m <= n; ++m) t.add_zone(m, 1, alpha);
    for (int m = 1; m < n; ++m) t.add_link(m, m + 1, capacity, ccdn::EdgeKind::inter_zone);
    t.finalize();
    return t;
}

// Cycle 1 - 2 - ... - n - 1.
inline ccdn::Topology cycle_topology(int n, double alpha = 0.5, double capacity = 100.0) {
    ccdn::Topology t;
    t.add_region(1);
    for (int m = 1; m <= n; ++m) t.add_zone(m, 1, alpha);
    for (int m = 1; m < n; ++m) t.add_link(m, m + 1, capacity, ccdn::EdgeKind::inter_zone);
    t.add_link(n, 1, capacity, ccdn::EdgeKind::inter_zone);
    t.finalize();
    return t;
}

// Star with zone 1 in the center.
inline ccdn::Topology star_topology(int leaves, double alpha = 0.5, double capacity = 100.0) {
    ccdn::Topology t;
    t.add_region(1);
    for (int m = 1; m <= leaves + 1; ++m) t.add_zone(m, 1, alpha);
    for (int m = 2; m <= leaves + 1; ++m) t.add_link(1, m, capacity, ccdn::EdgeKind::inter_zone);
    t.finalize();
    return t;
}

// Zone 1 alone in region 1; zones 2..n in region 2, chained; one inter-region
// link 1-2. Useful for saturating the cross-region hop.
inline ccdn::Topology two_region_topology(int n, double ir_capacity = 100.0,
                                          double iz_capacity = 1000.0) {
    ccdn::Topology t;
    t.add_region(1);
    t.add_region(2);
    t.add_zone(1, 1, 0.5);
    for (int m = 2; m <= n; ++m) t.add_zone(m, 2, 0.5);
    t.add_link(1, 2, ir_capacity, ccdn::EdgeKind::inter_region);
    for (int m = 2; m < n; ++m) t.add_link(m, m + 1, iz_capacity, ccdn::EdgeKind::inter_zone);
    t.finalize();
    return t;
}

// Connected random topology: seeded spanning tree plus extra links, 1-3
// regions, capacities in mu-multiples, storage costs in [0.2, 1.0].
inline ccdn::Topology random_topology(ccdn::rng::Engine& g, int zones, int max_regions = 3) {
    ccdn::Topology t;
    const int regions = static_cast<int>(ccdn::rng::uniform_int(g, 1, std::min(max_regions, zones)));
    for (int r = 1; r <= regions; ++r) t.add_region(r);
    for (int m = 1; m <= zones; ++m) {
        // region 1..regions, every region non-empty for m <= regions
        const int region = m <= regions ? m : static_cast<int>(ccdn::rng::uniform_int(g, 1, regions));
        t.add_zone(m, region, ccdn::rng::uniform_real(g, 0.2, 1.0));
    }
    auto kind_of = [&](int a, int b) {
        return t.zone(a).region_id == t.zone(b).region_id ? ccdn::EdgeKind::inter_zone
                                                          : ccdn::EdgeKind::inter_region;
    };
    std::vector<int> order(static_cast<std::size_t>(zones));
    for (int i = 0; i < zones; ++i) order[static_cast<std::size_t>(i)] = i + 1;
    ccdn::rng::shuffle(order, g);
    std::set<std::pair<int, int>> links;
    for (int i = 1; i < zones; ++i) {
        const int a = order[static_cast<std::size_t>(i)];
        const int b = order[static_cast<std::size_t>(ccdn::rng::uniform_int(g, 0, i - 1))];
        links.insert(std::minmax(a, b));
    }
    const int extras = static_cast<int>(ccdn::rng::uniform_int(g, 0, zones));
    for (int e = 0; e < extras; ++e) {
        const int a = static_cast<int>(ccdn::rng::uniform_int(g, 1, zones));
        const int b = static_cast<int>(ccdn::rng::uniform_int(g, 1, zones));
        if (a != b) links.insert(std::minmax(a, b));
    }
    for (auto [a, b] : links)
        t.add_link(a, b, 10.0 * static_cast<double>(ccdn::rng::uniform_int(g, 4, 12)), kind_of(a, b));
    t.finalize();
    return t;
}

// Random demand with a guaranteed positive entry.
inline ccdn::DemandMatrix random_demand(ccdn::rng::Engine& g, int zones, int contents,
                                        int max_per_cell = 3) {
    ccdn::DemandMatrix dm(zones, contents);
    for (int m = 1; m <= zones; ++m)
        for (int k = 1; k <= contents; ++k)
            dm.set(m, k, static_cast<int>(ccdn::rng::uniform_int(g, 0, max_per_cell)));
    if (dm.total() == 0) dm.set(static_cast<int>(ccdn::rng::uniform_int(g, 1, zones)), 1, 1);
    return dm;
}

// Mid-size random instance for the constraint-validity corpus. Q and S vary
// so the SLA machinery actually engages.
inline ccdn::Instance random_instance(ccdn::rng::Engine& g, int min_zones = 4, int max_zones = 11) {
    const int zones = static_cast<int>(ccdn::rng::uniform_int(g, min_zones, max_zones));
    auto topo = random_topology(g, zones);
    const int contents = static_cast<int>(ccdn::rng::uniform_int(g, 1, 2));
    auto dm = random_demand(g, zones, contents);
    ccdn::Params p;
    const double qs[] = {60.0, 80.0, 100.0};
    const double ss[] = {80.0, 90.0, 98.0};
    p.qos_ms = qs[ccdn::rng::uniform_int(g, 0, 2)];
    p.sla_percent = ss[ccdn::rng::uniform_int(g, 0, 2)];
    p.access_rate_mbps = 10.0 * static_cast<double>(ccdn::rng::uniform_int(g, 1, 4));
    return ccdn::make_instance(topo, dm, p);
}

// Tiny instance within the default OracleLimits.
inline ccdn::Instance tiny_instance(ccdn::rng::Engine& g) {
    const int zones = static_cast<int>(ccdn::rng::uniform_int(g, 2, 5));
    auto topo = random_topology(g, zones, 2);
    ccdn::DemandMatrix dm(zones, 1);
    const int total = static_cast<int>(ccdn::rng::uniform_int(g, 1, 6));
    for (int u = 0; u < total; ++u) {
        const int z = static_cast<int>(ccdn::rng::uniform_int(g, 1, zones));
        dm.set(z, 1, dm.at(z, 1) + 1);
    }
    ccdn::Params p;
    p.paths_per_pair = 2;
    return ccdn::make_instance(topo, dm, p);
}

} // namespace fixtures
