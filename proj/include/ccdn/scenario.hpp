#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "ccdn/instance.hpp"
#include "ccdn/rng.hpp"
#include "ccdn/topology.hpp"

namespace ccdn {

// Seeded demand generator. Dense gives every zone a draw from
// [demand_lo, demand_hi]; sparse gives draws to exactly
// ceil(sparse_fraction * |V|) zones picked by the seed.
struct Scenario {
    enum class Kind { dense, sparse };
    Kind kind = Kind::dense;
    std::uint64_t seed = 1;
    int demand_lo = 1;
    int demand_hi = 5;
    double sparse_fraction = 0.3;
    int contents = 1;
};

inline const char* to_string(Scenario::Kind k) {
    return k == Scenario::Kind::dense ? "dense" : "sparse";
}

inline Scenario::Kind scenario_kind_from_string(std::string_view s) {
    if (s == "dense") return Scenario::Kind::dense;
    if (s == "sparse") return Scenario::Kind::sparse;
    throw ParseError("unknown scenario kind '" + std::string(s) + "' (expected dense or sparse)");
}

inline DemandMatrix gen_scenario(const Topology& topo, const Scenario& sc) {
    if (sc.demand_lo < 1 || sc.demand_hi < sc.demand_lo)
        throw TopologyError("demand range must satisfy 1 <= lo <= hi");
    if (!(sc.sparse_fraction > 0.0 && sc.sparse_fraction <= 1.0))
        throw TopologyError("sparse fraction must lie in (0, 1]");
    if (sc.contents < 1) throw TopologyError("catalog needs at least one content");

    const int zones = topo.zone_count();
    DemandMatrix dm(zones, sc.contents);
    auto g = rng::make_engine(sc.seed);

    if (sc.kind == Scenario::Kind::dense) {
        for (int m = 1; m <= zones; ++m)
            for (int k = 1; k <= sc.contents; ++k)
                dm.set(m, k, static_cast<int>(rng::uniform_int(g, sc.demand_lo, sc.demand_hi)));
        return dm;
    }

    const int chosen = static_cast<int>(std::ceil(sc.sparse_fraction * static_cast<double>(zones)));
    auto picked = rng::sample_indices(zones, chosen, g);
    std::sort(picked.begin(), picked.end());
    for (int idx : picked)
        for (int k = 1; k <= sc.contents; ++k)
            dm.set(idx + 1, k, static_cast<int>(rng::uniform_int(g, sc.demand_lo, sc.demand_hi)));
    return dm;
}

} // namespace ccdn
