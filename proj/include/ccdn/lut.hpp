#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ccdn/errors.hpp"
#include "ccdn/topology.hpp"

namespace ccdn {

// Zero-load delay plus a G/G/1-style queuing term that blows up toward
// saturation: d(p) = base + queue * rho / (1 - rho), clamped at the cap.
struct DelayParams {
    double base_ms = 0.0;  // processing + propagation + transmission
    double queue_ms = 0.0; // queuing scale
};

struct DelayModel {
    DelayParams inter_zone{2.0, 16.0};
    DelayParams inter_region{40.0, 320.0};

    const DelayParams& for_kind(EdgeKind k) const {
        return k == EdgeKind::inter_zone ? inter_zone : inter_region;
    }
};

// Concave tiered pricing: each tier covers capacity up to `upto_fraction` of
// the edge capacity at a per-Mbps rate; rates strictly decrease per tier.
struct TariffTier {
    double upto_fraction = 1.0;
    double rate_per_mbps = 0.0;
};

using Tariff = std::vector<TariffTier>;

struct TariffBook {
    Tariff inter_zone{{0.5, 0.0004}, {1.0, 0.0002}};
    Tariff inter_region{{0.1, 0.0400}, {1.0, 0.0020}};

    const Tariff& for_kind(EdgeKind k) const {
        return k == EdgeKind::inter_zone ? inter_zone : inter_region;
    }
};

inline void check_tariff(const Tariff& t) {
    if (t.empty()) throw TopologyError("tariff needs at least one tier");
    double prev_frac = 0.0;
    double prev_rate = std::numeric_limits<double>::infinity();
    for (const TariffTier& tier : t) {
        if (!(tier.upto_fraction > prev_frac))
            throw TopologyError("tariff tier fractions must strictly increase");
        if (!(tier.rate_per_mbps > 0.0))
            throw TopologyError("tariff rates must be positive");
        if (!(tier.rate_per_mbps < prev_rate))
            throw TopologyError("tariff rates must strictly decrease per tier");
        prev_frac = tier.upto_fraction;
        prev_rate = tier.rate_per_mbps;
    }
    if (t.back().upto_fraction != 1.0)
        throw TopologyError("tariff tiers must cover the full capacity (last fraction = 1)");
}

namespace detail {
inline int lut_steps(double capacity_mbps, double mu_mbps) {
    if (!(mu_mbps > 0.0)) throw TopologyError("granularity must be positive");
    const double steps = capacity_mbps / mu_mbps;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 || rounded < 1.0)
        throw TopologyError("granularity does not divide capacity " + std::to_string(capacity_mbps));
    return static_cast<int>(rounded);
}
} // namespace detail

// Index p stands for a load of p*mu Mbps. For latency the load is the sum of
// both directions of the pair; for cost it is directional.
struct LatencyLut {
    std::vector<double> v; // ms, size B/mu + 1
    double capacity_mbps = 0.0;
    double mu_mbps = 0.0;

    int index_for(double load_mbps) const {
        if (load_mbps <= 0.0) return 0;
        const int p = static_cast<int>(std::ceil(load_mbps / mu_mbps - 1e-9));
        if (p >= static_cast<int>(v.size()))
            throw CapacityError("load " + std::to_string(load_mbps) + " Mbps exceeds capacity " +
                                std::to_string(capacity_mbps));
        return p;
    }
};

struct BandwidthCostLut {
    std::vector<double> w; // cost units, size B/mu + 1
    double capacity_mbps = 0.0;
    double mu_mbps = 0.0;

    int index_for(double load_mbps) const {
        if (load_mbps <= 0.0) return 0;
        const int p = static_cast<int>(std::ceil(load_mbps / mu_mbps - 1e-9));
        if (p >= static_cast<int>(w.size()))
            throw CapacityError("load " + std::to_string(load_mbps) + " Mbps exceeds capacity " +
                                std::to_string(capacity_mbps));
        return p;
    }
};

inline LatencyLut build_latency_lut(const Edge& edge, const DelayParams& params, double mu_mbps,
                                    double latency_cap_ms) {
    if (!(params.base_ms > 0.0)) throw TopologyError("base delay must be positive");
    if (params.queue_ms < 0.0) throw TopologyError("queue scale must be non-negative");
    if (!(latency_cap_ms > params.base_ms))
        throw TopologyError("latency cap must exceed the base delay");
    const int n = detail::lut_steps(edge.capacity_mbps, mu_mbps);
    LatencyLut lut;
    lut.capacity_mbps = edge.capacity_mbps;
    lut.mu_mbps = mu_mbps;
    lut.v.resize(static_cast<std::size_t>(n) + 1);
    for (int p = 0; p <= n; ++p) {
        if (p == n) {
            lut.v[static_cast<std::size_t>(p)] = latency_cap_ms; // saturation
            continue;
        }
        const double rho = static_cast<double>(p) / static_cast<double>(n);
        const double d = params.base_ms + params.queue_ms * rho / (1.0 - rho);
        lut.v[static_cast<std::size_t>(p)] = std::min(d, latency_cap_ms);
    }
    return lut;
}

inline BandwidthCostLut build_bandwidth_cost_lut(const Edge& edge, const Tariff& tariff,
                                                 double mu_mbps) {
    check_tariff(tariff);
    const int n = detail::lut_steps(edge.capacity_mbps, mu_mbps);
    BandwidthCostLut lut;
    lut.capacity_mbps = edge.capacity_mbps;
    lut.mu_mbps = mu_mbps;
    lut.w.resize(static_cast<std::size_t>(n) + 1);
    lut.w[0] = 0.0;
    for (int p = 1; p <= n; ++p) {
        // integrate the tier rates over (0, p*mu]
        const double load = static_cast<double>(p) * mu_mbps;
        double cost = 0.0;
        double from = 0.0;
        for (const TariffTier& tier : tariff) {
            const double upto = tier.upto_fraction * edge.capacity_mbps;
            const double hi = std::min(load, upto);
            if (hi > from) cost += (hi - from) * tier.rate_per_mbps;
            from = upto;
            if (load <= upto) break;
        }
        lut.w[static_cast<std::size_t>(p)] = cost;
    }
    return lut;
}

// Per-topology tables: latency per undirected edge, cost per directed edge.
struct LutSet {
    std::vector<LatencyLut> latency;     // indexed like Topology::undirected_edges()
    std::vector<BandwidthCostLut> cost;  // indexed like Topology::edges()

    double zero_load_delay(int undirected_idx) const {
        return latency[static_cast<std::size_t>(undirected_idx)].v[0];
    }
};

inline LutSet build_luts(const Topology& topo, const DelayModel& delays, const TariffBook& tariffs,
                         double mu_mbps, double latency_cap_ms) {
    LutSet luts;
    luts.latency.reserve(topo.undirected_edges().size());
    for (const UndirectedEdge& u : topo.undirected_edges()) {
        const Edge e{u.a, u.b, u.capacity_mbps, u.kind};
        luts.latency.push_back(build_latency_lut(e, delays.for_kind(u.kind), mu_mbps, latency_cap_ms));
    }
    luts.cost.reserve(topo.edges().size());
    for (const Edge& e : topo.edges())
        luts.cost.push_back(build_bandwidth_cost_lut(e, tariffs.for_kind(e.kind), mu_mbps));

    // Inter-region pricing must dominate inter-zone pricing at every index.
    double max_inter_zone = 0.0;
    double min_inter_region = std::numeric_limits<double>::infinity();
    for (const TariffTier& tier : tariffs.inter_zone)
        max_inter_zone = std::max(max_inter_zone, tier.rate_per_mbps);
    for (const TariffTier& tier : tariffs.inter_region)
        min_inter_region = std::min(min_inter_region, tier.rate_per_mbps);
    bool has_iz = false, has_ir = false;
    for (const Edge& e : topo.edges()) (e.kind == EdgeKind::inter_zone ? has_iz : has_ir) = true;
    if (has_iz && has_ir && !(min_inter_region > max_inter_zone))
        throw TopologyError("inter-region tariff must strictly dominate inter-zone tariff");
    return luts;
}

} // namespace ccdn
