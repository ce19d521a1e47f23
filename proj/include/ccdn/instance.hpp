#pragma once

#include <string>
#include <vector>

#include "ccdn/betweenness.hpp"
#include "ccdn/errors.hpp"
#include "ccdn/lut.hpp"
#include "ccdn/paths.hpp"
#include "ccdn/topology.hpp"

namespace ccdn {

struct Params {
    double qos_ms = 100.0;          // Q: perceived-latency threshold
    double sla_percent = 98.0;      // S: share of used paths that must meet Q
    double access_rate_mbps = 10.0; // A: Mbps consumed per served request
    double mu_mbps = 10.0;          // LUT granularity
    double latency_cap_ms = 1000.0; // upper bound on edge latency
    double server_latency_ms = 10.0; // T_S
    double isp_latency_ms = 10.0;    // T_ISP
    double big_k = 0.0;             // ILP constant; 0 means derive 1 + total demand
    int paths_per_pair = 3;

    void validate() const {
        if (!(qos_ms > 0.0)) throw TopologyError("QoS threshold must be positive");
        if (!(sla_percent > 0.0 && sla_percent <= 100.0))
            throw TopologyError("SLA slack must lie in (0, 100]");
        if (!(access_rate_mbps > 0.0)) throw TopologyError("access rate must be positive");
        if (!(mu_mbps > 0.0)) throw TopologyError("granularity must be positive");
        if (!(latency_cap_ms > 0.0)) throw TopologyError("latency cap must be positive");
        if (!(server_latency_ms > 0.0) || !(isp_latency_ms > 0.0))
            throw TopologyError("server/ISP latencies must be positive");
        if (paths_per_pair < 1) throw TopologyError("paths per pair must be at least 1");
        if (big_k < 0.0) throw TopologyError("big-K must be non-negative");
    }
};

// Request counts r[m][k]; zone m and content k are both 1-based.
class DemandMatrix {
public:
    DemandMatrix() = default;
    DemandMatrix(int zones, int contents)
        : zones_(zones), contents_(contents),
          r_(static_cast<std::size_t>(zones) * static_cast<std::size_t>(contents), 0) {
        if (zones < 1 || contents < 1) throw TopologyError("demand matrix dimensions must be positive");
    }

    int zones() const { return zones_; }
    int contents() const { return contents_; }

    int at(int zone, int content) const { return r_[slot(zone, content)]; }

    void set(int zone, int content, int requests) {
        if (requests < 0) throw TopologyError("request counts must be non-negative");
        r_[slot(zone, content)] = requests;
    }

    long long total() const {
        long long t = 0;
        for (int v : r_) t += v;
        return t;
    }

    long long zone_total(int zone) const {
        long long t = 0;
        for (int k = 1; k <= contents_; ++k) t += at(zone, k);
        return t;
    }

    long long content_total(int content) const {
        long long t = 0;
        for (int m = 1; m <= zones_; ++m) t += at(m, content);
        return t;
    }

private:
    std::size_t slot(int zone, int content) const {
        if (zone < 1 || zone > zones_ || content < 1 || content > contents_)
            throw TopologyError("demand index out of range");
        return static_cast<std::size_t>(zone - 1) * static_cast<std::size_t>(contents_) +
               static_cast<std::size_t>(content - 1);
    }

    int zones_ = 0;
    int contents_ = 0;
    std::vector<int> r_;
};

// Everything a solver needs: the graph, its LUTs, the candidate paths, the
// demand and the scalar parameters. Immutable once built.
struct Instance {
    Topology topology;
    DelayModel delays;
    TariffBook tariffs;
    Params params;
    DemandMatrix demand;
    LutSet luts;
    PathSet paths;

    int zone_count() const { return topology.zone_count(); }
    int content_count() const { return demand.contents(); }

    double big_k() const {
        return params.big_k > 0.0 ? params.big_k : 1.0 + static_cast<double>(demand.total());
    }
};

inline Instance make_instance(Topology topology, DemandMatrix demand, Params params = {},
                              DelayModel delays = {}, TariffBook tariffs = {}) {
    params.validate();
    if (demand.zones() != topology.zone_count())
        throw TopologyError("demand matrix zone count does not match the topology");
    if (demand.total() <= 0) throw TopologyError("demand matrix has no positive entry");
    if (params.big_k > 0.0 && params.big_k < 1.0 + static_cast<double>(demand.total()))
        throw TopologyError("big-K must dominate the total demand");

    Instance inst;
    inst.topology = std::move(topology);
    inst.delays = delays;
    inst.tariffs = tariffs;
    inst.params = params;
    inst.demand = std::move(demand);
    inst.luts = build_luts(inst.topology, delays, tariffs, params.mu_mbps, params.latency_cap_ms);
    inst.paths = enumerate_paths(inst.topology, inst.luts, params.paths_per_pair);
    return inst;
}

} // namespace ccdn
