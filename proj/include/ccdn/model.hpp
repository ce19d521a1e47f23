#pragma once

#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ccdn/configuration.hpp"
#include "ccdn/instance.hpp"

namespace ccdn {

// Objective breakdown for one configuration. `total` is always the sum of
// the three components; the SLA rates are informational.
struct CostReport {
    double storage_cost = 0.0;
    double bandwidth_cost = 0.0;
    double violation_degree = 0.0; // sum of z * gamma / latency_cap
    double total = 0.0;
    double sla_violation_rate = 0.0;          // violating / used paths (Eq. 6 accounting)
    double sla_violation_rate_requests = 0.0; // same, weighted by served requests
};

// One used (provider, consumer, path) tuple and its derived state.
struct TupleUse {
    int provider = 0;
    int consumer = 0;
    int path_x = 0;
    double flow_units = 0.0; // total requests across contents
    double gamma_ms = 0.0;   // network latency of the path
    bool violating = false;  // gamma + T_S + T_ISP > Q
};

struct Evaluation {
    std::vector<double> directed_load_mbps;  // per Topology::edges() index
    std::vector<double> undirected_delay_ms; // per Topology::undirected_edges() index
    std::vector<TupleUse> used;              // sorted by (provider, consumer, path)
    long long sum_a = 0;
    long long sum_z = 0;
    CostReport report;
};

struct ViolationRecord {
    std::string constraint; // eq1, eq2, eq6, eq8, flow.*
    std::string entity;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string note;
};

// --- elementary model operations -------------------------------------------

// Eq. 7: per-directed-edge load in Mbps.
inline std::vector<double> edge_loads(const Instance& inst,
                                      const std::vector<FlowAssignment>& flows) {
    std::vector<double> load(inst.topology.edges().size(), 0.0);
    for (const FlowAssignment& f : flows) {
        const Path& p = inst.paths.path(f.provider, f.consumer, f.path_x);
        for (int eidx : p.directed_edges)
            load[static_cast<std::size_t>(eidx)] += f.amount * inst.params.access_rate_mbps;
    }
    return load;
}

// Eqs. 8-10: delay looked up from the combined bidirectional load.
inline double edge_delay(const LatencyLut& lut, double load_ij_mbps, double load_ji_mbps) {
    const double combined = load_ij_mbps + load_ji_mbps;
    if (combined > lut.capacity_mbps + 1e-9)
        throw CapacityError("combined load " + std::to_string(combined) +
                            " Mbps exceeds edge capacity " + std::to_string(lut.capacity_mbps));
    return lut.v[static_cast<std::size_t>(lut.index_for(combined))];
}

// Eq. 11: network latency of a path given per-undirected-edge delays.
inline double path_latency(const Path& path, const std::vector<double>& undirected_delay_ms) {
    double gamma = 0.0;
    for (int ue : path.undirected_edges) gamma += undirected_delay_ms[static_cast<std::size_t>(ue)];
    return gamma;
}

// Eqs. 12-14: directional bandwidth cost.
inline double bandwidth_cost(const BandwidthCostLut& lut, double load_mbps) {
    if (load_mbps > lut.capacity_mbps + 1e-9)
        throw CapacityError("load " + std::to_string(load_mbps) + " Mbps exceeds edge capacity " +
                            std::to_string(lut.capacity_mbps));
    return lut.w[static_cast<std::size_t>(lut.index_for(load_mbps))];
}

// Eq. 6, written as 100 * sum_z <= (100 - S) * sum_a to stay exact for
// integral S.
inline bool sla_satisfied(long long sum_z, long long sum_a, double sla_percent) {
    return 100.0 * static_cast<double>(sum_z) <=
           (100.0 - sla_percent) * static_cast<double>(sum_a) + 1e-9;
}

// --- full evaluation --------------------------------------------------------

// Derives loads, delays, per-tuple latencies, violation flags and the cost
// report. Throws CapacityError if any edge is pushed past its capacity.
inline Evaluation evaluate(const Instance& inst, const Configuration& config) {
    Evaluation ev;
    ev.directed_load_mbps = edge_loads(inst, config.flows());

    const auto& undirected = inst.topology.undirected_edges();
    ev.undirected_delay_ms.resize(undirected.size());
    for (std::size_t u = 0; u < undirected.size(); ++u)
        ev.undirected_delay_ms[u] = edge_delay(inst.luts.latency[u],
                                               ev.directed_load_mbps[static_cast<std::size_t>(undirected[u].fwd)],
                                               ev.directed_load_mbps[static_cast<std::size_t>(undirected[u].rev)]);

    // group flows into used tuples
    std::map<std::tuple<int, int, int>, double> tuple_flow;
    for (const FlowAssignment& f : config.flows())
        tuple_flow[{f.provider, f.consumer, f.path_x}] += f.amount;

    const double extra = inst.params.server_latency_ms + inst.params.isp_latency_ms;
    double degree = 0.0;
    double violating_requests = 0.0;
    double total_requests = 0.0;
    for (const auto& [key, units] : tuple_flow) {
        if (units <= 0.0) continue;
        const auto [m, n, x] = key;
        TupleUse t;
        t.provider = m;
        t.consumer = n;
        t.path_x = x;
        t.flow_units = units;
        t.gamma_ms = path_latency(inst.paths.path(m, n, x), ev.undirected_delay_ms);
        t.violating = t.gamma_ms + extra > inst.params.qos_ms + 1e-9;
        ev.used.push_back(t);
        ++ev.sum_a;
        total_requests += units;
        if (t.violating) {
            ++ev.sum_z;
            degree += t.gamma_ms / inst.params.latency_cap_ms;
            violating_requests += units;
        }
    }

    double storage = 0.0;
    for (int m = 1; m <= config.zones(); ++m)
        for (int k = 1; k <= config.contents(); ++k)
            if (config.placed(m, k)) storage += inst.topology.zone(m).storage_cost;

    double bandwidth = 0.0;
    for (std::size_t e = 0; e < inst.topology.edges().size(); ++e)
        bandwidth += bandwidth_cost(inst.luts.cost[e], ev.directed_load_mbps[e]);

    ev.report.storage_cost = storage;
    ev.report.bandwidth_cost = bandwidth;
    ev.report.violation_degree = degree;
    ev.report.total = storage + bandwidth + degree;
    ev.report.sla_violation_rate =
        ev.sum_a > 0 ? static_cast<double>(ev.sum_z) / static_cast<double>(ev.sum_a) : 0.0;
    ev.report.sla_violation_rate_requests =
        total_requests > 0.0 ? violating_requests / total_requests : 0.0;
    return ev;
}

// Eqs. 3-5 semantics: the (a, z) flags per used tuple.
inline std::vector<TupleUse> classify_violations(const Instance& inst, const Configuration& config) {
    return evaluate(inst, config).used;
}

// Objective exactly as modeled: storage + bandwidth + violation degree.
inline CostReport total_objective(const Instance& inst, const Configuration& config) {
    return evaluate(inst, config).report;
}

// --- validation -------------------------------------------------------------

namespace detail {
inline std::string entity_nk(int n, int k) {
    return "n=" + std::to_string(n) + ",k=" + std::to_string(k);
}
inline std::string entity_mnx(int m, int n, int x) {
    return "m=" + std::to_string(m) + ",n=" + std::to_string(n) + ",x=" + std::to_string(x);
}
} // namespace detail

// Checks a configuration against the model constraints and returns the list
// of violations (empty means valid). `check_sla` is disabled when validating
// the GS/SNA baselines, which carry SLA violations by design.
inline std::vector<ViolationRecord> validate(const Instance& inst, const Configuration& config,
                                             bool check_sla = true) {
    std::vector<ViolationRecord> out;
    const int zones = inst.zone_count();
    const int contents = inst.demand.contents();

    if (config.zones() != zones || config.contents() != contents) {
        out.push_back({"shape", "configuration", 0.0, 0.0,
                       "configuration dimensions do not match the instance"});
        return out;
    }

    bool flows_ok = true;
    for (const FlowAssignment& f : config.flows()) {
        if (f.provider < 1 || f.provider > zones || f.consumer < 1 || f.consumer > zones ||
            f.content < 1 || f.content > contents) {
            out.push_back({"flow.zone", detail::entity_mnx(f.provider, f.consumer, f.path_x),
                           0.0, 0.0, "flow references an unknown zone or content"});
            flows_ok = false;
            continue;
        }
        if (f.path_x < 1 || f.path_x > inst.paths.count(f.provider, f.consumer)) {
            out.push_back({"flow.path", detail::entity_mnx(f.provider, f.consumer, f.path_x),
                           static_cast<double>(f.path_x),
                           static_cast<double>(inst.paths.count(f.provider, f.consumer)),
                           "flow references a path that does not exist"});
            flows_ok = false;
            continue;
        }
        if (!(f.amount > 0.0)) {
            out.push_back({"flow.amount", detail::entity_mnx(f.provider, f.consumer, f.path_x),
                           f.amount, 0.0, "flow amount must be positive"});
            flows_ok = false;
            continue;
        }
        // Eq. 2: only hosting zones may serve.
        if (!config.placed(f.provider, f.content)) {
            out.push_back({"eq2", detail::entity_mnx(f.provider, f.consumer, f.path_x), f.amount,
                           0.0, "flow served from a zone that does not host the content"});
        }
    }
    if (!flows_ok) return out;

    // Eq. 1: every demand met.
    for (int n = 1; n <= zones; ++n) {
        for (int k = 1; k <= contents; ++k) {
            double served = 0.0;
            for (const FlowAssignment& f : config.flows())
                if (f.consumer == n && f.content == k) served += f.amount;
            const double required = inst.demand.at(n, k);
            if (served + 1e-9 < required)
                out.push_back({"eq1", detail::entity_nk(n, k), served, required, "demand not met"});
        }
    }

    // Eqs. 8/12: loads within capacity so every LUT index is defined.
    const auto loads = edge_loads(inst, config.flows());
    bool capacity_ok = true;
    for (const UndirectedEdge& u : inst.topology.undirected_edges()) {
        const double combined = loads[static_cast<std::size_t>(u.fwd)] +
                                loads[static_cast<std::size_t>(u.rev)];
        if (combined > u.capacity_mbps + 1e-9) {
            out.push_back({"eq8", "edge " + std::to_string(u.a) + "-" + std::to_string(u.b),
                           combined, u.capacity_mbps, "combined load exceeds capacity"});
            capacity_ok = false;
        }
    }
    if (!capacity_ok) return out;

    // Eq. 6 (flag logic z <= a and the z definition hold by construction of
    // the evaluator; what remains checkable is the SLA bound itself).
    const Evaluation ev = evaluate(inst, config);
    if (check_sla && !sla_satisfied(ev.sum_z, ev.sum_a, inst.params.sla_percent)) {
        out.push_back({"eq6", "configuration", static_cast<double>(ev.sum_z),
                       (1.0 - inst.params.sla_percent / 100.0) * static_cast<double>(ev.sum_a),
                       "SLA violated"});
    }
    return out;
}

} // namespace ccdn
