#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ccdn/betweenness.hpp"
#include "ccdn/model.hpp"

namespace ccdn {

enum class PriorityKind { WSNA, GS, SNA };

inline const char* to_string(PriorityKind k) {
    switch (k) {
        case PriorityKind::WSNA: return "wsna";
        case PriorityKind::GS: return "gs";
        case PriorityKind::SNA: return "sna";
    }
    return "?";
}

inline PriorityKind priority_kind_from_string(std::string_view s) {
    if (s == "wsna") return PriorityKind::WSNA;
    if (s == "gs") return PriorityKind::GS;
    if (s == "sna") return PriorityKind::SNA;
    throw ParseError("unknown heuristic kind '" + std::string(s) + "' (expected wsna, gs or sna)");
}

// --- surrogate priorities ---------------------------------------------------
//
// The placement bits in the published priority expressions are evaluated
// statically as "host the whole catalog", so the rankings never change while
// the algorithm runs. A graph where every BC is zero (e.g. a complete graph)
// falls back to uniform BC shares.

inline double priority_wsna(int zone, const Instance& inst, const std::vector<double>& bc) {
    const double total_demand = static_cast<double>(inst.demand.total());
    const double request_share = static_cast<double>(inst.demand.zone_total(zone)) / total_demand;

    const double catalog_cost =
        static_cast<double>(inst.content_count()) * inst.topology.zone(zone).storage_cost;
    const double storage_factor = std::max(0.0, 1.0 - catalog_cost);

    double bc_sum = 0.0;
    for (double v : bc) bc_sum += v;
    const double bc_share = bc_sum > 0.0 ? bc[static_cast<std::size_t>(zone) - 1] / bc_sum
                                         : 1.0 / static_cast<double>(inst.zone_count());
    return request_share * storage_factor * bc_share;
}

inline double priority_gs(int zone, const Instance& inst) {
    const double catalog_cost =
        static_cast<double>(inst.content_count()) * inst.topology.zone(zone).storage_cost;
    return static_cast<double>(inst.demand.zone_total(zone)) / catalog_cost;
}

inline double priority_sna(int zone, const Instance& inst, const std::vector<double>& bc) {
    double bc_sum = 0.0;
    for (double v : bc) bc_sum += v;
    return bc_sum > 0.0 ? bc[static_cast<std::size_t>(zone) - 1] / bc_sum
                        : 1.0 / static_cast<double>(inst.zone_count());
}

inline std::vector<double> surrogate_priorities(const Instance& inst, const std::vector<double>& bc,
                                                PriorityKind kind) {
    std::vector<double> p(static_cast<std::size_t>(inst.zone_count()));
    for (int m = 1; m <= inst.zone_count(); ++m) {
        switch (kind) {
            case PriorityKind::WSNA: p[static_cast<std::size_t>(m) - 1] = priority_wsna(m, inst, bc); break;
            case PriorityKind::GS: p[static_cast<std::size_t>(m) - 1] = priority_gs(m, inst); break;
            case PriorityKind::SNA: p[static_cast<std::size_t>(m) - 1] = priority_sna(m, inst, bc); break;
        }
    }
    return p;
}

// --- placement state --------------------------------------------------------

struct ConsumerEntry {
    int zone = 0;
    int content = 0;
    int residual = 0; // requests still to be served
};

struct PlacementState {
    const Instance* instance = nullptr;
    PriorityKind kind = PriorityKind::WSNA;
    std::vector<double> bc;
    std::vector<double> priority;         // per zone id - 1
    std::vector<int> surrogate_list;      // remaining zones, best first
    std::vector<int> provider_array;      // selection order
    std::deque<ConsumerEntry> consumers;
    std::vector<double> residual_mbps;    // per undirected edge: capacity minus combined load
    Configuration config;
    bool sla_best_effort = false;

    const Instance& inst() const { return *instance; }
};

namespace detail {

// Zero-load latency of the best path between two zones (0 for the self pair).
inline double zero_load_distance(const Instance& inst, int from, int to) {
    const auto& paths = inst.paths.between(from, to);
    if (paths.empty()) return std::numeric_limits<double>::infinity();
    return paths.front().zero_load_latency_ms;
}

inline void pop_provider(PlacementState& st) {
    if (st.surrogate_list.empty()) throw InfeasibleError("no surrogates left to promote");
    const int zone = st.surrogate_list.front();
    st.surrogate_list.erase(st.surrogate_list.begin());
    st.provider_array.push_back(zone);
    for (int k = 1; k <= st.inst().content_count(); ++k) st.config.set_placed(zone, k, true);
}

// How many whole requests fit through the path right now.
inline long long capacity_units(const PlacementState& st, const Path& path) {
    if (path.is_self()) return std::numeric_limits<long long>::max();
    double bottleneck = std::numeric_limits<double>::infinity();
    for (int ue : path.undirected_edges)
        bottleneck = std::min(bottleneck, st.residual_mbps[static_cast<std::size_t>(ue)]);
    if (bottleneck <= 0.0) return 0;
    return static_cast<long long>(std::floor(bottleneck / st.inst().params.access_rate_mbps + 1e-9));
}

inline void commit_flow(PlacementState& st, int provider, int consumer, int path_x, int content,
                        long long units) {
    st.config.add_flow(provider, consumer, path_x, content, static_cast<double>(units));
    const Path& p = st.inst().paths.path(provider, consumer, path_x);
    for (int ue : p.undirected_edges)
        st.residual_mbps[static_cast<std::size_t>(ue)] -=
            static_cast<double>(units) * st.inst().params.access_rate_mbps;
}

// Requests already flowing to (zone, content).
inline long long served_amount(const Configuration& config, int zone, int content) {
    double total = 0.0;
    for (const FlowAssignment& f : config.flows())
        if (f.consumer == zone && f.content == content) total += f.amount;
    return static_cast<long long>(std::llround(total));
}

// Queue entries for unmet demand, optionally restricted to one region.
inline void enqueue_unserved(PlacementState& st, std::optional<int> region) {
    const Instance& inst = st.inst();
    for (const Zone& z : inst.topology.zones()) {
        if (region && z.region_id != *region) continue;
        for (int k = 1; k <= inst.content_count(); ++k) {
            long long deficit = inst.demand.at(z.id, k) - served_amount(st.config, z.id, k);
            for (const ConsumerEntry& c : st.consumers)
                if (c.zone == z.id && c.content == k) deficit -= c.residual;
            if (deficit > 0)
                st.consumers.push_back(ConsumerEntry{z.id, k, static_cast<int>(deficit)});
        }
    }
}

// Serve one consumer entry from the current provider set, nearest provider
// first (intra-region wins latency ties), walking that provider's paths in
// sorted order and taking min(path capacity, residual demand) at each step.
inline bool serve_consumer(PlacementState& st, ConsumerEntry& c) {
    const Instance& inst = st.inst();
    bool assigned_any = false;
    std::vector<int> temp = st.provider_array;
    const int consumer_region = inst.topology.region_of(c.zone);

    while (!temp.empty() && c.residual > 0) {
        auto best = temp.begin();
        auto rank = [&](int p) {
            return std::tuple{zero_load_distance(inst, p, c.zone),
                              inst.topology.region_of(p) == consumer_region ? 0 : 1, p};
        };
        for (auto it = temp.begin() + 1; it != temp.end(); ++it)
            if (rank(*it) < rank(*best)) best = it;
        const int provider = *best;
        temp.erase(best);

        const auto& paths = inst.paths.between(provider, c.zone);
        for (int x = 1; x <= static_cast<int>(paths.size()) && c.residual > 0; ++x) {
            const long long fit = capacity_units(st, paths[static_cast<std::size_t>(x) - 1]);
            const long long take = std::min<long long>(fit, c.residual);
            if (take > 0) {
                commit_flow(st, provider, c.zone, x, c.content, take);
                c.residual -= static_cast<int>(take);
                assigned_any = true;
            }
        }
    }
    return assigned_any;
}

} // namespace detail

// Drains the consumer queue. Consumers are processed in descending residual
// demand each pass; a pass that assigns nothing pops the next surrogate into
// the provider array. Throws InfeasibleError when consumers remain but no
// surrogate is left to promote.
inline void satisfy_consumers(PlacementState& st) {
    auto& queue = st.consumers;
    while (!queue.empty()) {
        std::vector<ConsumerEntry> pass(queue.begin(), queue.end());
        std::sort(pass.begin(), pass.end(), [&](const ConsumerEntry& l, const ConsumerEntry& r) {
            const auto lk = std::tuple{-l.residual, -st.inst().demand.content_total(l.content),
                                       l.zone, l.content};
            const auto rk = std::tuple{-r.residual, -st.inst().demand.content_total(r.content),
                                       r.zone, r.content};
            return lk < rk;
        });
        queue.clear();
        bool progress = false;
        for (ConsumerEntry& c : pass) {
            if (st.provider_array.empty()) {
                queue.push_back(c);
                continue;
            }
            progress |= detail::serve_consumer(st, c);
            if (c.residual > 0) queue.push_back(c); // rotate to the tail
        }
        if (queue.empty()) return;
        if (!progress) {
            if (st.surrogate_list.empty())
                throw InfeasibleError("demand cannot be met: all surrogates promoted, capacity exhausted");
            detail::pop_provider(st);
        }
    }
}

namespace detail {

// Removes every flow on (m, n, x), releases the capacity it held and turns
// the amounts back into consumer entries.
inline void release_tuple(PlacementState& st, int m, int n, int x, bool enqueue = true) {
    auto& flows = st.config.flows();
    for (auto it = flows.begin(); it != flows.end();) {
        if (it->provider == m && it->consumer == n && it->path_x == x) {
            const Path& p = st.inst().paths.path(m, n, x);
            for (int ue : p.undirected_edges)
                st.residual_mbps[static_cast<std::size_t>(ue)] +=
                    it->amount * st.inst().params.access_rate_mbps;
            if (enqueue)
                st.consumers.push_back(
                    ConsumerEntry{n, it->content, static_cast<int>(std::llround(it->amount))});
            it = flows.erase(it);
        } else {
            ++it;
        }
    }
}

inline bool tuple_in_use(const Configuration& config, int m, int n, int x) {
    for (const FlowAssignment& f : config.flows())
        if (f.provider == m && f.consumer == n && f.path_x == x) return true;
    return false;
}

inline std::vector<TupleUse> violating_tuples(const Instance& inst, const Configuration& config) {
    std::vector<TupleUse> out;
    for (const TupleUse& t : evaluate(inst, config).used)
        if (t.violating) out.push_back(t);
    return out;
}

} // namespace detail

// W-SNA only: while the SLA bound fails, release each violating tuple and let
// the scheduler re-place it; when that changes nothing, promote the next
// surrogate (serving its region first). Sets sla_best_effort instead of
// looping forever once every zone is a provider.
inline void sla_repair(PlacementState& st) {
    if (st.kind != PriorityKind::WSNA) return;
    const Instance& inst = st.inst();
    int stuck_passes = 0;
    const int stuck_limit = inst.zone_count() + 8;

    for (;;) {
        const Evaluation ev = evaluate(inst, st.config);
        if (sla_satisfied(ev.sum_z, ev.sum_a, inst.params.sla_percent)) return;

        bool grew = false;
        bool changed = false;
        for (const TupleUse& t : detail::violating_tuples(inst, st.config)) {
            if (!detail::tuple_in_use(st.config, t.provider, t.consumer, t.path_x)) continue;
            Configuration before = st.config;
            detail::release_tuple(st, t.provider, t.consumer, t.path_x);
            satisfy_consumers(st);
            if (st.config.same_as(before)) {
                if (st.surrogate_list.empty()) {
                    st.sla_best_effort = true;
                    return;
                }
                detail::pop_provider(st);
                grew = true;
                detail::enqueue_unserved(st, inst.topology.region_of(st.provider_array.back()));
                satisfy_consumers(st);
            } else {
                changed = true;
            }
        }

        if (grew) {
            stuck_passes = 0;
            continue;
        }
        if (!changed || ++stuck_passes > stuck_limit) {
            // either a full no-op pass, or the pass keeps oscillating without
            // an SLA improvement; both need a new provider to break out
            if (st.surrogate_list.empty()) {
                st.sla_best_effort = true;
                return;
            }
            detail::pop_provider(st);
            detail::enqueue_unserved(st, inst.topology.region_of(st.provider_array.back()));
            satisfy_consumers(st);
            stuck_passes = 0;
        }
    }
}

// Final W-SNA pass: re-serve still-violating tuples from the nearest existing
// provider (intra-region preferred). A move is kept only when it strictly
// lowers the violation degree without raising storage or bandwidth cost.
inline bool minimize_violation_degree(PlacementState& st) {
    if (st.kind != PriorityKind::WSNA) return false;
    const Instance& inst = st.inst();
    bool changed = false;

    for (const TupleUse& t : detail::violating_tuples(inst, st.config)) {
        if (!detail::tuple_in_use(st.config, t.provider, t.consumer, t.path_x)) continue;
        const CostReport base = evaluate(inst, st.config).report;
        const int region = inst.topology.region_of(t.consumer);

        std::vector<int> candidates = st.provider_array;
        std::sort(candidates.begin(), candidates.end(), [&](int l, int r) {
            const auto lk = std::tuple{inst.topology.region_of(l) == region ? 0 : 1,
                                       detail::zero_load_distance(inst, l, t.consumer), l};
            const auto rk = std::tuple{inst.topology.region_of(r) == region ? 0 : 1,
                                       detail::zero_load_distance(inst, r, t.consumer), r};
            return lk < rk;
        });

        for (int candidate : candidates) {
            // trial on copies; commit only if the move pays off
            Configuration trial_config = st.config;
            std::vector<double> trial_residual = st.residual_mbps;
            PlacementState trial;
            trial.instance = st.instance;
            trial.kind = st.kind;
            trial.config = std::move(trial_config);
            trial.residual_mbps = std::move(trial_residual);
            trial.provider_array = st.provider_array;

            std::vector<std::pair<int, long long>> released; // (content, amount)
            {
                auto& flows = trial.config.flows();
                for (auto it = flows.begin(); it != flows.end();) {
                    if (it->provider == t.provider && it->consumer == t.consumer &&
                        it->path_x == t.path_x) {
                        const Path& p = inst.paths.path(t.provider, t.consumer, t.path_x);
                        for (int ue : p.undirected_edges)
                            trial.residual_mbps[static_cast<std::size_t>(ue)] +=
                                it->amount * inst.params.access_rate_mbps;
                        released.push_back({it->content, std::llround(it->amount)});
                        it = flows.erase(it);
                    } else {
                        ++it;
                    }
                }
            }

            bool placed_all = true;
            for (auto& [content, amount] : released) {
                long long left = amount;
                const auto& paths = inst.paths.between(candidate, t.consumer);
                for (int x = 1; x <= static_cast<int>(paths.size()) && left > 0; ++x) {
                    const long long fit =
                        detail::capacity_units(trial, paths[static_cast<std::size_t>(x) - 1]);
                    const long long take = std::min<long long>(fit, left);
                    if (take > 0) {
                        detail::commit_flow(trial, candidate, t.consumer, x, content, take);
                        left -= take;
                    }
                }
                if (left > 0) {
                    placed_all = false;
                    break;
                }
            }
            if (!placed_all) continue;

            const CostReport moved = evaluate(inst, trial.config).report;
            if (moved.violation_degree < base.violation_degree - 1e-12 &&
                moved.storage_cost <= base.storage_cost + 1e-12 &&
                moved.bandwidth_cost <= base.bandwidth_cost + 1e-12) {
                st.config = std::move(trial.config);
                st.residual_mbps = std::move(trial.residual_mbps);
                changed = true;
                break;
            }
        }
    }
    return changed;
}

// --- the full procedure -----------------------------------------------------

struct PlacementResult {
    Configuration config;
    Evaluation eval;
    std::vector<int> provider_order;
    bool sla_best_effort = false;
    // state just before the violation-degree pass (W-SNA only)
    bool had_pre_pass_violations = false;
    double pre_pass_violation_degree = 0.0;
    double pre_pass_storage_cost = 0.0;
    double pre_pass_bandwidth_cost = 0.0;
};

inline PlacementState init_placement(const Instance& inst, PriorityKind kind) {
    PlacementState st;
    st.instance = &inst;
    st.kind = kind;
    st.bc = betweenness(inst.topology, inst.luts);
    st.priority = surrogate_priorities(inst, st.bc, kind);
    st.config = Configuration(inst.zone_count(), inst.content_count());
    st.residual_mbps.reserve(inst.topology.undirected_edges().size());
    for (const UndirectedEdge& u : inst.topology.undirected_edges())
        st.residual_mbps.push_back(u.capacity_mbps);
    st.surrogate_list.resize(static_cast<std::size_t>(inst.zone_count()));
    for (int m = 1; m <= inst.zone_count(); ++m) st.surrogate_list[static_cast<std::size_t>(m) - 1] = m;
    // priority descending; ties fall back to higher BC, then cheaper storage,
    // then zone id, so the order is total and deterministic
    std::sort(st.surrogate_list.begin(), st.surrogate_list.end(), [&](int l, int r) {
        const auto lk = std::tuple{-st.priority[static_cast<std::size_t>(l) - 1],
                                   -st.bc[static_cast<std::size_t>(l) - 1],
                                   inst.topology.zone(l).storage_cost, l};
        const auto rk = std::tuple{-st.priority[static_cast<std::size_t>(r) - 1],
                                   -st.bc[static_cast<std::size_t>(r) - 1],
                                   inst.topology.zone(r).storage_cost, r};
        return lk < rk;
    });
    return st;
}

// Fig.-3 procedure: promote the best surrogate, serve its region, serve the
// rest of the network, then (W-SNA only) repair the SLA and squeeze the
// violation degree.
inline PlacementResult place(const Instance& inst, PriorityKind kind) {
    if (inst.demand.total() <= 0) throw InfeasibleError("instance has no demand");
    PlacementState st = init_placement(inst, kind);

    detail::pop_provider(st);
    detail::enqueue_unserved(st, inst.topology.region_of(st.provider_array.front()));
    satisfy_consumers(st);
    detail::enqueue_unserved(st, std::nullopt);
    satisfy_consumers(st);

    PlacementResult res;
    if (kind == PriorityKind::WSNA) {
        sla_repair(st);
        const Evaluation pre = evaluate(inst, st.config);
        res.had_pre_pass_violations = pre.sum_z > 0;
        res.pre_pass_violation_degree = pre.report.violation_degree;
        res.pre_pass_storage_cost = pre.report.storage_cost;
        res.pre_pass_bandwidth_cost = pre.report.bandwidth_cost;
        minimize_violation_degree(st);
    }

    st.config.normalize();
    res.config = st.config;
    res.eval = evaluate(inst, st.config);
    res.provider_order = st.provider_array;
    res.sla_best_effort = st.sla_best_effort;

    // Eq. 1 must hold exactly; a silent shortfall would be a bug.
    for (int n = 1; n <= inst.zone_count(); ++n)
        for (int k = 1; k <= inst.content_count(); ++k)
            if (detail::served_amount(res.config, n, k) < inst.demand.at(n, k))
                throw InfeasibleError("internal: demand left unserved at zone " + std::to_string(n));
    return res;
}

} // namespace ccdn
