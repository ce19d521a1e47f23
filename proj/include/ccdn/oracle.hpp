#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "ccdn/model.hpp"

namespace ccdn {

// Hard caps on the exact solver; exceeding them is an error, never a silent
// truncation.
struct OracleLimits {
    int max_zones = 5;
    int max_contents = 1;
    int max_total_demand = 6;
    int max_paths_per_pair = 2;
    unsigned long long work_budget = 50'000'000;
};

struct OracleResult {
    Configuration config;
    Evaluation eval;
    double objective = 0.0;
    unsigned long long nodes_enumerated = 0;
    unsigned long long feasible_count = 0;
};

// Exhaustive minimum over all placements and all integral routings of each
// demand unit onto (provider, path) tuples. Infeasible assignments (capacity,
// hosting, SLA) are discarded. Ties resolve to the fewest provider zones,
// then the lexicographically smallest placement, then the smallest flow list.
// `enforce_sla = false` drops Eq. 6, matching the SLA-exempt GS/SNA baselines.
inline OracleResult exact_optimal(const Instance& inst, const OracleLimits& lim = {},
                                  bool enforce_sla = true) {
    const int V = inst.zone_count();
    const int C = inst.content_count();
    if (V > lim.max_zones)
        throw BudgetError("instance has more zones than the oracle limit");
    if (C > lim.max_contents)
        throw BudgetError("instance has more contents than the oracle limit");
    if (inst.demand.total() > lim.max_total_demand)
        throw BudgetError("instance demand exceeds the oracle limit");
    if (inst.params.paths_per_pair > lim.max_paths_per_pair)
        throw BudgetError("instance paths-per-pair exceeds the oracle limit");

    struct Demand {
        int zone, content, requests;
    };
    std::vector<Demand> demands;
    for (int n = 1; n <= V; ++n)
        for (int k = 1; k <= C; ++k)
            if (inst.demand.at(n, k) > 0) demands.push_back({n, k, inst.demand.at(n, k)});

    OracleResult result;
    std::optional<double> best_objective;
    int best_providers = 0;

    const double A = inst.params.access_rate_mbps;
    std::vector<double> residual;
    for (const UndirectedEdge& u : inst.topology.undirected_edges())
        residual.push_back(u.capacity_mbps);

    std::vector<FlowAssignment> flows;
    struct Option {
        int provider, path_x;
        const Path* path;
    };
    std::vector<std::vector<Option>> options(demands.size());

    auto bump = [&]() {
        if (++result.nodes_enumerated > lim.work_budget)
            throw BudgetError("oracle work budget exceeded");
    };

    auto fits = [&](const Option& opt, int units) {
        if (opt.path->is_self()) return true;
        for (int ue : opt.path->undirected_edges)
            if (residual[static_cast<std::size_t>(ue)] + 1e-9 < static_cast<double>(units) * A)
                return false;
        return true;
    };
    auto apply = [&](const Demand& d, const Option& opt, int units) {
        flows.push_back(FlowAssignment{opt.provider, d.zone, opt.path_x, d.content,
                                       static_cast<double>(units)});
        for (int ue : opt.path->undirected_edges)
            residual[static_cast<std::size_t>(ue)] -= static_cast<double>(units) * A;
    };
    auto undo = [&](const Option& opt, int units) {
        flows.pop_back();
        for (int ue : opt.path->undirected_edges)
            residual[static_cast<std::size_t>(ue)] += static_cast<double>(units) * A;
    };

    const auto total_masks = 1ull << (static_cast<unsigned>(V) * static_cast<unsigned>(C));
    for (unsigned long long mask = 0; mask < total_masks; ++mask) {
        Configuration base(V, C);
        for (int m = 1; m <= V; ++m)
            for (int k = 1; k <= C; ++k)
                if (mask & (1ull << ((m - 1) * C + (k - 1)))) base.set_placed(m, k, true);

        bool viable = true;
        for (std::size_t d = 0; d < demands.size(); ++d) {
            options[d].clear();
            for (int m = 1; m <= V && viable; ++m) {
                if (!base.placed(m, demands[d].content)) continue;
                const auto& paths = inst.paths.between(m, demands[d].zone);
                for (int x = 1; x <= static_cast<int>(paths.size()); ++x)
                    options[d].push_back({m, x, &paths[static_cast<std::size_t>(x) - 1]});
            }
            if (options[d].empty()) {
                viable = false;
                break;
            }
        }
        if (!viable) continue;

        auto leaf = [&]() {
            Configuration candidate = base;
            for (const FlowAssignment& f : flows) candidate.add_flow(f.provider, f.consumer,
                                                                     f.path_x, f.content, f.amount);
            candidate.normalize();
            const Evaluation ev = evaluate(inst, candidate);
            if (enforce_sla && !sla_satisfied(ev.sum_z, ev.sum_a, inst.params.sla_percent)) return;
            ++result.feasible_count;
            const double obj = ev.report.total;
            bool take = false;
            if (!best_objective) {
                take = true;
            } else if (obj < *best_objective - 1e-12) {
                take = true;
            } else if (obj <= *best_objective + 1e-12) {
                const int pc = candidate.placed_zone_count();
                if (pc < best_providers) {
                    take = true;
                } else if (pc == best_providers) {
                    if (candidate.placement_bits() < result.config.placement_bits()) {
                        take = true;
                    } else if (candidate.placement_bits() == result.config.placement_bits()) {
                        auto as_key = [](const std::vector<FlowAssignment>& fs) {
                            std::vector<std::tuple<int, int, int, int, double>> k;
                            for (const auto& f : fs)
                                k.push_back({f.provider, f.consumer, f.path_x, f.content, f.amount});
                            return k;
                        };
                        take = as_key(candidate.flows()) < as_key(result.config.flows());
                    }
                }
            }
            if (take) {
                best_objective = obj;
                best_providers = candidate.placed_zone_count();
                result.config = std::move(candidate);
                result.eval = ev;
                result.objective = obj;
            }
        };

        // distribute demand d's units over its options, last option absorbing
        // the remainder so every assignment is enumerated exactly once
        std::function<void(std::size_t, std::size_t, int)> distribute =
            [&](std::size_t d, std::size_t opt_idx, int remaining) {
                bump();
                if (d == demands.size()) {
                    leaf();
                    return;
                }
                const auto& opts = options[d];
                if (opt_idx + 1 == opts.size()) {
                    if (remaining == 0) {
                        distribute(d + 1, 0, d + 1 < demands.size() ? demands[d + 1].requests : 0);
                    } else if (fits(opts[opt_idx], remaining)) {
                        apply(demands[d], opts[opt_idx], remaining);
                        distribute(d + 1, 0, d + 1 < demands.size() ? demands[d + 1].requests : 0);
                        undo(opts[opt_idx], remaining);
                    }
                    return;
                }
                for (int take = 0; take <= remaining; ++take) {
                    if (take > 0 && !fits(opts[opt_idx], take)) break;
                    if (take > 0) apply(demands[d], opts[opt_idx], take);
                    distribute(d, opt_idx + 1, remaining - take);
                    if (take > 0) undo(opts[opt_idx], take);
                }
            };
        distribute(0, 0, demands.empty() ? 0 : demands[0].requests);
    }

    if (!best_objective) throw InfeasibleError("no feasible configuration exists");
    return result;
}

// Definitional betweenness: enumerate every simple path per unordered pair,
// keep the minimum-latency ones and count pass-through fractions.
inline std::vector<double> bc_bruteforce(const Topology& topo, const LutSet& luts) {
    const int n = topo.zone_count();
    if (n > 8) throw BudgetError("brute-force betweenness is limited to 8 zones");

    std::vector<double> bc(static_cast<std::size_t>(n), 0.0);
    for (int s = 1; s <= n; ++s) {
        for (int t = s + 1; t <= n; ++t) {
            double best = std::numeric_limits<double>::infinity();
            double sigma = 0.0;
            std::vector<double> through(static_cast<std::size_t>(n) + 1, 0.0);

            std::vector<char> visited(static_cast<std::size_t>(n) + 1, 0);
            std::vector<int> stack{s};
            visited[static_cast<std::size_t>(s)] = 1;

            std::function<void(int, double)> dfs = [&](int v, double cost) {
                if (cost > best) return; // cannot tie or beat the current minimum
                if (v == t) {
                    if (cost < best) {
                        best = cost;
                        sigma = 0.0;
                        std::fill(through.begin(), through.end(), 0.0);
                    }
                    if (cost == best) {
                        sigma += 1.0;
                        for (int u : stack)
                            if (u != s && u != t) through[static_cast<std::size_t>(u)] += 1.0;
                    }
                    return;
                }
                for (const auto& [w, eidx] : topo.out_edges(v)) {
                    (void)eidx;
                    if (visited[static_cast<std::size_t>(w)]) continue;
                    visited[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                    dfs(w, cost + luts.zero_load_delay(topo.undirected_index(v, w)));
                    stack.pop_back();
                    visited[static_cast<std::size_t>(w)] = 0;
                }
            };
            dfs(s, 0.0);

            if (sigma > 0.0)
                for (int v = 1; v <= n; ++v)
                    bc[static_cast<std::size_t>(v) - 1] += through[static_cast<std::size_t>(v)] / sigma;
        }
    }
    return bc;
}

} // namespace ccdn
