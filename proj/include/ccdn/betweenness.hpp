#pragma once

#include <queue>
#include <vector>

#include "ccdn/lut.hpp"
#include "ccdn/topology.hpp"

namespace ccdn {

// Brandes betweenness centrality over zero-load latency weights. Pairs are
// unordered and endpoints are excluded, so BC_v = sum over {s,t} of
// sigma_st(v) / sigma_st. Result is indexed by zone id - 1.
//
// Shortest-path ties are detected by exact comparison; edge weights are
// expected to be exactly representable (integral milliseconds in practice).
inline std::vector<double> betweenness(const Topology& topo, const LutSet& luts) {
    const int n = topo.zone_count();
    std::vector<double> bc(static_cast<std::size_t>(n), 0.0);

    std::vector<double> weight(topo.edges().size());
    for (std::size_t i = 0; i < topo.edges().size(); ++i) {
        const Edge& e = topo.edges()[i];
        weight[i] = luts.zero_load_delay(topo.undirected_index(e.from, e.to));
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    for (int s = 1; s <= n; ++s) {
        std::vector<double> dist(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<double> sigma(static_cast<std::size_t>(n) + 1, 0.0);
        std::vector<std::vector<int>> preds(static_cast<std::size_t>(n) + 1);
        std::vector<char> settled(static_cast<std::size_t>(n) + 1, 0);
        std::vector<int> order; // zones in non-decreasing distance from s
        order.reserve(static_cast<std::size_t>(n));

        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[static_cast<std::size_t>(s)] = 0.0;
        sigma[static_cast<std::size_t>(s)] = 1.0;
        pq.push({0.0, s});
        while (!pq.empty()) {
            const auto [d, v] = pq.top();
            pq.pop();
            if (settled[static_cast<std::size_t>(v)]) continue;
            settled[static_cast<std::size_t>(v)] = 1;
            order.push_back(v);
            for (const auto& [w, eidx] : topo.out_edges(v)) {
                if (settled[static_cast<std::size_t>(w)]) continue;
                const double cand = d + weight[static_cast<std::size_t>(eidx)];
                if (cand < dist[static_cast<std::size_t>(w)]) {
                    dist[static_cast<std::size_t>(w)] = cand;
                    sigma[static_cast<std::size_t>(w)] = sigma[static_cast<std::size_t>(v)];
                    preds[static_cast<std::size_t>(w)] = {v};
                    pq.push({cand, w});
                } else if (cand == dist[static_cast<std::size_t>(w)]) {
                    sigma[static_cast<std::size_t>(w)] += sigma[static_cast<std::size_t>(v)];
                    preds[static_cast<std::size_t>(w)].push_back(v);
                }
            }
        }

        std::vector<double> delta(static_cast<std::size_t>(n) + 1, 0.0);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int w = *it;
            for (int v : preds[static_cast<std::size_t>(w)])
                delta[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(v)] /
                                                      sigma[static_cast<std::size_t>(w)] *
                                                      (1.0 + delta[static_cast<std::size_t>(w)]);
            if (w != s) bc[static_cast<std::size_t>(w) - 1] += delta[static_cast<std::size_t>(w)];
        }
    }

    // ordered pairs were counted twice
    for (double& v : bc) v /= 2.0;
    return bc;
}

} // namespace ccdn
