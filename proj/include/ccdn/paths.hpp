#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <vector>

#include "ccdn/lut.hpp"
#include "ccdn/topology.hpp"

namespace ccdn {

// A loopless route between two zones. The self route, nodes = {m}, carries
// no edges and has zero latency.
struct Path {
    std::vector<int> nodes;            // zone ids, source first
    std::vector<int> directed_edges;   // indices into Topology::edges()
    std::vector<int> undirected_edges; // indices into Topology::undirected_edges()
    double zero_load_latency_ms = 0.0;

    bool is_self() const { return nodes.size() <= 1; }
    std::size_t hop_count() const { return directed_edges.size(); }
};

// Candidate routes per ordered zone pair, sorted by ascending zero-load
// latency with lexicographic node-sequence tie-break.
class PathSet {
public:
    PathSet() = default;
    PathSet(int zone_count, std::vector<std::vector<Path>> per_pair)
        : zones_(zone_count), per_pair_(std::move(per_pair)) {}

    int zone_count() const { return zones_; }

    const std::vector<Path>& between(int m, int n) const {
        return per_pair_.at(slot(m, n));
    }

    int count(int m, int n) const { return static_cast<int>(between(m, n).size()); }

    // x is 1-based, matching the usual path-index convention.
    const Path& path(int m, int n, int x) const {
        return between(m, n).at(static_cast<std::size_t>(x) - 1);
    }

    // Total number of (m, n, x) tuples, self pairs included.
    std::size_t tuple_count() const {
        std::size_t total = 0;
        for (const auto& paths : per_pair_) total += paths.size();
        return total;
    }

private:
    std::size_t slot(int m, int n) const {
        return static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(zones_) +
               static_cast<std::size_t>(n - 1);
    }

    int zones_ = 0;
    std::vector<std::vector<Path>> per_pair_;
};

namespace detail {

// Dijkstra that, among equal-latency shortest paths, returns the one with the
// lexicographically smallest node sequence. Entire paths ride in the queue;
// the graphs here are small enough that this stays cheap.
struct LexRoute {
    double cost = 0.0;
    std::vector<int> nodes;

    bool operator>(const LexRoute& o) const {
        if (cost != o.cost) return cost > o.cost;
        return nodes > o.nodes;
    }
};

inline std::optional<LexRoute> lex_shortest(const Topology& topo, const LutSet& luts, int src,
                                            int dst, const std::vector<char>& node_banned,
                                            const std::vector<char>& edge_banned) {
    std::priority_queue<LexRoute, std::vector<LexRoute>, std::greater<>> pq;
    std::vector<char> settled(static_cast<std::size_t>(topo.zone_count()) + 1, 0);
    pq.push(LexRoute{0.0, {src}});
    while (!pq.empty()) {
        LexRoute cur = pq.top();
        pq.pop();
        const int v = cur.nodes.back();
        if (settled[static_cast<std::size_t>(v)]) continue;
        settled[static_cast<std::size_t>(v)] = 1;
        if (v == dst) return cur;
        for (const auto& [w, eidx] : topo.out_edges(v)) {
            if (settled[static_cast<std::size_t>(w)]) continue;
            if (node_banned[static_cast<std::size_t>(w)]) continue;
            if (edge_banned[static_cast<std::size_t>(eidx)]) continue;
            const Edge& e = topo.edges()[static_cast<std::size_t>(eidx)];
            const double wgt = luts.zero_load_delay(topo.undirected_index(e.from, e.to));
            LexRoute next{cur.cost + wgt, cur.nodes};
            next.nodes.push_back(w);
            pq.push(std::move(next));
        }
    }
    return std::nullopt;
}

inline Path route_to_path(const Topology& topo, const LutSet& luts, std::vector<int> nodes) {
    Path p;
    p.nodes = std::move(nodes);
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
        const int de = topo.directed_index(p.nodes[i], p.nodes[i + 1]);
        const int ue = topo.undirected_index(p.nodes[i], p.nodes[i + 1]);
        p.directed_edges.push_back(de);
        p.undirected_edges.push_back(ue);
        p.zero_load_latency_ms += luts.zero_load_delay(ue);
    }
    return p;
}

// Yen's loopless k-shortest-paths over the zero-load latency weights.
inline std::vector<Path> yen_k_shortest(const Topology& topo, const LutSet& luts, int src, int dst,
                                        int k) {
    std::vector<std::vector<int>> accepted;
    std::vector<LexRoute> candidates;
    std::vector<char> no_nodes(static_cast<std::size_t>(topo.zone_count()) + 1, 0);
    std::vector<char> no_edges(topo.edges().size(), 0);

    auto first = lex_shortest(topo, luts, src, dst, no_nodes, no_edges);
    if (!first) return {};
    accepted.push_back(first->nodes);

    while (static_cast<int>(accepted.size()) < k) {
        const auto& prev = accepted.back();
        for (std::size_t spur = 0; spur + 1 < prev.size(); ++spur) {
            std::vector<int> root(prev.begin(), prev.begin() + static_cast<std::ptrdiff_t>(spur) + 1);
            std::vector<char> node_banned(static_cast<std::size_t>(topo.zone_count()) + 1, 0);
            std::vector<char> edge_banned(topo.edges().size(), 0);
            // ban the edges that would recreate an accepted path with this root
            for (const auto& path : accepted) {
                if (path.size() > spur + 1 &&
                    std::equal(root.begin(), root.end(), path.begin())) {
                    const int eidx = topo.directed_index(path[spur], path[spur + 1]);
                    if (eidx >= 0) edge_banned[static_cast<std::size_t>(eidx)] = 1;
                }
            }
            for (std::size_t i = 0; i < spur; ++i) node_banned[static_cast<std::size_t>(root[i])] = 1;

            auto spur_route = lex_shortest(topo, luts, prev[spur], dst, node_banned, edge_banned);
            if (!spur_route) continue;

            std::vector<int> full(root.begin(), root.end() - 1);
            full.insert(full.end(), spur_route->nodes.begin(), spur_route->nodes.end());
            double cost = 0.0;
            for (std::size_t i = 0; i + 1 < full.size(); ++i)
                cost += luts.zero_load_delay(topo.undirected_index(full[i], full[i + 1]));

            const LexRoute cand{cost, std::move(full)};
            const bool seen_accepted =
                std::find(accepted.begin(), accepted.end(), cand.nodes) != accepted.end();
            const bool seen_candidate =
                std::find_if(candidates.begin(), candidates.end(), [&](const LexRoute& r) {
                    return r.nodes == cand.nodes;
                }) != candidates.end();
            if (!seen_accepted && !seen_candidate) candidates.push_back(cand);
        }
        if (candidates.empty()) break;
        auto best = std::min_element(candidates.begin(), candidates.end(),
                                     [](const LexRoute& l, const LexRoute& r) { return r > l; });
        accepted.push_back(best->nodes);
        candidates.erase(best);
    }

    std::vector<Path> out;
    out.reserve(accepted.size());
    for (auto& nodes : accepted) out.push_back(route_to_path(topo, luts, std::move(nodes)));
    return out;
}

} // namespace detail

// Up to k loopless routes per ordered pair; a self pair holds exactly the
// empty route. Deterministic for a fixed topology and k.
inline PathSet enumerate_paths(const Topology& topo, const LutSet& luts, int k) {
    if (k < 1) throw TopologyError("paths per pair must be at least 1");
    const int n = topo.zone_count();
    std::vector<std::vector<Path>> per_pair(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int m = 1; m <= n; ++m) {
        for (int dst = 1; dst <= n; ++dst) {
            auto& slot = per_pair[static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(n) +
                                  static_cast<std::size_t>(dst - 1)];
            if (m == dst) {
                Path self;
                self.nodes = {m};
                slot.push_back(std::move(self));
                continue;
            }
            slot = detail::yen_k_shortest(topo, luts, m, dst, k);
        }
    }
    return PathSet{n, std::move(per_pair)};
}

} // namespace ccdn
