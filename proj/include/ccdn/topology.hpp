#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ccdn/errors.hpp"
#include "ccdn/rng.hpp"

namespace ccdn {

enum class EdgeKind { inter_zone, inter_region };

inline const char* to_string(EdgeKind k) {
    return k == EdgeKind::inter_zone ? "inter-zone" : "inter-region";
}

inline EdgeKind edge_kind_from_string(std::string_view s) {
    if (s == "inter-zone") return EdgeKind::inter_zone;
    if (s == "inter-region") return EdgeKind::inter_region;
    throw ParseError("unknown edge kind '" + std::string(s) + "' (expected inter-zone or inter-region)");
}

// A zone doubles as a surrogate site. Ids are the contiguous range 1..|V|.
struct Zone {
    int id = 0;
    int region_id = 0;
    double storage_cost = 0.0; // normalized, in (0, 1] per content stored
};

// Directed edge. Edges always come in opposite pairs with equal capacity.
struct Edge {
    int from = 0;
    int to = 0;
    double capacity_mbps = 0.0;
    EdgeKind kind = EdgeKind::inter_zone;
};

// One representative per opposite pair, with a < b.
struct UndirectedEdge {
    int a = 0;
    int b = 0;
    double capacity_mbps = 0.0;
    EdgeKind kind = EdgeKind::inter_zone;
    int fwd = -1; // directed index a -> b
    int rev = -1; // directed index b -> a
};

class Topology {
public:
    void add_region(int id) {
        if (finalized_) throw TopologyError("topology already finalized");
        if (!region_set_.insert(id).second)
            throw ParseError("duplicate region id " + std::to_string(id));
        regions_.push_back(id);
    }

    void add_zone(int id, int region_id, double storage_cost) {
        if (finalized_) throw TopologyError("topology already finalized");
        if (!region_set_.count(region_id))
            throw ParseError("zone " + std::to_string(id) + " references unknown region " +
                             std::to_string(region_id));
        if (!zone_ids_.insert(id).second)
            throw ParseError("duplicate zone id " + std::to_string(id));
        if (!(storage_cost > 0.0 && storage_cost <= 1.0))
            throw ParseError("zone " + std::to_string(id) + " storage cost must lie in (0, 1]");
        zones_.push_back(Zone{id, region_id, storage_cost});
    }

    // Declares an undirected link; both directed edges are added.
    void add_link(int i, int j, double capacity_mbps, EdgeKind kind) {
        if (finalized_) throw TopologyError("topology already finalized");
        if (i == j) throw ParseError("self-loop edge at zone " + std::to_string(i));
        if (!zone_ids_.count(i) || !zone_ids_.count(j))
            throw ParseError("edge " + std::to_string(i) + "-" + std::to_string(j) +
                             " references an unknown zone");
        if (!(capacity_mbps > 0.0))
            throw ParseError("edge " + std::to_string(i) + "-" + std::to_string(j) +
                             " has non-positive capacity");
        const auto key = std::minmax(i, j);
        if (!link_set_.insert(key).second)
            throw ParseError("duplicate edge between zones " + std::to_string(i) + " and " +
                             std::to_string(j));
        edges_.push_back(Edge{i, j, capacity_mbps, kind});
        edges_.push_back(Edge{j, i, capacity_mbps, kind});
    }

    // Sorts everything into canonical order, builds the lookup indices and
    // checks the structural invariants. The topology is immutable afterwards.
    void finalize() {
        if (finalized_) return;
        if (zones_.empty()) throw TopologyError("topology has no zones");

        std::sort(zones_.begin(), zones_.end(), [](const Zone& l, const Zone& r) { return l.id < r.id; });
        for (std::size_t i = 0; i < zones_.size(); ++i) {
            if (zones_[i].id != static_cast<int>(i) + 1)
                throw TopologyError("zone ids must form the contiguous range 1..|V|");
        }
        std::sort(regions_.begin(), regions_.end());

        std::sort(edges_.begin(), edges_.end(), [](const Edge& l, const Edge& r) {
            return std::pair{l.from, l.to} < std::pair{r.from, r.to};
        });
        directed_index_.clear();
        for (std::size_t i = 0; i < edges_.size(); ++i)
            directed_index_[pack(edges_[i].from, edges_[i].to)] = static_cast<int>(i);

        undirected_.clear();
        undirected_index_.clear();
        for (const Edge& e : edges_) {
            if (e.from > e.to) continue;
            UndirectedEdge u;
            u.a = e.from;
            u.b = e.to;
            u.capacity_mbps = e.capacity_mbps;
            u.kind = e.kind;
            u.fwd = directed_index_.at(pack(u.a, u.b));
            u.rev = directed_index_.at(pack(u.b, u.a));
            undirected_index_[pack(u.a, u.b)] = static_cast<int>(undirected_.size());
            undirected_.push_back(u);
        }

        adjacency_.assign(zones_.size() + 1, {});
        for (std::size_t i = 0; i < edges_.size(); ++i)
            adjacency_[static_cast<std::size_t>(edges_[i].from)].push_back(
                {edges_[i].to, static_cast<int>(i)});
        for (auto& nbrs : adjacency_)
            std::sort(nbrs.begin(), nbrs.end());

        check_connected();
        finalized_ = true;
    }

    int zone_count() const { return static_cast<int>(zones_.size()); }
    const std::vector<Zone>& zones() const { return zones_; }
    const std::vector<int>& regions() const { return regions_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<UndirectedEdge>& undirected_edges() const { return undirected_; }

    const Zone& zone(int id) const { return zones_.at(static_cast<std::size_t>(id) - 1); }
    int region_of(int zone_id) const { return zone(zone_id).region_id; }

    std::vector<int> zones_in_region(int region_id) const {
        std::vector<int> out;
        for (const Zone& z : zones_)
            if (z.region_id == region_id) out.push_back(z.id);
        return out;
    }

    int directed_index(int i, int j) const {
        auto it = directed_index_.find(pack(i, j));
        return it == directed_index_.end() ? -1 : it->second;
    }

    int undirected_index(int i, int j) const {
        if (i > j) std::swap(i, j);
        auto it = undirected_index_.find(pack(i, j));
        return it == undirected_index_.end() ? -1 : it->second;
    }

    // Neighbors of zone i as (zone id, directed edge index), sorted by id.
    const std::vector<std::pair<int, int>>& out_edges(int i) const {
        return adjacency_.at(static_cast<std::size_t>(i));
    }

private:
    static std::int64_t pack(int i, int j) {
        return (static_cast<std::int64_t>(i) << 32) | static_cast<std::uint32_t>(j);
    }

    void check_connected() const {
        std::vector<char> seen(zones_.size() + 1, 0);
        std::vector<int> stack{zones_.front().id};
        seen[static_cast<std::size_t>(zones_.front().id)] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const auto& [w, idx] : adjacency_[static_cast<std::size_t>(v)]) {
                (void)idx;
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != zones_.size()) throw TopologyError("topology graph is not connected");
    }

    std::vector<Zone> zones_;
    std::vector<int> regions_;
    std::vector<Edge> edges_;
    std::vector<UndirectedEdge> undirected_;
    std::set<int> region_set_;
    std::set<int> zone_ids_;
    std::set<std::pair<int, int>> link_set_;
    std::unordered_map<std::int64_t, int> directed_index_;
    std::unordered_map<std::int64_t, int> undirected_index_;
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
    bool finalized_ = false;
};

// Line-oriented topology text:
//   region <id>
//   zone <id> <region> <alpha>
//   edge <i> <j> <capacity_mbps> <kind>
// '#' starts a comment; each declared edge implies its reverse.
inline Topology load_topology(std::string_view text) {
    Topology topo;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string directive;
        if (!(ls >> directive)) continue;
        try {
            if (directive == "region") {
                int id;
                if (!(ls >> id)) throw ParseError("region needs an id");
                topo.add_region(id);
            } else if (directive == "zone") {
                int id, region;
                double alpha;
                if (!(ls >> id >> region >> alpha)) throw ParseError("zone needs <id> <region> <alpha>");
                topo.add_zone(id, region, alpha);
            } else if (directive == "edge") {
                int i, j;
                double cap;
                std::string kind;
                if (!(ls >> i >> j >> cap >> kind)) throw ParseError("edge needs <i> <j> <capacity> <kind>");
                topo.add_link(i, j, cap, edge_kind_from_string(kind));
            } else {
                throw ParseError("unknown directive '" + directive + "'");
            }
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        std::string extra;
        if (ls >> extra)
            throw ParseError("line " + std::to_string(lineno) + ": trailing token '" + extra + "'");
    }
    topo.finalize();
    return topo;
}

inline std::string save_topology(const Topology& topo) {
    // %.17g keeps storage costs bit-exact across a save/load round trip
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::ostringstream out;
    out << "# regions: " << topo.regions().size() << ", zones: " << topo.zone_count() << "\n";
    for (int r : topo.regions()) out << "region " << r << "\n";
    for (const Zone& z : topo.zones())
        out << "zone " << z.id << " " << z.region_id << " " << num(z.storage_cost) << "\n";
    for (const UndirectedEdge& e : topo.undirected_edges())
        out << "edge " << e.a << " " << e.b << " " << num(e.capacity_mbps) << " "
            << to_string(e.kind) << "\n";
    return out.str();
}

// Amazon North America layout: 3 regions with 5/3/3 zones. Zones of one
// region form a full mesh; region pairs are joined by a single link between
// the lowest-id (gateway) zones. Storage costs come from `alphas` when given,
// otherwise from a seeded uniform draw in [0.2, 1.0].
inline Topology generate_amazon_na(double inter_region_capacity_mbps,
                                   double inter_zone_capacity_mbps,
                                   std::uint64_t alpha_seed = 1,
                                   const std::vector<double>* alphas = nullptr) {
    if (!(inter_region_capacity_mbps > 0.0) || !(inter_zone_capacity_mbps > 0.0))
        throw TopologyError("capacities must be positive");

    static constexpr int kZonesPerRegion[3] = {5, 3, 3};
    constexpr int total_zones = 11;

    std::vector<double> alpha;
    if (alphas) {
        if (alphas->size() != total_zones)
            throw TopologyError("expected 11 storage costs");
        alpha = *alphas;
    } else {
        auto g = rng::make_engine(alpha_seed);
        for (int i = 0; i < total_zones; ++i) alpha.push_back(rng::uniform_real(g, 0.2, 1.0));
    }

    Topology topo;
    int next_zone = 1;
    std::vector<int> gateways;
    for (int r = 1; r <= 3; ++r) {
        topo.add_region(r);
        gateways.push_back(next_zone);
        for (int z = 0; z < kZonesPerRegion[r - 1]; ++z) {
            topo.add_zone(next_zone, r, alpha[static_cast<std::size_t>(next_zone) - 1]);
            ++next_zone;
        }
    }
    // intra-region full mesh
    int first = 1;
    for (int r = 1; r <= 3; ++r) {
        const int n = kZonesPerRegion[r - 1];
        for (int i = first; i < first + n; ++i)
            for (int j = i + 1; j < first + n; ++j)
                topo.add_link(i, j, inter_zone_capacity_mbps, EdgeKind::inter_zone);
        first += n;
    }
    // one gateway-to-gateway link per region pair
    for (std::size_t i = 0; i < gateways.size(); ++i)
        for (std::size_t j = i + 1; j < gateways.size(); ++j)
            topo.add_link(gateways[i], gateways[j], inter_region_capacity_mbps, EdgeKind::inter_region);

    topo.finalize();
    return topo;
}

} // namespace ccdn
