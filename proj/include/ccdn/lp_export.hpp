#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ccdn/model.hpp"
#include "ccdn/text.hpp"

namespace ccdn {

namespace lp {

inline std::string x_name(int m, int k) { return "x_" + std::to_string(m) + "_" + std::to_string(k); }
inline std::string y_name(int m, int n, int x, int k) {
    return "y_" + std::to_string(m) + "_" + std::to_string(n) + "_" + std::to_string(x) + "_" +
           std::to_string(k);
}
inline std::string tuple_suffix(int m, int n, int x) {
    return std::to_string(m) + "_" + std::to_string(n) + "_" + std::to_string(x);
}
inline std::string a_name(int m, int n, int x) { return "a_" + tuple_suffix(m, n, x); }
inline std::string z_name(int m, int n, int x) { return "z_" + tuple_suffix(m, n, x); }
inline std::string gam_name(int m, int n, int x) { return "gam_" + tuple_suffix(m, n, x); }
inline std::string w1_name(int m, int n, int x) { return "w1_" + tuple_suffix(m, n, x); }
inline std::string w2_name(int m, int n, int x) { return "w2_" + tuple_suffix(m, n, x); }
inline std::string l_name(int i, int j) { return "l_" + std::to_string(i) + "_" + std::to_string(j); }
inline std::string h_name(int i, int j, int p) {
    return "h_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(p);
}
inline std::string f_name(int a, int b, int p) {
    return "f_" + std::to_string(a) + "_" + std::to_string(b) + "_" + std::to_string(p);
}
inline std::string d_name(int a, int b) { return "d_" + std::to_string(a) + "_" + std::to_string(b); }

// Accumulates "coef * var" terms and renders them with sign handling and
// line wrapping (old LP readers dislike very long lines).
class Expr {
public:
    void add(double coef, const std::string& var) {
        if (coef == 0.0) return;
        terms_.emplace_back(coef, var);
    }

    bool empty() const { return terms_.empty(); }

    std::string render() const {
        std::string out;
        int on_line = 0;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto& [coef, var] = terms_[i];
            if (i == 0) {
                if (coef < 0.0) out += "- ";
            } else {
                out += coef < 0.0 ? " - " : " + ";
            }
            const double mag = coef < 0.0 ? -coef : coef;
            if (mag != 1.0) {
                out += fmt_num(mag);
                out += " ";
            }
            out += var;
            if (++on_line >= 8 && i + 1 < terms_.size()) {
                out += "\n   ";
                on_line = 0;
            }
        }
        return out;
    }

private:
    std::vector<std::pair<double, std::string>> terms_;
};

} // namespace lp

// Closed-form count of the variables the exporter emits:
//   x: |V||C|        y: T|C|         a, z, gamma, w1, w2: T each
//   l: |E|           h: sum_E (B/mu + 1)
//   d: |E'|          f: sum_E' (B/mu + 1)
// with T the number of (m, n, x) tuples, self pairs included.
inline std::size_t lp_variable_count(const Instance& inst) {
    const std::size_t V = static_cast<std::size_t>(inst.zone_count());
    const std::size_t C = static_cast<std::size_t>(inst.content_count());
    const std::size_t T = inst.paths.tuple_count();
    std::size_t f_count = 0;
    for (const LatencyLut& lut : inst.luts.latency) f_count += lut.v.size();
    std::size_t h_count = 0;
    for (const BandwidthCostLut& lut : inst.luts.cost) h_count += lut.w.size();
    return V * C + T * C + 5 * T + inst.topology.edges().size() + h_count + f_count +
           inst.topology.undirected_edges().size();
}

// Emits the full linearized ILP in CPLEX LP text syntax. The products
// z*gamma and a*gamma become w1/w2 with the standard big-M rows; the per-path
// constant is latency_cap * max(1, hops) since multi-hop latencies can exceed
// the per-edge cap.
inline std::string export_ilp(const Instance& inst, std::size_t max_variables = 20000) {
    if (lp_variable_count(inst) > max_variables)
        throw BudgetError("ILP export would need " + std::to_string(lp_variable_count(inst)) +
                          " variables (cap " + std::to_string(max_variables) + ")");

    const Topology& topo = inst.topology;
    const int V = topo.zone_count();
    const int C = inst.content_count();
    const Params& par = inst.params;
    const double K = inst.big_k();
    const double U = par.latency_cap_ms;

    auto path_bound = [&](int m, int n, int x) {
        const Path& p = inst.paths.path(m, n, x);
        return U * static_cast<double>(p.hop_count() > 0 ? p.hop_count() : 1);
    };

    std::ostringstream os;
    os << "\\ QoS-aware content placement ILP\n";
    os << "\\ zones=" << V << " contents=" << C << " edges=" << topo.edges().size()
       << " tuples=" << inst.paths.tuple_count() << "\n";
    os << "Minimize\n obj: ";
    {
        lp::Expr obj;
        for (int m = 1; m <= V; ++m)
            for (int k = 1; k <= C; ++k) obj.add(topo.zone(m).storage_cost, lp::x_name(m, k));
        for (std::size_t e = 0; e < topo.edges().size(); ++e) {
            const Edge& ed = topo.edges()[e];
            const auto& w = inst.luts.cost[e].w;
            for (std::size_t p = 1; p < w.size(); ++p)
                obj.add(w[p], lp::h_name(ed.from, ed.to, static_cast<int>(p)));
        }
        for (int m = 1; m <= V; ++m)
            for (int n = 1; n <= V; ++n)
                for (int x = 1; x <= inst.paths.count(m, n); ++x)
                    obj.add(1.0 / U, lp::w1_name(m, n, x));
        os << obj.render() << "\n";
    }

    os << "Subject To\n";
    // (1) every request met, with service splitting
    for (int n = 1; n <= V; ++n) {
        for (int k = 1; k <= C; ++k) {
            lp::Expr e;
            for (int m = 1; m <= V; ++m)
                for (int x = 1; x <= inst.paths.count(m, n); ++x) e.add(1.0, lp::y_name(m, n, x, k));
            os << " c1_" << n << "_" << k << ": " << e.render() << " >= "
               << inst.demand.at(n, k) << "\n";
        }
    }
    // (2) only hosting zones serve
    for (int m = 1; m <= V; ++m) {
        for (int k = 1; k <= C; ++k) {
            lp::Expr e;
            for (int n = 1; n <= V; ++n)
                for (int x = 1; x <= inst.paths.count(m, n); ++x) e.add(1.0, lp::y_name(m, n, x, k));
            e.add(-K, lp::x_name(m, k));
            os << " c2_" << m << "_" << k << ": " << e.render() << " <= 0\n";
        }
    }
    // (3)-(5) per tuple: usage flags and QoS violation flags
    for (int m = 1; m <= V; ++m) {
        for (int n = 1; n <= V; ++n) {
            for (int x = 1; x <= inst.paths.count(m, n); ++x) {
                const std::string sfx = lp::tuple_suffix(m, n, x);
                lp::Expr e3, e4;
                for (int k = 1; k <= C; ++k) {
                    e3.add(1.0, lp::y_name(m, n, x, k));
                    e4.add(1.0, lp::y_name(m, n, x, k));
                }
                e3.add(-K, lp::a_name(m, n, x));
                e4.add(-1.0, lp::a_name(m, n, x));
                os << " c3_" << sfx << ": " << e3.render() << " <= 0\n";
                os << " c4_" << sfx << ": " << e4.render() << " >= 0\n";
                lp::Expr e5;
                e5.add(1.0, lp::w2_name(m, n, x));
                e5.add(par.server_latency_ms + par.isp_latency_ms, lp::a_name(m, n, x));
                e5.add(-K, lp::z_name(m, n, x));
                os << " c5_" << sfx << ": " << e5.render() << " <= " << fmt_num(par.qos_ms) << "\n";
            }
        }
    }
    // (6) SLA over used paths
    {
        lp::Expr e;
        const double slack = 1.0 - par.sla_percent / 100.0;
        for (int m = 1; m <= V; ++m)
            for (int n = 1; n <= V; ++n)
                for (int x = 1; x <= inst.paths.count(m, n); ++x) {
                    e.add(1.0, lp::z_name(m, n, x));
                    e.add(-slack, lp::a_name(m, n, x));
                }
        os << " c6: " << e.render() << " <= 0\n";
    }
    // (7) directional edge loads
    {
        // which tuples ride each directed edge
        std::vector<std::vector<std::tuple<int, int, int>>> on_edge(topo.edges().size());
        for (int m = 1; m <= V; ++m)
            for (int n = 1; n <= V; ++n)
                for (int x = 1; x <= inst.paths.count(m, n); ++x)
                    for (int eidx : inst.paths.path(m, n, x).directed_edges)
                        on_edge[static_cast<std::size_t>(eidx)].push_back({m, n, x});
        for (std::size_t e = 0; e < topo.edges().size(); ++e) {
            const Edge& ed = topo.edges()[e];
            lp::Expr ex;
            ex.add(1.0, lp::l_name(ed.from, ed.to));
            for (const auto& [m, n, x] : on_edge[e])
                for (int k = 1; k <= C; ++k) ex.add(-par.access_rate_mbps, lp::y_name(m, n, x, k));
            os << " c7_" << ed.from << "_" << ed.to << ": " << ex.render() << " = 0\n";
        }
    }
    // (8)-(10) latency LUT selection per undirected edge
    for (std::size_t u = 0; u < topo.undirected_edges().size(); ++u) {
        const UndirectedEdge& ue = topo.undirected_edges()[u];
        const auto& v = inst.luts.latency[u].v;
        lp::Expr e8;
        e8.add(1.0, lp::l_name(ue.a, ue.b));
        e8.add(1.0, lp::l_name(ue.b, ue.a));
        for (std::size_t p = 1; p < v.size(); ++p)
            e8.add(-par.mu_mbps * static_cast<double>(p), lp::f_name(ue.a, ue.b, static_cast<int>(p)));
        os << " c8_" << ue.a << "_" << ue.b << ": " << e8.render() << " = 0\n";
        lp::Expr e9;
        for (std::size_t p = 0; p < v.size(); ++p) e9.add(1.0, lp::f_name(ue.a, ue.b, static_cast<int>(p)));
        os << " c9_" << ue.a << "_" << ue.b << ": " << e9.render() << " = 1\n";
        lp::Expr e10;
        e10.add(1.0, lp::d_name(ue.a, ue.b));
        for (std::size_t p = 0; p < v.size(); ++p)
            e10.add(-v[p], lp::f_name(ue.a, ue.b, static_cast<int>(p)));
        os << " c10_" << ue.a << "_" << ue.b << ": " << e10.render() << " = 0\n";
    }
    // (11) path latency from edge delays
    for (int m = 1; m <= V; ++m) {
        for (int n = 1; n <= V; ++n) {
            for (int x = 1; x <= inst.paths.count(m, n); ++x) {
                lp::Expr e;
                e.add(1.0, lp::gam_name(m, n, x));
                for (int ui : inst.paths.path(m, n, x).undirected_edges) {
                    const UndirectedEdge& ue = topo.undirected_edges()[static_cast<std::size_t>(ui)];
                    e.add(-1.0, lp::d_name(ue.a, ue.b));
                }
                os << " c11_" << lp::tuple_suffix(m, n, x) << ": " << e.render() << " = 0\n";
            }
        }
    }
    // (12)-(13) bandwidth LUT selection per directed edge ((14) is the
    // objective's h-terms)
    for (std::size_t e = 0; e < topo.edges().size(); ++e) {
        const Edge& ed = topo.edges()[e];
        const auto& w = inst.luts.cost[e].w;
        lp::Expr e12;
        e12.add(1.0, lp::l_name(ed.from, ed.to));
        for (std::size_t p = 1; p < w.size(); ++p)
            e12.add(-par.mu_mbps * static_cast<double>(p), lp::h_name(ed.from, ed.to, static_cast<int>(p)));
        os << " c12_" << ed.from << "_" << ed.to << ": " << e12.render() << " = 0\n";
        lp::Expr e13;
        for (std::size_t p = 0; p < w.size(); ++p) e13.add(1.0, lp::h_name(ed.from, ed.to, static_cast<int>(p)));
        os << " c13_" << ed.from << "_" << ed.to << ": " << e13.render() << " = 1\n";
    }
    // linearization of w1 = z * gamma and w2 = a * gamma
    for (int m = 1; m <= V; ++m) {
        for (int n = 1; n <= V; ++n) {
            for (int x = 1; x <= inst.paths.count(m, n); ++x) {
                const std::string sfx = lp::tuple_suffix(m, n, x);
                const double M = path_bound(m, n, x);
                const struct {
                    const char* tag;
                    std::string w;
                    std::string b;
                } prods[2] = {{"lz", lp::w1_name(m, n, x), lp::z_name(m, n, x)},
                              {"la", lp::w2_name(m, n, x), lp::a_name(m, n, x)}};
                for (const auto& pr : prods) {
                    lp::Expr up;
                    up.add(1.0, pr.w);
                    up.add(-M, pr.b);
                    os << " " << pr.tag << "1_" << sfx << ": " << up.render() << " <= 0\n";
                    lp::Expr cap;
                    cap.add(1.0, pr.w);
                    cap.add(-1.0, lp::gam_name(m, n, x));
                    os << " " << pr.tag << "2_" << sfx << ": " << cap.render() << " <= 0\n";
                    lp::Expr low;
                    low.add(1.0, pr.w);
                    low.add(-1.0, lp::gam_name(m, n, x));
                    low.add(-M, pr.b);
                    os << " " << pr.tag << "3_" << sfx << ": " << low.render() << " >= "
                       << fmt_num(-M) << "\n";
                }
            }
        }
    }

    os << "Binary\n";
    for (int m = 1; m <= V; ++m)
        for (int k = 1; k <= C; ++k) os << " " << lp::x_name(m, k) << "\n";
    for (int m = 1; m <= V; ++m)
        for (int n = 1; n <= V; ++n)
            for (int x = 1; x <= inst.paths.count(m, n); ++x)
                os << " " << lp::a_name(m, n, x) << "\n " << lp::z_name(m, n, x) << "\n";
    for (const UndirectedEdge& ue : topo.undirected_edges()) {
        const auto& v = inst.luts.latency[static_cast<std::size_t>(topo.undirected_index(ue.a, ue.b))].v;
        for (std::size_t p = 0; p < v.size(); ++p)
            os << " " << lp::f_name(ue.a, ue.b, static_cast<int>(p)) << "\n";
    }
    for (std::size_t e = 0; e < topo.edges().size(); ++e) {
        const Edge& ed = topo.edges()[e];
        for (std::size_t p = 0; p < inst.luts.cost[e].w.size(); ++p)
            os << " " << lp::h_name(ed.from, ed.to, static_cast<int>(p)) << "\n";
    }
    os << "End\n";
    return os.str();
}

// Values for every exported variable under a concrete configuration; used to
// check a solution against the exported rows.
inline std::map<std::string, double> lp_substitution(const Instance& inst,
                                                     const Configuration& config) {
    const Topology& topo = inst.topology;
    const int V = topo.zone_count();
    const int C = inst.content_count();
    std::map<std::string, double> val;

    for (int m = 1; m <= V; ++m)
        for (int k = 1; k <= C; ++k) val[lp::x_name(m, k)] = config.placed(m, k) ? 1.0 : 0.0;

    for (int m = 1; m <= V; ++m)
        for (int n = 1; n <= V; ++n)
            for (int x = 1; x <= inst.paths.count(m, n); ++x)
                for (int k = 1; k <= C; ++k) val[lp::y_name(m, n, x, k)] = 0.0;
    for (const FlowAssignment& f : config.flows())
        val[lp::y_name(f.provider, f.consumer, f.path_x, f.content)] += f.amount;

    const Evaluation ev = evaluate(inst, config);
    for (std::size_t e = 0; e < topo.edges().size(); ++e) {
        const Edge& ed = topo.edges()[e];
        val[lp::l_name(ed.from, ed.to)] = ev.directed_load_mbps[e];
        const int hp = inst.luts.cost[e].index_for(ev.directed_load_mbps[e]);
        for (std::size_t p = 0; p < inst.luts.cost[e].w.size(); ++p)
            val[lp::h_name(ed.from, ed.to, static_cast<int>(p))] = static_cast<int>(p) == hp ? 1.0 : 0.0;
    }
    for (std::size_t u = 0; u < topo.undirected_edges().size(); ++u) {
        const UndirectedEdge& ue = topo.undirected_edges()[u];
        const double combined = ev.directed_load_mbps[static_cast<std::size_t>(ue.fwd)] +
                                ev.directed_load_mbps[static_cast<std::size_t>(ue.rev)];
        const int fp = inst.luts.latency[u].index_for(combined);
        for (std::size_t p = 0; p < inst.luts.latency[u].v.size(); ++p)
            val[lp::f_name(ue.a, ue.b, static_cast<int>(p))] = static_cast<int>(p) == fp ? 1.0 : 0.0;
        val[lp::d_name(ue.a, ue.b)] = ev.undirected_delay_ms[u];
    }

    // gamma is defined by c11 for every tuple, used or not
    for (int m = 1; m <= V; ++m)
        for (int n = 1; n <= V; ++n)
            for (int x = 1; x <= inst.paths.count(m, n); ++x) {
                const double gamma = path_latency(inst.paths.path(m, n, x), ev.undirected_delay_ms);
                val[lp::gam_name(m, n, x)] = gamma;
                val[lp::a_name(m, n, x)] = 0.0;
                val[lp::z_name(m, n, x)] = 0.0;
                val[lp::w1_name(m, n, x)] = 0.0;
                val[lp::w2_name(m, n, x)] = 0.0;
            }
    for (const TupleUse& t : ev.used) {
        val[lp::a_name(t.provider, t.consumer, t.path_x)] = 1.0;
        val[lp::w2_name(t.provider, t.consumer, t.path_x)] = t.gamma_ms;
        if (t.violating) {
            val[lp::z_name(t.provider, t.consumer, t.path_x)] = 1.0;
            val[lp::w1_name(t.provider, t.consumer, t.path_x)] = t.gamma_ms;
        }
    }
    return val;
}

} // namespace ccdn
