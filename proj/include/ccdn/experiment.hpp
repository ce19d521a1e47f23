#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ccdn/heuristics.hpp"
#include "ccdn/scenario.hpp"
#include "ccdn/text.hpp"

namespace ccdn {

// One (scenario, access rate, heuristic) cell of the comparison grid.
struct ExperimentRow {
    std::string scenario;
    std::uint64_t seed = 0;
    double rate_mbps = 0.0;
    PriorityKind kind = PriorityKind::WSNA;
    bool ok = true;
    std::string error;

    int providers = 0;
    double storage_cost = 0.0;
    double bandwidth_cost = 0.0;
    double violation_degree = 0.0;
    double total_cost = 0.0;
    double sla_violation_rate = 0.0;
    double sla_violation_rate_requests = 0.0;
    double mean_latency_ms = 0.0;          // per used path, matching Eq. 6 accounting
    double p95_latency_ms = 0.0;
    double mean_latency_requests_ms = 0.0; // request-weighted, informational
    double upper_bound_cost = 0.0;         // all-surrogates placement
    bool sla_best_effort = false;
    double runtime_ms = 0.0; // wall clock; kept out of the deterministic CSV
};

struct ExperimentSpec {
    std::vector<Scenario> scenarios;
    std::vector<double> rates_mbps;
    std::vector<PriorityKind> kinds;
    Params base;
    DelayModel delays;
    TariffBook tariffs;
};

namespace detail {

inline void fill_latency_stats(const Instance& inst, const Evaluation& ev, ExperimentRow& row) {
    if (ev.used.empty()) return;
    const double extra = inst.params.server_latency_ms + inst.params.isp_latency_ms;
    std::vector<double> perceived;
    perceived.reserve(ev.used.size());
    double weighted = 0.0;
    double units = 0.0;
    for (const TupleUse& t : ev.used) {
        perceived.push_back(t.gamma_ms + extra);
        weighted += (t.gamma_ms + extra) * t.flow_units;
        units += t.flow_units;
    }
    double sum = 0.0;
    for (double v : perceived) sum += v;
    row.mean_latency_ms = sum / static_cast<double>(perceived.size());
    std::sort(perceived.begin(), perceived.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(0.95 * static_cast<double>(perceived.size())));
    row.p95_latency_ms = perceived[std::min(perceived.size() - 1, rank == 0 ? 0 : rank - 1)];
    row.mean_latency_requests_ms = units > 0.0 ? weighted / units : 0.0;
}

} // namespace detail

// Cost of the naive "place everything everywhere" configuration, which
// self-serves all demand: pure storage, no bandwidth, no violations.
inline double all_surrogates_cost(const Topology& topo, int contents) {
    double cost = 0.0;
    for (const Zone& z : topo.zones()) cost += static_cast<double>(contents) * z.storage_cost;
    return cost;
}

inline std::vector<ExperimentRow> run_experiment(const Topology& topo, const ExperimentSpec& spec) {
    std::vector<ExperimentRow> rows;
    for (const Scenario& sc : spec.scenarios) {
        const DemandMatrix demand = gen_scenario(topo, sc);
        for (double rate : spec.rates_mbps) {
            std::optional<Instance> inst;
            std::string instance_error;
            try {
                Params p = spec.base;
                p.access_rate_mbps = rate;
                inst.emplace(make_instance(topo, demand, p, spec.delays, spec.tariffs));
            } catch (const std::exception& e) {
                instance_error = e.what();
            }
            for (PriorityKind kind : spec.kinds) {
                ExperimentRow row;
                row.scenario = to_string(sc.kind);
                row.seed = sc.seed;
                row.rate_mbps = rate;
                row.kind = kind;
                row.upper_bound_cost = all_surrogates_cost(topo, sc.contents);
                if (!inst) {
                    row.ok = false;
                    row.error = instance_error;
                    rows.push_back(row);
                    continue;
                }
                const auto start = std::chrono::steady_clock::now();
                try {
                    const PlacementResult res = place(*inst, kind);
                    row.providers = static_cast<int>(res.provider_order.size());
                    row.storage_cost = res.eval.report.storage_cost;
                    row.bandwidth_cost = res.eval.report.bandwidth_cost;
                    row.violation_degree = res.eval.report.violation_degree;
                    row.total_cost = res.eval.report.total;
                    row.sla_violation_rate = res.eval.report.sla_violation_rate;
                    row.sla_violation_rate_requests = res.eval.report.sla_violation_rate_requests;
                    row.sla_best_effort = res.sla_best_effort;
                    detail::fill_latency_stats(*inst, res.eval, row);
                } catch (const std::exception& e) {
                    row.ok = false;
                    row.error = e.what();
                }
                row.runtime_ms = std::chrono::duration<double, std::milli>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
                rows.push_back(row);
            }
        }
    }
    return rows;
}

// Deterministic results table; wall-clock timings live in timings_csv.
inline std::string results_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream os;
    os << "scenario,seed,rate_mbps,kind,ok,providers,storage_cost,bandwidth_cost,"
          "violation_degree,total_cost,sla_violation_rate,sla_violation_rate_requests,"
          "mean_latency_ms,p95_latency_ms,mean_latency_reqw_ms,upper_bound_cost,"
          "sla_best_effort,error\n";
    for (const ExperimentRow& r : rows) {
        os << r.scenario << ',' << r.seed << ',' << fmt_num(r.rate_mbps) << ',' << to_string(r.kind)
           << ',' << (r.ok ? 1 : 0) << ',' << r.providers << ',' << fmt_num(r.storage_cost) << ','
           << fmt_num(r.bandwidth_cost) << ',' << fmt_num(r.violation_degree) << ','
           << fmt_num(r.total_cost) << ',' << fmt_num(r.sla_violation_rate) << ','
           << fmt_num(r.sla_violation_rate_requests) << ',' << fmt_num(r.mean_latency_ms) << ','
           << fmt_num(r.p95_latency_ms) << ',' << fmt_num(r.mean_latency_requests_ms) << ','
           << fmt_num(r.upper_bound_cost) << ',' << (r.sla_best_effort ? 1 : 0) << ',' << r.error
           << '\n';
    }
    return os.str();
}

inline std::string timings_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream os;
    os << "scenario,seed,rate_mbps,kind,runtime_ms\n";
    for (const ExperimentRow& r : rows)
        os << r.scenario << ',' << r.seed << ',' << fmt_num(r.rate_mbps) << ','
           << to_string(r.kind) << ',' << fmt_num(r.runtime_ms) << '\n';
    return os.str();
}

// One Fig.-4-style panel: x = access rate, one column per heuristic.
inline std::string emit_plotdata(const std::vector<ExperimentRow>& rows, std::string_view axis,
                                 std::optional<std::string> scenario_filter = std::nullopt,
                                 std::optional<double> rate_filter = std::nullopt) {
    auto metric = [&](const ExperimentRow& r) -> double {
        if (axis == "cost") return r.total_cost;
        if (axis == "providers") return static_cast<double>(r.providers);
        if (axis == "latency") return r.mean_latency_ms;
        if (axis == "sla") return r.sla_violation_rate;
        if (axis == "degree") return r.violation_degree;
        throw ParseError("unknown plot axis '" + std::string(axis) +
                         "' (expected cost, providers, latency, sla or degree)");
    };
    metric(ExperimentRow{}); // validate the axis before filtering

    std::vector<const ExperimentRow*> selected;
    for (const ExperimentRow& r : rows) {
        if (!r.ok) continue;
        if (scenario_filter && r.scenario != *scenario_filter) continue;
        if (rate_filter && r.rate_mbps != *rate_filter) continue;
        selected.push_back(&r);
    }
    if (selected.empty()) throw ParseError("no experiment rows match the requested filter");

    std::map<double, std::map<PriorityKind, double>> grid;
    for (const ExperimentRow* r : selected) {
        auto& cell = grid[r->rate_mbps];
        if (cell.count(r->kind))
            throw ParseError("ambiguous plot data: multiple rows per (rate, kind); filter by scenario");
        cell[r->kind] = metric(*r);
    }

    std::ostringstream os;
    os << "rate,GS,WSNA,SNA\n";
    for (const auto& [rate, cells] : grid) {
        os << fmt_num(rate);
        for (PriorityKind k : {PriorityKind::GS, PriorityKind::WSNA, PriorityKind::SNA}) {
            os << ',';
            if (auto it = cells.find(k); it != cells.end()) os << fmt_num(it->second);
        }
        os << '\n';
    }
    return os.str();
}

} // namespace ccdn
