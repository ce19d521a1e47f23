#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ccdn/configuration.hpp"
#include "ccdn/instance.hpp"
#include "ccdn/lut.hpp"
#include "ccdn/model.hpp"
#include "ccdn/text.hpp"

namespace ccdn {

// --- configuration CSV -------------------------------------------------------
// Placement rows are `x,m,k`, flow rows `y,m,n,x,k,amount`. '#' comments.

inline std::string write_config_csv(const Configuration& config) {
    Configuration c = config;
    c.normalize();
    std::ostringstream os;
    os << "# placement x,m,k / flows y,m,n,x,k,amount\n";
    for (int m = 1; m <= c.zones(); ++m)
        for (int k = 1; k <= c.contents(); ++k)
            if (c.placed(m, k)) os << "x," << m << ',' << k << '\n';
    for (const FlowAssignment& f : c.flows())
        os << "y," << f.provider << ',' << f.consumer << ',' << f.path_x << ',' << f.content << ','
           << fmt_num(f.amount) << '\n';
    return os.str();
}

inline Configuration read_config_csv(std::string_view text, int zones, int contents) {
    Configuration config(zones, contents);
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto fields = split(stripped, ',');
        try {
            if (fields[0] == "x") {
                if (fields.size() != 3) throw ParseError("placement row needs x,m,k");
                config.set_placed(std::stoi(fields[1]), std::stoi(fields[2]), true);
            } else if (fields[0] == "y") {
                if (fields.size() != 6) throw ParseError("flow row needs y,m,n,x,k,amount");
                config.add_flow(std::stoi(fields[1]), std::stoi(fields[2]), std::stoi(fields[3]),
                                std::stoi(fields[4]), std::stod(fields[5]));
            } else {
                throw ParseError("unknown row type '" + fields[0] + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return config;
}

// --- demand CSV --------------------------------------------------------------

inline std::string write_demand_csv(const DemandMatrix& demand) {
    std::ostringstream os;
    os << "zone,content,requests\n";
    for (int m = 1; m <= demand.zones(); ++m)
        for (int k = 1; k <= demand.contents(); ++k)
            os << m << ',' << k << ',' << demand.at(m, k) << '\n';
    return os.str();
}

inline DemandMatrix read_demand_csv(std::string_view text, int zones) {
    struct Row {
        int zone, content, requests;
    };
    std::vector<Row> rows;
    int max_content = 1;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (!saw_header) {
            if (stripped != "zone,content,requests")
                throw ParseError("demand file must start with header zone,content,requests");
            saw_header = true;
            continue;
        }
        const auto fields = split(stripped, ',');
        if (fields.size() != 3)
            throw ParseError("demand line " + std::to_string(lineno) + ": expected 3 fields");
        try {
            Row r{std::stoi(fields[0]), std::stoi(fields[1]), std::stoi(fields[2])};
            max_content = std::max(max_content, r.content);
            rows.push_back(r);
        } catch (const std::exception& e) {
            throw ParseError("demand line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!saw_header) throw ParseError("demand file is empty");
    DemandMatrix dm(zones, max_content);
    for (const Row& r : rows) dm.set(r.zone, r.content, r.requests);
    return dm;
}

// --- validation reports ------------------------------------------------------

inline std::string violations_text(const std::vector<ViolationRecord>& records) {
    if (records.empty()) return "valid: no constraint violations\n";
    std::ostringstream os;
    for (const ViolationRecord& v : records)
        os << v.constraint << " [" << v.entity << "] lhs=" << fmt_num(v.lhs)
           << " rhs=" << fmt_num(v.rhs) << " : " << v.note << '\n';
    return os.str();
}

inline std::string violations_csv(const std::vector<ViolationRecord>& records) {
    std::ostringstream os;
    os << "constraint,entity,lhs,rhs,note\n";
    for (const ViolationRecord& v : records)
        os << v.constraint << ',' << v.entity << ',' << fmt_num(v.lhs) << ',' << fmt_num(v.rhs)
           << ',' << v.note << '\n';
    return os.str();
}

// --- key=value parameter files ----------------------------------------------
// Scalar model parameters plus the delay/tariff knobs; '#' comments. Tariffs
// are comma-separated fraction:rate pairs, e.g. 0.4:0.01,1.0:0.005.

struct SimulationSettings {
    Params params;
    DelayModel delays;
    TariffBook tariffs;
};

inline Tariff parse_tariff(std::string_view text) {
    Tariff t;
    for (const std::string& pair : split(trim(text), ',')) {
        const auto parts = split(pair, ':');
        if (parts.size() != 2) throw ParseError("tariff tier must look like fraction:rate");
        t.push_back(TariffTier{std::stod(parts[0]), std::stod(parts[1])});
    }
    check_tariff(t);
    return t;
}

inline SimulationSettings parse_settings(std::string_view text, SimulationSettings base = {}) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError("settings line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        try {
            if (key == "qos_ms") base.params.qos_ms = std::stod(value);
            else if (key == "sla_percent") base.params.sla_percent = std::stod(value);
            else if (key == "access_rate_mbps") base.params.access_rate_mbps = std::stod(value);
            else if (key == "mu_mbps") base.params.mu_mbps = std::stod(value);
            else if (key == "latency_cap_ms") base.params.latency_cap_ms = std::stod(value);
            else if (key == "server_latency_ms") base.params.server_latency_ms = std::stod(value);
            else if (key == "isp_latency_ms") base.params.isp_latency_ms = std::stod(value);
            else if (key == "big_k") base.params.big_k = std::stod(value);
            else if (key == "paths_per_pair") base.params.paths_per_pair = std::stoi(value);
            else if (key == "inter_zone_base_ms") base.delays.inter_zone.base_ms = std::stod(value);
            else if (key == "inter_zone_queue_ms") base.delays.inter_zone.queue_ms = std::stod(value);
            else if (key == "inter_region_base_ms") base.delays.inter_region.base_ms = std::stod(value);
            else if (key == "inter_region_queue_ms") base.delays.inter_region.queue_ms = std::stod(value);
            else if (key == "inter_zone_tariff") base.tariffs.inter_zone = parse_tariff(value);
            else if (key == "inter_region_tariff") base.tariffs.inter_region = parse_tariff(value);
            else throw ParseError("unknown settings key '" + key + "'");
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError("settings line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

} // namespace ccdn
