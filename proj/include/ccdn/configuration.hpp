#pragma once

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <vector>

#include "ccdn/errors.hpp"

namespace ccdn {

// One routing decision: `amount` requests for content k served by provider m
// to consumer n over path x. Path indices are 1-based.
struct FlowAssignment {
    int provider = 0;
    int consumer = 0;
    int path_x = 0;
    int content = 0;
    double amount = 0.0;

    auto key() const { return std::tuple{provider, consumer, path_x, content}; }
};

inline bool operator==(const FlowAssignment& l, const FlowAssignment& r) {
    return l.key() == r.key() && l.amount == r.amount;
}

// Placement bits plus the flow list. Loads, delays and violation flags are
// derived from it by the model evaluator, never stored.
class Configuration {
public:
    Configuration() = default;
    Configuration(int zones, int contents)
        : zones_(zones), contents_(contents),
          placement_(static_cast<std::size_t>(zones) * static_cast<std::size_t>(contents), 0) {}

    int zones() const { return zones_; }
    int contents() const { return contents_; }

    bool placed(int zone, int content) const { return placement_[slot(zone, content)] != 0; }
    void set_placed(int zone, int content, bool value = true) {
        placement_[slot(zone, content)] = value ? 1 : 0;
    }

    int placed_zone_count() const {
        int count = 0;
        for (int m = 1; m <= zones_; ++m) {
            for (int k = 1; k <= contents_; ++k) {
                if (placed(m, k)) {
                    ++count;
                    break;
                }
            }
        }
        return count;
    }

    const std::vector<std::uint8_t>& placement_bits() const { return placement_; }
    const std::vector<FlowAssignment>& flows() const { return flows_; }
    std::vector<FlowAssignment>& flows() { return flows_; }

    // Merges into an existing flow with the same (m, n, x, k) key.
    void add_flow(int provider, int consumer, int path_x, int content, double amount) {
        if (amount <= 0.0) throw TopologyError("flow amount must be positive");
        for (FlowAssignment& f : flows_) {
            if (f.key() == std::tuple{provider, consumer, path_x, content}) {
                f.amount += amount;
                return;
            }
        }
        flows_.push_back(FlowAssignment{provider, consumer, path_x, content, amount});
    }

    // Canonical order: sorted by key, duplicates merged, zero amounts dropped.
    void normalize() {
        std::sort(flows_.begin(), flows_.end(),
                  [](const FlowAssignment& l, const FlowAssignment& r) { return l.key() < r.key(); });
        std::vector<FlowAssignment> merged;
        for (const FlowAssignment& f : flows_) {
            if (!merged.empty() && merged.back().key() == f.key())
                merged.back().amount += f.amount;
            else
                merged.push_back(f);
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const FlowAssignment& f) { return f.amount <= 0.0; }),
                     merged.end());
        flows_ = std::move(merged);
    }

    // Placement plus normalized flow multiset; the comparison the repair
    // loop's "no improvement?" test uses.
    bool same_as(const Configuration& other) const {
        if (placement_ != other.placement_) return false;
        Configuration a = *this;
        Configuration b = other;
        a.normalize();
        b.normalize();
        return a.flows_ == b.flows_;
    }

private:
    std::size_t slot(int zone, int content) const {
        if (zone < 1 || zone > zones_ || content < 1 || content > contents_)
            throw TopologyError("placement index out of range");
        return static_cast<std::size_t>(zone - 1) * static_cast<std::size_t>(contents_) +
               static_cast<std::size_t>(content - 1);
    }

    int zones_ = 0;
    int contents_ = 0;
    std::vector<std::uint8_t> placement_;
    std::vector<FlowAssignment> flows_;
};

} // namespace ccdn
