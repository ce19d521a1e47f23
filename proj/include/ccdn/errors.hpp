#pragma once

#include <stdexcept>
#include <string>

namespace ccdn {

// Malformed input text (topology files, demand/config CSV, params files).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structural invariant of the network model is broken.
struct TopologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A load was pushed past an edge capacity / LUT range.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Demand cannot be met even with every zone acting as a provider.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact enumeration would exceed the configured work budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ccdn
