#pragma once

#include <stdexcept>
#include <string>

namespace spde2d {

// Raised when a configuration file or a config-derived object violates its
// invariants (bad parameter ranges, misaligned thinning grids, ...).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when observed data cannot support an estimation step (all cells
// nonpositive, zero residual energy, ...).
struct degenerate_data_error : std::runtime_error {
    explicit degenerate_data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a quadrature or lattice evaluation cannot reach its tolerance
// within budget.  Never swallowed: callers either handle it or let it surface.
struct quadrature_error : std::runtime_error {
    explicit quadrature_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace spde2d
