#include "spde2d/grids.hpp"

#include <cmath>
#include <sstream>

#include "spde2d/errors.hpp"

namespace spde2d {

void validate(const TimeGrid& grid) {
    if (grid.num_steps < 1) throw config_error("time grid needs N >= 1");
}

void validate(const SpatialGrid& grid) {
    if (grid.M1 < 2 || grid.M2 < 2) throw config_error("spatial grid needs M1, M2 >= 2");
}

void validate(const Truncation& trunc) {
    if (trunc.L1 < 1 || trunc.L2 < 1) throw config_error("truncation needs L1, L2 >= 1");
}

namespace {

// Returns the exact integer a real grid position corresponds to, or -1.
int aligned_index(double position, int resolution) {
    const double scaled = position * resolution;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-9 * resolution) return -1;
    const int idx = static_cast<int>(rounded);
    if (idx < 0 || idx > resolution) return -1;
    return idx;
}

}  // namespace

SpatialThinning SpatialThinning::create(double b, int m1, const SpatialGrid& grid,
                                        const TimeGrid& time_grid) {
    validate(grid);
    validate(time_grid);
    if (!(b > 0.0 && b < 0.5)) throw config_error("thinning offset b must lie in (0, 1/2)");
    if (m1 < 1) throw config_error("thinning needs m1 >= 1");

    SpatialThinning t;
    t.b_ = b;
    t.m1_ = m1;
    t.delta_ = (1.0 - 2.0 * b) / m1;
    t.r_ = t.delta_ * std::sqrt(static_cast<double>(time_grid.num_steps));
    t.y_index_.resize(static_cast<std::size_t>(m1) + 1);
    t.z_index_.resize(static_cast<std::size_t>(m1) + 1);
    for (int j = 0; j <= m1; ++j) {
        const double node = b + j * t.delta_;
        const int jy = aligned_index(node, grid.M1);
        const int jz = aligned_index(node, grid.M2);
        if (jy < 0 || jz < 0) {
            std::ostringstream oss;
            oss << "thinned node " << node << " does not coincide with an observation node"
                << " (b=" << b << ", m1=" << m1 << ", M1=" << grid.M1 << ", M2=" << grid.M2
                << "); choose b*M and (1-2b)*M/m1 integer";
            throw config_error(oss.str());
        }
        t.y_index_[static_cast<std::size_t>(j)] = jy;
        t.z_index_[static_cast<std::size_t>(j)] = jz;
    }
    return t;
}

TemporalThinning TemporalThinning::create(int n, const TimeGrid& grid) {
    validate(grid);
    if (n < 1 || n > grid.num_steps) throw config_error("temporal thinning needs 1 <= n <= N");
    TemporalThinning t;
    t.n_ = n;
    t.stride_ = grid.num_steps / n;
    t.delta_n_ = static_cast<double>(t.stride_) / grid.num_steps;
    return t;
}

}  // namespace spde2d
