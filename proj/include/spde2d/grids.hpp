#pragma once

#include <vector>

namespace spde2d {

// Uniform observation times t_i = i/N on [0,1].
struct TimeGrid {
    int num_steps = 1;  // N >= 1

    double dt() const noexcept { return 1.0 / num_steps; }
    double time(int i) const noexcept { return static_cast<double>(i) / num_steps; }
};

// Uniform spatial observation nodes y_j = j/M1, z_k = k/M2 on [0,1]^2.
struct SpatialGrid {
    int M1 = 2;
    int M2 = 2;

    double y(int j) const noexcept { return static_cast<double>(j) / M1; }
    double z(int k) const noexcept { return static_cast<double>(k) / M2; }
};

// Spectral truncation: modes 1..L1 x 1..L2 are retained.
struct Truncation {
    int L1 = 1;
    int L2 = 1;
};

void validate(const TimeGrid& grid);
void validate(const SpatialGrid& grid);
void validate(const Truncation& trunc);

// Interior spatial sub-grid used by the squared-increment statistics: nodes
// ytilde_j = b + j*delta, ztilde_k = b + k*delta with delta = (1-2b)/m1 and
// m2 = m1.  Every thinned node must coincide exactly with an observation node
// of the full grid; misaligned configurations are rejected, never snapped
// (snapping would silently change r and bias the increment profile).
class SpatialThinning {
public:
    static SpatialThinning create(double b, int m1, const SpatialGrid& grid,
                                  const TimeGrid& time_grid);

    double b() const noexcept { return b_; }
    int m1() const noexcept { return m1_; }
    int m2() const noexcept { return m1_; }
    int m() const noexcept { return m1_ * m1_; }
    double delta() const noexcept { return delta_; }
    // r = delta / sqrt(dt), the fixed space-time aspect ratio of one cell.
    double r() const noexcept { return r_; }

    double ytilde(int j) const noexcept { return b_ + j * delta_; }
    double ztilde(int k) const noexcept { return b_ + k * delta_; }
    double ybar(int j) const noexcept { return b_ + (j - 0.5) * delta_; }
    double zbar(int k) const noexcept { return b_ + (k - 0.5) * delta_; }

    // Index of ytilde_j (resp. ztilde_k) in the full observation grid.
    int y_index(int j) const noexcept { return y_index_[static_cast<std::size_t>(j)]; }
    int z_index(int k) const noexcept { return z_index_[static_cast<std::size_t>(k)]; }

private:
    double b_ = 0.0;
    int m1_ = 0;
    double delta_ = 0.0;
    double r_ = 0.0;
    std::vector<int> y_index_;
    std::vector<int> z_index_;
};

// Temporal sub-sampling: ttilde_i = i * floor(N/n) / N for i = 0..n.
class TemporalThinning {
public:
    static TemporalThinning create(int n, const TimeGrid& grid);

    int n() const noexcept { return n_; }
    int stride() const noexcept { return stride_; }
    double delta_n() const noexcept { return delta_n_; }
    double ttilde(int i) const noexcept { return i * delta_n_; }
    int time_index(int i) const noexcept { return i * stride_; }

private:
    int n_ = 0;
    int stride_ = 0;
    double delta_n_ = 0.0;
};

}  // namespace spde2d
