#pragma once

#include "swc/simd/kernels.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace swc {

inline constexpr int kMaxDim = 6;

/// Periodic n-dimensional coordinate grid (a flat torus chart).
///
/// Points are stored row-major: axis 0 varies slowest, axis n-1 is
/// contiguous. Coordinates are x_a = i_a * h_a with h_a = L_a / N_a.
class Chart {
public:
    Chart() = default;

    int dim() const { return n_; }
    int size(int axis) const { return sizes_[axis]; }
    double length(int axis) const { return lengths_[axis]; }
    double spacing(int axis) const { return lengths_[axis] / sizes_[axis]; }
    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<double>& lengths() const { return lengths_; }

    std::size_t point_count() const { return points_; }
    std::size_t stride(int axis) const { return strides_[axis]; }
    double cell_volume() const;
    double volume() const;
    double min_spacing() const;

    /// View of the point array with `axis` as the middle dimension.
    simd::AxisLayout layout(int axis) const;

    std::array<int, kMaxDim> unravel(std::size_t index) const;
    double coordinate(std::size_t index, int axis) const;

    /// Minimal-image displacement x(index) - c along each axis.
    std::array<double, kMaxDim> displacement(std::size_t index, const std::array<double, kMaxDim>& c) const;

    bool operator==(const Chart& other) const;

private:
    friend Chart make_chart(int n, std::vector<int> sizes, std::vector<double> lengths);

    int n_ = 0;
    std::vector<int> sizes_;
    std::vector<double> lengths_;
    std::vector<std::size_t> strides_;
    std::size_t points_ = 0;
};

/// Validates and builds a chart. Throws ConfigError naming the offending axis.
Chart make_chart(int n, std::vector<int> sizes, std::vector<double> lengths);

/// Chart with equal size and period on every axis.
Chart make_cubic_chart(int n, int size, double length);

}  // namespace swc
