#include "swc/grid/chart.hpp"

#include "swc/error.hpp"

#include <cmath>
#include <string>

namespace swc {

Chart make_chart(int n, std::vector<int> sizes, std::vector<double> lengths) {
    if (n < 3) throw ConfigError("chart dimension n below 3 (got " + std::to_string(n) + ")");
    if (n > kMaxDim) throw ConfigError("chart dimension n above 6 (got " + std::to_string(n) + ")");
    if (sizes.size() != static_cast<std::size_t>(n))
        throw ConfigError("chart sizes list has " + std::to_string(sizes.size()) + " entries, expected " +
                          std::to_string(n));
    if (lengths.size() != static_cast<std::size_t>(n))
        throw ConfigError("chart lengths list has " + std::to_string(lengths.size()) +
                          " entries, expected " + std::to_string(n));
    for (int a = 0; a < n; ++a) {
        if (sizes[a] < 8 || sizes[a] % 2 != 0)
            throw ConfigError("axis " + std::to_string(a) + ": size " + std::to_string(sizes[a]) +
                              " must be even and >= 8");
        if (!(lengths[a] > 0.0) || !std::isfinite(lengths[a]))
            throw ConfigError("axis " + std::to_string(a) + ": period must be positive");
    }
    Chart c;
    c.n_ = n;
    c.sizes_ = std::move(sizes);
    c.lengths_ = std::move(lengths);
    c.strides_.assign(n, 1);
    for (int a = n - 2; a >= 0; --a) c.strides_[a] = c.strides_[a + 1] * c.sizes_[a + 1];
    c.points_ = c.strides_[0] * c.sizes_[0];
    return c;
}

Chart make_cubic_chart(int n, int size, double length) {
    if (n < 3) throw ConfigError("chart dimension n below 3 (got " + std::to_string(n) + ")");
    return make_chart(n, std::vector<int>(n, size), std::vector<double>(n, length));
}

double Chart::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < n_; ++a) v *= spacing(a);
    return v;
}

double Chart::volume() const {
    double v = 1.0;
    for (double l : lengths_) v *= l;
    return v;
}

double Chart::min_spacing() const {
    double h = spacing(0);
    for (int a = 1; a < n_; ++a) h = std::min(h, spacing(a));
    return h;
}

simd::AxisLayout Chart::layout(int axis) const {
    simd::AxisLayout l;
    l.extent = static_cast<std::size_t>(sizes_[axis]);
    l.inner = strides_[axis];
    l.outer = points_ / (l.extent * l.inner);
    return l;
}

std::array<int, kMaxDim> Chart::unravel(std::size_t index) const {
    std::array<int, kMaxDim> idx{};
    for (int a = 0; a < n_; ++a) {
        idx[a] = static_cast<int>((index / strides_[a]) % sizes_[a]);
    }
    return idx;
}

double Chart::coordinate(std::size_t index, int axis) const {
    return static_cast<double>((index / strides_[axis]) % sizes_[axis]) * spacing(axis);
}

std::array<double, kMaxDim> Chart::displacement(std::size_t index,
                                                const std::array<double, kMaxDim>& c) const {
    std::array<double, kMaxDim> d{};
    for (int a = 0; a < n_; ++a) {
        double x = coordinate(index, a) - c[a];
        x -= lengths_[a] * std::round(x / lengths_[a]);
        d[a] = x;
    }
    return d;
}

bool Chart::operator==(const Chart& other) const {
    return n_ == other.n_ && sizes_ == other.sizes_ && lengths_ == other.lengths_;
}

}  // namespace swc
