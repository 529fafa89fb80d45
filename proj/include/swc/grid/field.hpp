#pragma once

#include "swc/grid/chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace swc {

enum class FieldKind { scalar, covector, sym2, riem4, christoffel };

/// n(n+1)/2
constexpr int sym_count(int n) {
    return n * (n + 1) / 2;
}

/// Slot of the unordered pair {i, j} in lexicographic i <= j order.
constexpr int sym_slot(int n, int i, int j) {
    if (i > j) {
        const int t = i;
        i = j;
        j = t;
    }
    return i * n - i * (i - 1) / 2 + (j - i);
}

/// Deduplicated storage map for tensors with Riemann symmetries.
///
/// Antisymmetric pairs P = (a < b) are numbered lexicographically; a slot is an
/// unordered pair {P, Q} numbered in upper-triangular order. The map is built
/// once per dimension and checked to be a bijection on first use.
class RiemannIndex {
public:
    struct Entry {
        int slot;
        double sign;  // 0 when a == b or c == d
    };

    static const RiemannIndex& get(int n);

    int dim() const { return n_; }
    int pair_count() const { return np_; }
    int slot_count() const { return ns_; }

    /// Pair number of (a, b), a != b, with the sign of the reordering.
    int pair(int a, int b) const { return pair_of_[a * n_ + b]; }
    double pair_sign(int a, int b) const { return a < b ? 1.0 : (a > b ? -1.0 : 0.0); }
    std::array<int, 2> pair_indices(int p) const { return pairs_[p]; }

    int slot_of_pairs(int p, int q) const {
        if (p > q) std::swap(p, q);
        return p * np_ - p * (p - 1) / 2 + (q - p);
    }

    Entry at(int a, int b, int c, int d) const { return table_[((a * n_ + b) * n_ + c) * n_ + d]; }

    /// Canonical (a, b, c, d) of a slot: a < b, c < d, pair(a,b) <= pair(c,d).
    std::array<int, 4> indices(int slot) const { return slots_[slot]; }

private:
    explicit RiemannIndex(int n);

    int n_;
    int np_;
    int ns_;
    std::vector<int> pair_of_;
    std::vector<std::array<int, 2>> pairs_;
    std::vector<std::array<int, 4>> slots_;
    std::vector<Entry> table_;
};

int component_count(FieldKind kind, int n);

/// Field of `components(K, n)` real values per grid point.
///
/// Components are stored as separate contiguous arrays (component-major), so
/// stencils along any axis stream through memory. File I/O converts to the
/// point-major WFLD layout.
template <FieldKind K>
class TensorField {
public:
    static constexpr FieldKind kind = K;

    TensorField() = default;
    explicit TensorField(const Chart& chart, double fill = 0.0)
        : chart_(chart),
          ncomp_(component_count(K, chart.dim())),
          data_(static_cast<std::size_t>(ncomp_) * chart.point_count(), fill) {}

    const Chart& chart() const { return chart_; }
    int dim() const { return chart_.dim(); }
    int components() const { return ncomp_; }
    std::size_t points() const { return chart_.point_count(); }

    std::span<double> component(int c) { return {data_.data() + c * points(), points()}; }
    std::span<const double> component(int c) const { return {data_.data() + c * points(), points()}; }

    double& at(int c, std::size_t p) { return data_[c * points() + p]; }
    double at(int c, std::size_t p) const { return data_[c * points() + p]; }

    std::span<double> raw() { return data_; }
    std::span<const double> raw() const { return data_; }

    TensorField& operator+=(const TensorField& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    TensorField& operator-=(const TensorField& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    TensorField& operator*=(double s) {
        for (double& v : data_) v *= s;
        return *this;
    }
    friend TensorField operator+(TensorField a, const TensorField& b) { return a += b; }
    friend TensorField operator-(TensorField a, const TensorField& b) { return a -= b; }
    friend TensorField operator*(double s, TensorField a) { return a *= s; }

    /// Largest absolute entry over all components and points.
    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    Chart chart_;
    int ncomp_ = 0;
    std::vector<double> data_;
};

using ScalarField = TensorField<FieldKind::scalar>;
using CovectorField = TensorField<FieldKind::covector>;
using Sym2Field = TensorField<FieldKind::sym2>;
using Riem4Field = TensorField<FieldKind::riem4>;
/// Gamma^c_ab stored at component c * sym_count(n) + sym_slot(n, a, b).
using ChristoffelField = TensorField<FieldKind::christoffel>;

/// Samples fn(coordinates) at every point.
template <class Fn>
ScalarField sample(const Chart& chart, Fn&& fn) {
    ScalarField f(chart);
    std::array<double, kMaxDim> x{};
    for (std::size_t p = 0; p < chart.point_count(); ++p) {
        for (int a = 0; a < chart.dim(); ++a) x[a] = chart.coordinate(p, a);
        f.at(0, p) = fn(x);
    }
    return f;
}

}  // namespace swc
