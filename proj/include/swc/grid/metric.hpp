#pragma once

#include "swc/grid/field.hpp"
#include "swc/tensor/point.hpp"

namespace swc {

/// SPD metric field with cached inverse and volume density sqrt(det g).
class MetricField {
public:
    MetricField() = default;
    /// Throws InputError naming the first point where g is not SPD.
    explicit MetricField(Sym2Field g);

    const Chart& chart() const { return g_.chart(); }
    int dim() const { return g_.dim(); }
    std::size_t points() const { return g_.points(); }

    const Sym2Field& metric() const { return g_; }
    const Sym2Field& inverse() const { return inv_; }
    const ScalarField& density() const { return density_; }

    tensor::Mat g_at(std::size_t p) const;
    tensor::Mat inv_at(std::size_t p) const;
    tensor::PointMetric point(std::size_t p) const;

private:
    Sym2Field g_;
    Sym2Field inv_;
    ScalarField density_;
};

MetricField flat_metric(const Chart& chart);

/// Sym2 field filled with delta_ab.
Sym2Field identity_sym2(const Chart& chart);

}  // namespace swc
