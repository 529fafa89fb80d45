#pragma once

#include "swc/grid/field.hpp"
#include "swc/grid/metric.hpp"

#include <span>

namespace swc {

/// (f[-2] - 8 f[-1] + 8 f[+1] - f[+2]) / (12 h). Taps are ordered so that
/// equal-magnitude weights cancel first: constants differentiate to exactly 0.
simd::Stencil4 central_first_stencil(double h);
/// Full points -> half points i + 1/2: (f[i-1] - 27 f[i] + 27 f[i+1] - f[i+2]) / (24 h)
simd::Stencil4 staggered_forward_stencil(double h);
/// Half points -> full points, the negative transpose of the forward stencil.
simd::Stencil4 staggered_backward_stencil(double h);
/// Full points -> half points i + 1/2: (-f[i-1] + 9 f[i] + 9 f[i+1] - f[i+2]) / 16
simd::Stencil4 half_interpolation_stencil();

/// Applies a stencil along `axis` to one component array.
void apply_axis(const Chart& chart, std::span<const double> in, std::span<double> out, int axis,
                const simd::Stencil4& s);

/// Periodic 4th-order central derivative of one component array.
void derivative(const Chart& chart, std::span<const double> in, std::span<double> out, int axis);

/// Componentwise derivative along `axis`.
template <FieldKind K>
TensorField<K> differentiate(const TensorField<K>& f, int axis) {
    TensorField<K> out(f.chart());
    for (int c = 0; c < f.components(); ++c) derivative(f.chart(), f.component(c), out.component(c), axis);
    return out;
}

/// (d_0 f, ..., d_{n-1} f)
CovectorField gradient(const ScalarField& f);

/// sum f * density * prod h. Throws InputError on nonpositive density.
double integrate(const ScalarField& f, const ScalarField& density);
/// Integral against dV_g.
double integrate(const ScalarField& f, const MetricField& g);
/// Plain point sum times the cell volume (no density).
double integrate_plain(const ScalarField& f);

/// nabla^i X_i = (1/sqrt g) d_i (sqrt g g^ij X_j).
ScalarField divergence(const CovectorField& x, const MetricField& g);

/// sum_points d_i (sqrt g g^ij X_j) * prod h; zero up to rounding by periodic telescoping.
double divergence_total(const CovectorField& x, const MetricField& g);

/// Raises an index with the inverse metric.
CovectorField raise(const CovectorField& x, const MetricField& g);

}  // namespace swc
