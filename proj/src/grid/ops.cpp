#include "swc/grid/ops.hpp"

#include "swc/error.hpp"

#include <cmath>

namespace swc {

simd::Stencil4 central_first_stencil(double h) {
    const double c = 1.0 / (12.0 * h);
    return {{-2, 2, -1, 1}, {c, -c, -8.0 * c, 8.0 * c}};
}

simd::Stencil4 staggered_forward_stencil(double h) {
    const double c = 1.0 / (24.0 * h);
    return {{-1, 2, 0, 1}, {c, -c, -27.0 * c, 27.0 * c}};
}

simd::Stencil4 staggered_backward_stencil(double h) {
    const double c = 1.0 / (24.0 * h);
    return {{-2, 1, -1, 0}, {c, -c, -27.0 * c, 27.0 * c}};
}

simd::Stencil4 half_interpolation_stencil() {
    return {{0, 1, -1, 2}, {9.0 / 16.0, 9.0 / 16.0, -1.0 / 16.0, -1.0 / 16.0}};
}

void apply_axis(const Chart& chart, std::span<const double> in, std::span<double> out, int axis,
                const simd::Stencil4& s) {
    simd::stencil(in.data(), out.data(), chart.layout(axis), s);
}

void derivative(const Chart& chart, std::span<const double> in, std::span<double> out, int axis) {
    apply_axis(chart, in, out, axis, central_first_stencil(chart.spacing(axis)));
}

CovectorField gradient(const ScalarField& f) {
    CovectorField g(f.chart());
    for (int a = 0; a < f.dim(); ++a) derivative(f.chart(), f.component(0), g.component(a), a);
    return g;
}

double integrate(const ScalarField& f, const ScalarField& density) {
    const auto d = density.component(0);
    for (double v : d)
        if (!(v > 0.0)) throw InputError("integrate: density must be positive everywhere");
    return simd::dot(f.component(0).data(), d.data(), f.points()) * f.chart().cell_volume();
}

double integrate(const ScalarField& f, const MetricField& g) {
    return integrate(f, g.density());
}

double integrate_plain(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.component(0)) s += v;
    return s * f.chart().cell_volume();
}

namespace {

// sqrt(g) g^ij X_j, one component per axis i.
CovectorField density_weighted_raise(const CovectorField& x, const MetricField& g) {
    const int n = g.dim();
    CovectorField v(g.chart());
    const auto& inv = g.inverse();
    const auto rho = g.density().component(0);
    for (std::size_t p = 0; p < g.points(); ++p)
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += inv.at(sym_slot(n, i, j), p) * x.at(j, p);
            v.at(i, p) = rho[p] * s;
        }
    return v;
}

}  // namespace

ScalarField divergence(const CovectorField& x, const MetricField& g) {
    const CovectorField v = density_weighted_raise(x, g);
    ScalarField out(g.chart());
    std::vector<double> tmp(g.points());
    for (int i = 0; i < g.dim(); ++i) {
        derivative(g.chart(), v.component(i), tmp, i);
        auto o = out.component(0);
        for (std::size_t p = 0; p < g.points(); ++p) o[p] += tmp[p];
    }
    const auto rho = g.density().component(0);
    auto o = out.component(0);
    for (std::size_t p = 0; p < g.points(); ++p) o[p] /= rho[p];
    return out;
}

double divergence_total(const CovectorField& x, const MetricField& g) {
    const CovectorField v = density_weighted_raise(x, g);
    std::vector<double> tmp(g.points());
    double total = 0.0;
    for (int i = 0; i < g.dim(); ++i) {
        derivative(g.chart(), v.component(i), tmp, i);
        for (double t : tmp) total += t;
    }
    return total * g.chart().cell_volume();
}

CovectorField raise(const CovectorField& x, const MetricField& g) {
    const int n = g.dim();
    CovectorField v(g.chart());
    const auto& inv = g.inverse();
    for (std::size_t p = 0; p < g.points(); ++p)
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += inv.at(sym_slot(n, i, j), p) * x.at(j, p);
            v.at(i, p) = s;
        }
    return v;
}

}  // namespace swc
