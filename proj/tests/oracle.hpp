#pragma once

#include "swc/conformal/conformal.hpp"
#include "swc/grid/field.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace swc::testing {

/// Smallest eigenvalue of L on L^2(dV_g) from a dense symmetric eigensolve:
/// B^{-1/2} (sqrt(g) L) B^{-1/2} with B = diag(sqrt g), columns assembled by
/// applying the operator to unit vectors.
inline double dense_first_eigenvalue(const ModifiedLaplacian& op) {
    const std::size_t np = op.chart().point_count();
    const auto rho = op.metric().density().component(0);
    std::vector<double> a(np * np), e(np, 0.0), col(np);
    for (std::size_t j = 0; j < np; ++j) {
        e[j] = 1.0;
        op.apply_weighted(e, col);
        e[j] = 0.0;
        for (std::size_t i = 0; i < np; ++i) a[i * np + j] = col[i] / std::sqrt(rho[i] * rho[j]);
    }
    // Symmetrize the roundoff away; the lower triangle is what LAPACK reads.
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < i; ++j) a[i * np + j] = 0.5 * (a[i * np + j] + a[j * np + i]);
    std::vector<double> w(np), z(1);
    std::vector<lapack_int> isuppz(2);
    lapack_int m = 0;
    const lapack_int info = LAPACKE_dsyevr(LAPACK_ROW_MAJOR, 'N', 'I', 'L', static_cast<lapack_int>(np), a.data(),
                                           static_cast<lapack_int>(np), 0.0, 0.0, 1, 1, 0.0, &m, w.data(), z.data(),
                                           1, isuppz.data());
    if (info != 0) throw std::runtime_error("dsyevr failed");
    return w[0];
}

/// Largest asymmetry of sqrt(g) L relative to its largest entry.
inline double weighted_asymmetry(const ModifiedLaplacian& op) {
    const std::size_t np = op.chart().point_count();
    std::vector<double> a(np * np), e(np, 0.0), col(np);
    for (std::size_t j = 0; j < np; ++j) {
        e[j] = 1.0;
        op.apply_weighted(e, col);
        e[j] = 0.0;
        for (std::size_t i = 0; i < np; ++i) a[i * np + j] = col[i];
    }
    double d = 0.0, m = 0.0;
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j) {
            d = std::max(d, std::abs(a[i * np + j] - a[j * np + i]));
            m = std::max(m, std::abs(a[i * np + j]));
        }
    return d / m;
}

/// Operator with potential F* = (-u*^p + a Delta u*) / u*, so that
/// L u* = -u*^p holds for the discrete Laplacian.
inline ModifiedLaplacian manufactured(const MetricField& g, const ScalarField& ustar) {
    const int n = g.dim();
    const ModifiedLaplacian probe(g, ScalarField(g.chart(), 0.0));
    const ScalarField lap = probe.laplace_beltrami(ustar);
    ScalarField f(g.chart());
    for (std::size_t p = 0; p < f.points(); ++p) {
        const double u = ustar.at(0, p);
        f.at(0, p) = (-std::pow(u, conformal_p(n)) + conformal_a(n) * lap.at(0, p)) / u;
    }
    return ModifiedLaplacian(g, f);
}

}  // namespace swc::testing
