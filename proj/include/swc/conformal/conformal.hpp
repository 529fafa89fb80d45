#pragma once

#include "swc/curvature/curvature.hpp"
#include "swc/grid/metric.hpp"

#include <span>
#include <string>
#include <vector>

namespace swc {

/// a_n = 4(n-1)/(n-2)
constexpr double conformal_a(int n) {
    return 4.0 * (n - 1) / (n - 2);
}
/// p_n = (n+2)/(n-2)
constexpr double conformal_p(int n) {
    return static_cast<double>(n + 2) / (n - 2);
}

/// psi = u^{4/(n-2)}
ScalarField psi_from_u(const ScalarField& u);
/// u = psi^{(n-2)/4}
ScalarField u_from_psi(const ScalarField& psi);
/// f = psi^{(n-2)/2}
ScalarField f_from_psi(const ScalarField& psi);

/// F = R + t |W|_g. With smoothing eps > 0, |W| is replaced by sqrt(|W|^2 + eps^2) - eps.
ScalarField scalar_weyl(const CurvatureBundle& b, double t, double smoothing = 0.0);
ScalarField scalar_weyl(const MetricField& g, double t, double smoothing = 0.0);

/// psi g. Throws InputError unless psi > 0.
MetricField scaled_metric(const MetricField& g, const ScalarField& psi);
/// u^{4/(n-2)} g. Throws InputError unless u > 0.
MetricField conformal_metric(const MetricField& g, const ScalarField& u);

/// L = -a_n Delta_g + F on one metric.
///
/// Delta_g phi = (1/sqrt g) [ sum_i S_i(A^ii S_i phi) + sum_{i != j} D_i(A^ij D_j phi) ],
/// A = sqrt(g) g^-1. The diagonal terms use the staggered 4th-order pair
/// (full -> half -> full) with A^ii interpolated to half points, which has no
/// odd-even null modes; the cross terms compose central first derivatives.
/// sqrt(g) * L is exactly symmetric, so L is self-adjoint for dV_g.
class ModifiedLaplacian {
public:
    ModifiedLaplacian(MetricField g, ScalarField potential);

    /// Potential F = R + t|W| from the metric's curvature.
    static ModifiedLaplacian for_metric(const MetricField& g, double t, double smoothing = 0.0);
    static ModifiedLaplacian for_curvature(const CurvatureBundle& b, double t, double smoothing = 0.0);

    const MetricField& metric() const { return g_; }
    const ScalarField& potential() const { return potential_; }
    const Chart& chart() const { return g_.chart(); }
    double a() const { return a_; }

    ScalarField laplace_beltrami(const ScalarField& phi) const;
    ScalarField apply(const ScalarField& phi) const;

    /// out = sqrt(g) * (L phi + shift * phi); shift may be empty.
    void apply_weighted(std::span<const double> phi, std::span<double> out,
                        std::span<const double> shift = {}) const;
    /// Diagonal of the weighted operator above.
    std::vector<double> weighted_diagonal(std::span<const double> shift = {}) const;

    /// Discrete Dirichlet energy: -int u Delta u dV_g, written as a sum of squares.
    double dirichlet_energy(const ScalarField& u) const;
    /// int u L u dV_g
    double quadratic_form(const ScalarField& u) const;

    /// max|F| + a_n sum_i h_i^-2 max(g^ii): magnitude of the largest eigenvalues.
    double scale() const;

private:
    void accumulate_laplacian(std::span<const double> phi, std::span<double> acc) const;

    MetricField g_;
    ScalarField potential_;
    double a_;
    std::vector<std::vector<double>> half_diag_;  // sqrt(g) g^ii at half points i + 1/2
    Sym2Field weighted_inverse_;                  // sqrt(g) g^ij
};

/// max |L_g~ phi - u^{-p} L_g(phi u)| with g~ = u^{4/(n-2)} g, curvature of g~ recomputed.
double covariance_residual(const MetricField& g, const ScalarField& u, const ScalarField& phi, double t);

/// Residuals of the conformal transformation formulas for g' = psi g against
/// direct recomputation on g'.
struct ConformalFormulaReport {
    double scalar = 0.0;        // R_g'
    double ricci = 0.0;         // Ric_g'
    double weyl_psi = 0.0;      // W' = psi W
    double weyl_inverse = 0.0;  // W' = W / psi
    double volume = 0.0;        // dV_g' = psi^{n/2} dV_g
    double hessian = 0.0;       // Hessian of psi in g'
    double weyl_scale = 0.0;    // max |W_g'|
    /// "psi" or "1/psi": the Weyl law with the smaller residual.
    std::string weyl_convention;
};

ConformalFormulaReport conformal_formula_check(const MetricField& g, const ScalarField& psi);
ConformalFormulaReport conformal_formula_check(const CurvatureBundle& base, const ScalarField& psi);

}  // namespace swc
