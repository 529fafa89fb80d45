#include "swc/conformal/conformal.hpp"

#include "swc/error.hpp"
#include "swc/grid/ops.hpp"
#include "swc/parallel.hpp"
#include "swc/tensor/fields.hpp"

#include <algorithm>
#include <cmath>

namespace swc {

namespace {

ScalarField power(const ScalarField& x, double e, const char* what) {
    ScalarField out(x.chart());
    const auto src = x.component(0);
    auto dst = out.component(0);
    for (std::size_t p = 0; p < src.size(); ++p) {
        if (!(src[p] > 0.0)) throw InputError(std::string(what) + " must be positive everywhere");
        dst[p] = std::pow(src[p], e);
    }
    return out;
}

}  // namespace

ScalarField psi_from_u(const ScalarField& u) {
    return power(u, 4.0 / (u.dim() - 2), "conformal factor u");
}

ScalarField u_from_psi(const ScalarField& psi) {
    return power(psi, (psi.dim() - 2) / 4.0, "conformal factor psi");
}

ScalarField f_from_psi(const ScalarField& psi) {
    return power(psi, (psi.dim() - 2) / 2.0, "conformal factor psi");
}

ScalarField scalar_weyl(const CurvatureBundle& b, double t, double smoothing) {
    ScalarField f = riemann_norm(b.weyl, b.metric);
    auto v = f.component(0);
    const auto r = b.scalar.component(0);
    for (std::size_t p = 0; p < v.size(); ++p) {
        const double w = smoothing > 0.0 ? std::sqrt(v[p] * v[p] + smoothing * smoothing) - smoothing : v[p];
        v[p] = r[p] + t * w;
    }
    return f;
}

ScalarField scalar_weyl(const MetricField& g, double t, double smoothing) {
    return scalar_weyl(curvature(g), t, smoothing);
}

MetricField scaled_metric(const MetricField& g, const ScalarField& psi) {
    Sym2Field out = g.metric();
    const auto s = psi.component(0);
    for (double v : s)
        if (!(v > 0.0)) throw InputError("conformal factor psi must be positive everywhere");
    for (int c = 0; c < out.components(); ++c) {
        auto comp = out.component(c);
        for (std::size_t p = 0; p < comp.size(); ++p) comp[p] *= s[p];
    }
    return MetricField(std::move(out));
}

MetricField conformal_metric(const MetricField& g, const ScalarField& u) {
    return scaled_metric(g, psi_from_u(u));
}

ModifiedLaplacian::ModifiedLaplacian(MetricField g, ScalarField potential)
    : g_(std::move(g)), potential_(std::move(potential)), a_(conformal_a(g_.dim())),
      weighted_inverse_(g_.chart()) {
    const int n = g_.dim();
    const auto rho = g_.density().component(0);
    for (int s = 0; s < weighted_inverse_.components(); ++s) {
        const auto inv = g_.inverse().component(s);
        auto out = weighted_inverse_.component(s);
        for (std::size_t p = 0; p < out.size(); ++p) out[p] = rho[p] * inv[p];
    }
    half_diag_.resize(n);
    for (int i = 0; i < n; ++i) {
        half_diag_[i].resize(g_.points());
        apply_axis(chart(), weighted_inverse_.component(sym_slot(n, i, i)), half_diag_[i], i,
                   half_interpolation_stencil());
    }
}

ModifiedLaplacian ModifiedLaplacian::for_curvature(const CurvatureBundle& b, double t, double smoothing) {
    return ModifiedLaplacian(b.metric, scalar_weyl(b, t, smoothing));
}

ModifiedLaplacian ModifiedLaplacian::for_metric(const MetricField& g, double t, double smoothing) {
    return for_curvature(curvature(g), t, smoothing);
}

void ModifiedLaplacian::accumulate_laplacian(std::span<const double> phi, std::span<double> acc) const {
    const Chart& c = chart();
    const int n = c.dim();
    const std::size_t np = c.point_count();
    std::fill(acc.begin(), acc.end(), 0.0);
    std::vector<double> half(np), back(np);
    for (int i = 0; i < n; ++i) {
        apply_axis(c, phi, half, i, staggered_forward_stencil(c.spacing(i)));
        const auto& a = half_diag_[i];
        for (std::size_t p = 0; p < np; ++p) half[p] *= a[p];
        apply_axis(c, half, back, i, staggered_backward_stencil(c.spacing(i)));
        for (std::size_t p = 0; p < np; ++p) acc[p] += back[p];
    }
    std::vector<std::vector<double>> d(n, std::vector<double>(np));
    for (int j = 0; j < n; ++j) derivative(c, phi, d[j], j);
    std::vector<double> flux(np);
    for (int i = 0; i < n; ++i) {
        std::fill(flux.begin(), flux.end(), 0.0);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const auto aij = weighted_inverse_.component(sym_slot(n, i, j));
            for (std::size_t p = 0; p < np; ++p) flux[p] += aij[p] * d[j][p];
        }
        derivative(c, flux, back, i);
        for (std::size_t p = 0; p < np; ++p) acc[p] += back[p];
    }
}

ScalarField ModifiedLaplacian::laplace_beltrami(const ScalarField& phi) const {
    ScalarField out(chart());
    accumulate_laplacian(phi.component(0), out.component(0));
    const auto rho = g_.density().component(0);
    auto o = out.component(0);
    for (std::size_t p = 0; p < o.size(); ++p) o[p] /= rho[p];
    return out;
}

void ModifiedLaplacian::apply_weighted(std::span<const double> phi, std::span<double> out,
                                       std::span<const double> shift) const {
    accumulate_laplacian(phi, out);
    const auto rho = g_.density().component(0);
    const auto f = potential_.component(0);
    for (std::size_t p = 0; p < out.size(); ++p) {
        const double pot = f[p] + (shift.empty() ? 0.0 : shift[p]);
        out[p] = -a_ * out[p] + rho[p] * pot * phi[p];
    }
}

ScalarField ModifiedLaplacian::apply(const ScalarField& phi) const {
    ScalarField out(chart());
    apply_weighted(phi.component(0), out.component(0));
    const auto rho = g_.density().component(0);
    auto o = out.component(0);
    for (std::size_t p = 0; p < o.size(); ++p) o[p] /= rho[p];
    return out;
}

std::vector<double> ModifiedLaplacian::weighted_diagonal(std::span<const double> shift) const {
    const Chart& c = chart();
    const std::size_t np = c.point_count();
    std::vector<double> diag(np, 0.0), tmp(np);
    for (int i = 0; i < c.dim(); ++i) {
        // Diagonal of -S_b A S_f: sum over the four half points touching x.
        const double h = c.spacing(i);
        const double w = 1.0 / (24.0 * h * 24.0 * h);
        const simd::Stencil4 s{{-2, 1, -1, 0}, {w, w, 729.0 * w, 729.0 * w}};
        apply_axis(c, half_diag_[i], tmp, i, s);
        for (std::size_t p = 0; p < np; ++p) diag[p] += a_ * tmp[p];
    }
    const auto rho = g_.density().component(0);
    const auto f = potential_.component(0);
    for (std::size_t p = 0; p < np; ++p) diag[p] += rho[p] * (f[p] + (shift.empty() ? 0.0 : shift[p]));
    return diag;
}

double ModifiedLaplacian::dirichlet_energy(const ScalarField& u) const {
    const Chart& c = chart();
    const int n = c.dim();
    const std::size_t np = c.point_count();
    double e = 0.0;
    std::vector<double> half(np);
    for (int i = 0; i < n; ++i) {
        apply_axis(c, u.component(0), half, i, staggered_forward_stencil(c.spacing(i)));
        e += simd::dot_weighted(half.data(), half.data(), half_diag_[i].data(), np);
    }
    std::vector<std::vector<double>> d(n, std::vector<double>(np));
    for (int j = 0; j < n; ++j) derivative(c, u.component(0), d[j], j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            e += simd::dot_weighted(d[i].data(), d[j].data(),
                                    weighted_inverse_.component(sym_slot(n, i, j)).data(), np);
        }
    return e * c.cell_volume();
}

double ModifiedLaplacian::quadratic_form(const ScalarField& u) const {
    std::vector<double> lu(u.points());
    apply_weighted(u.component(0), lu);
    return simd::dot(u.component(0).data(), lu.data(), u.points()) * chart().cell_volume();
}

double ModifiedLaplacian::scale() const {
    const int n = g_.dim();
    double s = potential_.max_abs();
    for (int i = 0; i < n; ++i) {
        const auto c = g_.inverse().component(sym_slot(n, i, i));
        const double gii = *std::max_element(c.begin(), c.end());
        s += a_ * gii / (chart().spacing(i) * chart().spacing(i));
    }
    return s;
}

double covariance_residual(const MetricField& g, const ScalarField& u, const ScalarField& phi, double t) {
    const int n = g.dim();
    const MetricField gt = conformal_metric(g, u);
    const ScalarField lhs = ModifiedLaplacian::for_metric(gt, t).apply(phi);
    ScalarField phiu = phi;
    for (std::size_t p = 0; p < phiu.points(); ++p) phiu.at(0, p) *= u.at(0, p);
    const ScalarField lg = ModifiedLaplacian::for_metric(g, t).apply(phiu);
    const double pn = conformal_p(n);
    double worst = 0.0;
    for (std::size_t p = 0; p < g.points(); ++p)
        worst = std::max(worst, std::abs(lhs.at(0, p) - std::pow(u.at(0, p), -pn) * lg.at(0, p)));
    return worst;
}

ConformalFormulaReport conformal_formula_check(const MetricField& g, const ScalarField& psi) {
    return conformal_formula_check(curvature(g), psi);
}

ConformalFormulaReport conformal_formula_check(const CurvatureBundle& base, const ScalarField& psi) {
    const MetricField& g = base.metric;
    const int n = g.dim();
    const CurvatureBundle cp = curvature(scaled_metric(g, psi));
    const ScalarField f = f_from_psi(psi);
    const CovectorField df = gradient(f);
    const Sym2Field hf = covariant_hessian(f, base.christoffel);
    const ScalarField lapf = trace(hf, g);
    const CovectorField dpsi = gradient(psi);
    const Sym2Field hpsi = covariant_hessian(psi, base.christoffel);
    const Sym2Field hpsi_direct = covariant_hessian(psi, cp.christoffel);

    const double c1 = (n - 1.0) / (n - 2.0);
    ConformalFormulaReport rep;
    for (std::size_t p = 0; p < g.points(); ++p) {
        const tensor::Mat inv = g.inv_at(p);
        const double fv = f.at(0, p);
        const double ps = psi.at(0, p);
        double gradf2 = 0.0, gradpsi2 = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                gradf2 += tensor::at(inv, i, j) * df.at(i, p) * df.at(j, p);
                gradpsi2 += tensor::at(inv, i, j) * dpsi.at(i, p) * dpsi.at(j, p);
            }
        const double rf = (base.scalar.at(0, p) - 2.0 * c1 * lapf.at(0, p) / fv + c1 * gradf2 / (fv * fv)) / ps;
        rep.scalar = std::max(rep.scalar, std::abs(rf - cp.scalar.at(0, p)));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const int s = sym_slot(n, i, j);
                const double gij = g.metric().at(s, p);
                const double ric = base.ricci.at(s, p) - hf.at(s, p) / fv + c1 * df.at(i, p) * df.at(j, p) / (fv * fv) -
                                   lapf.at(0, p) / ((n - 2.0) * fv) * gij;
                rep.ricci = std::max(rep.ricci, std::abs(ric - cp.ricci.at(s, p)));
                const double hess = hpsi.at(s, p) - (dpsi.at(i, p) * dpsi.at(j, p) - 0.5 * gradpsi2 * gij) / ps;
                rep.hessian = std::max(rep.hessian, std::abs(hess - hpsi_direct.at(s, p)));
            }
        for (int s = 0; s < base.weyl.components(); ++s) {
            const double w = base.weyl.at(s, p);
            const double wp = cp.weyl.at(s, p);
            rep.weyl_psi = std::max(rep.weyl_psi, std::abs(wp - ps * w));
            rep.weyl_inverse = std::max(rep.weyl_inverse, std::abs(wp - w / ps));
            rep.weyl_scale = std::max(rep.weyl_scale, std::abs(wp));
        }
        const double dv = std::pow(ps, 0.5 * n) * g.density().at(0, p);
        rep.volume = std::max(rep.volume, std::abs(dv - cp.metric.density().at(0, p)) / cp.metric.density().at(0, p));
    }
    rep.weyl_convention = rep.weyl_psi <= rep.weyl_inverse ? "psi" : "1/psi";
    return rep;
}

}  // namespace swc
