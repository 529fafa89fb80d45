#include "swc/aubin/aubin.hpp"

#include "swc/conformal/conformal.hpp"
#include "swc/error.hpp"
#include "swc/grid/ops.hpp"
#include "swc/parallel.hpp"
#include "swc/tensor/fields.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace swc {

using tensor::at;

namespace {

tensor::Mat sym_at(const Sym2Field& f, std::size_t p) {
    tensor::Mat m{};
    const int n = f.dim();
    for (int i = 0, s = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++s) {
            at(m, i, j) = f.at(s, p);
            at(m, j, i) = f.at(s, p);
        }
    return m;
}

}  // namespace

MetricField DeformationBundle::deformed_metric() const {
    return MetricField(deformed);
}

DeformationBundle deform(std::shared_ptr<const CurvatureBundle> base, const ScalarField& f) {
    const MetricField& g = base->metric;
    const int n = g.dim();
    DeformationBundle b;
    b.base = std::move(base);
    b.f = f;
    b.df = gradient(f);
    b.df_up = raise(b.df, g);
    b.hessian = covariant_hessian(f, b.base->christoffel);
    b.laplacian = trace(b.hessian, g);
    b.w = ScalarField(g.chart());
    b.deformed = Sym2Field(g.chart());
    b.deformed_inverse = Sym2Field(g.chart());
    parallel_for(g.points(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            double grad2 = 0.0;
            for (int i = 0; i < n; ++i) grad2 += b.df.at(i, p) * b.df_up.at(i, p);
            const double w = 1.0 + grad2;
            b.w.at(0, p) = w;
            for (int i = 0, s = 0; i < n; ++i)
                for (int j = i; j < n; ++j, ++s) {
                    b.deformed.at(s, p) = g.metric().at(s, p) + b.df.at(i, p) * b.df.at(j, p);
                    b.deformed_inverse.at(s, p) = g.inverse().at(s, p) - b.df_up.at(i, p) * b.df_up.at(j, p) / w;
                }
        }
    });
    return b;
}

DeformationBundle deform(const MetricField& g, const ScalarField& f) {
    return deform(std::make_shared<const CurvatureBundle>(curvature(g)), f);
}

DeformationAlgebraReport deformation_algebra_residual(const DeformationBundle& b) {
    const MetricField& g = b.metric();
    const int n = g.dim();
    DeformationAlgebraReport rep;
    for (std::size_t p = 0; p < g.points(); ++p) {
        const tensor::Mat gp = sym_at(b.deformed, p);
        const double det_direct = tensor::lu_determinant(n, gp);
        const double det_g = g.density().at(0, p) * g.density().at(0, p);
        const double det_closed = b.w.at(0, p) * det_g;
        rep.determinant = std::max(rep.determinant, std::abs(det_direct - det_closed) / std::abs(det_direct));
        tensor::Mat inv;
        double det = 0.0;
        if (!tensor::spd_inverse(n, gp, inv, det)) throw InputError("deformed metric is not SPD");
        const tensor::Mat closed = sym_at(b.deformed_inverse, p);
        double diff = 0.0, mag = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                diff = std::max(diff, std::abs(at(inv, i, j) - at(closed, i, j)));
                mag = std::max(mag, std::abs(at(inv, i, j)));
            }
        rep.inverse = std::max(rep.inverse, diff / mag);
    }
    return rep;
}

namespace {

struct PointDeformation {
    double grad2, w, lap, fhf, hess2, a, ricff;
    tensor::Vec fu, hf;
};

PointDeformation point_deformation(int n, const tensor::Mat& inv, const tensor::Vec& df, const tensor::Mat& h,
                                   const tensor::Mat& ric) {
    PointDeformation d{};
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += at(inv, i, j) * df[j];
        d.fu[i] = s;
    }
    for (int i = 0; i < n; ++i) {
        d.grad2 += df[i] * d.fu[i];
        double s = 0.0;
        for (int p = 0; p < n; ++p) s += at(h, i, p) * d.fu[p];
        d.hf[i] = s;
    }
    d.w = 1.0 + d.grad2;
    double hfhf = 0.0;
    for (int i = 0; i < n; ++i) {
        d.fhf += d.fu[i] * d.hf[i];
        for (int j = 0; j < n; ++j) {
            d.lap += at(inv, i, j) * at(h, i, j);
            hfhf += d.hf[i] * at(inv, i, j) * d.hf[j];
            d.ricff += d.fu[i] * at(ric, i, j) * d.fu[j];
        }
    }
    // |Hess f|^2 = tr(g^-1 H g^-1 H)
    tensor::Mat m{};
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int p = 0; p < n; ++p) s += at(inv, i, p) * at(h, p, k);
            at(m, i, k) = s;
        }
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) d.hess2 += at(m, i, k) * at(m, k, i);
    d.a = d.lap * d.fhf - hfhf;
    return d;
}

}  // namespace

ScalarField deformed_scalar_closed_form(const DeformationBundle& b) {
    const MetricField& g = b.metric();
    const int n = g.dim();
    ScalarField out(g.chart());
    parallel_for(g.points(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            tensor::Vec df{};
            for (int i = 0; i < n; ++i) df[i] = b.df.at(i, p);
            const auto d = point_deformation(n, g.inv_at(p), df, sym_at(b.hessian, p), sym_at(b.base->ricci, p));
            out.at(0, p) = b.base->scalar.at(0, p) - 2.0 * d.ricff / d.w + (d.lap * d.lap - d.hess2) / d.w -
                           2.0 * d.a / (d.w * d.w);
        }
    });
    return out;
}

std::string_view eblock_name(int block) {
    static constexpr std::string_view names[kEBlockCount] = {
        "hessian_square",      "ricci_gradient",      "scalar_gradient",  "riemann_gradient",
        "ricci_contracted",    "hessian_trace_ik",    "hessian_trace_jt", "laplacian_square",
        "hessian_gradient_ik", "hessian_gradient_jt", "cubic_metric",     "cubic_gradient"};
    return (block >= 0 && block < kEBlockCount) ? names[block] : "unknown";
}

WeylErrorOptions WeylErrorOptions::as_printed() {
    WeylErrorOptions o;
    o.signs.fill(1.0);
    return o;
}

WeylErrorOptions WeylErrorOptions::flipped(int block) {
    WeylErrorOptions o;
    o.signs[block] = -o.signs[block];
    return o;
}

std::array<tensor::PointRiem, kEBlockCount> weyl_error_blocks(const EPointInput& in) {
    const int n = in.n;
    const auto& idx = RiemannIndex::get(n);
    const auto& g = in.g;
    const auto& f = in.df;
    const auto& h = in.hessian;
    const auto& ric = in.ricci;
    const auto d = point_deformation(n, in.inv, f, h, ric);
    const double w = d.w;

    tensor::Mat rf{}, pm{}, hm{}, q{};
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            double s = 0.0;
            for (int p = 0; p < n; ++p)
                for (int r = 0; r < n; ++r) s += tensor::component(n, in.riemann, i, p, k, r) * d.fu[p] * d.fu[r];
            at(rf, i, k) = s;
            at(pm, i, k) = at(g, i, k) + f[i] * f[k];
            double hh = 0.0;
            for (int p = 0; p < n; ++p)
                for (int r = 0; r < n; ++r) hh += at(h, i, p) * at(in.inv, p, r) * at(h, r, k);
            at(hm, i, k) = d.lap * at(h, i, k) - hh;
            at(q, i, k) = at(h, i, k) * d.fhf - d.hf[i] * d.hf[k];
        }

    const double c1 = 1.0 / (n - 2);
    const double c2 = 1.0 / ((n - 1.0) * (n - 2.0));
    std::array<tensor::PointRiem, kEBlockCount> b{};
    for (int s = 0; s < idx.slot_count(); ++s) {
        const auto [i, j, k, t] = idx.indices(s);
        const double sg = at(g, i, k) * f[j] * f[t] - at(g, i, t) * f[j] * f[k] + at(g, j, t) * f[i] * f[k] -
                          at(g, j, k) * f[i] * f[t];
        const double gg = at(g, i, k) * at(g, j, t) - at(g, i, t) * at(g, j, k);
        b[0][s] = (at(h, i, k) * at(h, j, t) - at(h, i, t) * at(h, j, k)) / w;
        b[1][s] = c1 * (at(ric, i, k) * f[j] * f[t] - at(ric, i, t) * f[j] * f[k] + at(ric, j, t) * f[i] * f[k] -
                        at(ric, j, k) * f[i] * f[t]);
        b[2][s] = in.scalar * c2 * sg;
        b[3][s] = c1 / w *
                  (at(rf, i, k) * at(pm, j, t) - at(rf, i, t) * at(pm, j, k) + at(rf, j, t) * at(pm, i, k) -
                   at(rf, j, k) * at(pm, i, t));
        b[4][s] = -2.0 * d.ricff * c2 / w * (gg + sg);
        b[5][s] = -c1 / w * (at(hm, i, k) * at(pm, j, t) - at(hm, i, t) * at(pm, j, k));
        b[6][s] = -c1 / w * (at(hm, j, t) * at(pm, i, k) - at(hm, j, k) * at(pm, i, t));
        b[7][s] = c2 / w * (d.lap * d.lap - d.hess2) * (gg + sg);
        b[8][s] = c1 / (w * w) * (at(q, i, k) * at(pm, j, t) - at(q, i, t) * at(pm, j, k));
        b[9][s] = c1 / (w * w) * (at(q, j, t) * at(pm, i, k) - at(q, j, k) * at(pm, i, t));
        b[10][s] = -2.0 * c2 * d.a / (w * w) * gg;
        b[11][s] = -2.0 * c2 * d.a / (w * w) * sg;
    }
    return b;
}

Riem4Field weyl_error(const DeformationBundle& b, const WeylErrorOptions& options) {
    const MetricField& g = b.metric();
    const int n = g.dim();
    const int ns = RiemannIndex::get(n).slot_count();
    Riem4Field out(g.chart());
    parallel_for(g.points(), [&](std::size_t begin, std::size_t end) {
        EPointInput in;
        in.n = n;
        for (std::size_t p = begin; p < end; ++p) {
            in.g = g.g_at(p);
            in.inv = g.inv_at(p);
            for (int i = 0; i < n; ++i) in.df[i] = b.df.at(i, p);
            in.hessian = sym_at(b.hessian, p);
            in.ricci = sym_at(b.base->ricci, p);
            in.scalar = b.base->scalar.at(0, p);
            in.riemann = riem_at(b.base->riemann, p);
            const auto blocks = weyl_error_blocks(in);
            for (int s = 0; s < ns; ++s) {
                double v = 0.0;
                for (int k = 0; k < kEBlockCount; ++k) v += options.signs[k] * blocks[k][s];
                out.at(s, p) = v;
            }
        }
    });
    return out;
}

WeylIdentityReport weyl_identity_residual(const DeformationBundle& b, const Riem4Field& deformed_weyl,
                                          const WeylErrorOptions& options) {
    const Riem4Field e = weyl_error(b, options);
    const Riem4Field& w = b.base->weyl;
    WeylIdentityReport rep;
    rep.error_scale = e.max_abs();
    const auto ev = e.raw(), wv = w.raw(), dv = deformed_weyl.raw();
    for (std::size_t i = 0; i < ev.size(); ++i) rep.residual = std::max(rep.residual, std::abs(wv[i] + ev[i] - dv[i]));
    return rep;
}

WeylIdentityReport weyl_identity_residual(const DeformationBundle& b, const WeylErrorOptions& options) {
    return weyl_identity_residual(b, curvature(b.deformed_metric()).weyl, options);
}

DivergenceIdentityReport scalar_divergence_identity(const DeformationBundle& b) {
    const MetricField& g = b.metric();
    const int n = g.dim();
    CovectorField x(g.chart());
    ScalarField ricff(g.chart());
    for (std::size_t p = 0; p < g.points(); ++p) {
        const double w = b.w.at(0, p);
        double rff = 0.0;
        for (int i = 0; i < n; ++i) {
            double hf = 0.0;
            for (int j = 0; j < n; ++j) {
                hf += b.hessian.at(sym_slot(n, i, j), p) * b.df_up.at(j, p);
                rff += b.df_up.at(i, p) * b.base->ricci.at(sym_slot(n, i, j), p) * b.df_up.at(j, p);
            }
            x.at(i, p) = (b.laplacian.at(0, p) * b.df.at(i, p) - hf) / w;
        }
        ricff.at(0, p) = rff / w;
    }
    const ScalarField divx = divergence(x, g);
    const ScalarField closed = deformed_scalar_closed_form(b);
    ScalarField rdiv(g.chart()), diff_div(g.chart()), diff_closed(g.chart()), mag(g.chart());
    DivergenceIdentityReport rep;
    for (std::size_t p = 0; p < g.points(); ++p) {
        const double r = b.base->scalar.at(0, p);
        const double rd = r - ricff.at(0, p) + divx.at(0, p);
        rep.pointwise = std::max(rep.pointwise, std::abs(rd - closed.at(0, p)));
        diff_div.at(0, p) = rd - r + ricff.at(0, p);
        diff_closed.at(0, p) = closed.at(0, p) - r + ricff.at(0, p);
        mag.at(0, p) = std::abs(r) + std::abs(ricff.at(0, p));
    }
    rep.integral = std::abs(integrate(diff_div, g));
    rep.integral_closed = std::abs(integrate(diff_closed, g));
    rep.scale = integrate(mag, g);
    return rep;
}

ScalarField deformed_norm(const Riem4Field& t, const MetricField& g, const CovectorField& dphi, double k) {
    const int n = g.dim();
    ScalarField out(g.chart());
    parallel_for(g.points(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            const tensor::Mat inv = g.inv_at(p);
            tensor::Vec up{};
            double grad2 = 0.0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) up[i] += at(inv, i, j) * dphi.at(j, p);
                grad2 += up[i] * dphi.at(i, p);
            }
            const double c = k * k / (1.0 + k * k * grad2);
            tensor::Mat bar = inv;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) at(bar, i, j) -= c * up[i] * up[j];
            out.at(0, p) = tensor::riemann_norm(n, riem_at(t, p), bar);
        }
    });
    return out;
}

ScalarField deformed_norm(const Riem4Field& t, const MetricField& g, const ScalarField& phi, double k) {
    return deformed_norm(t, g, gradient(phi), k);
}

ScalarField deformed_norm_radial(const Riem4Field& t, const MetricField& g, const CovectorField& dphi, double k,
                                 const std::array<double, kMaxDim>& center) {
    const Chart& chart = g.chart();
    const int n = g.dim();
    ScalarField out(chart);
    parallel_for(g.points(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            bool moving = false;
            for (int i = 0; i < n; ++i) moving = moving || dphi.at(i, p) != 0.0;
            const auto tp = riem_at(t, p);
            if (!moving) {
                out.at(0, p) = tensor::riemann_norm(n, tp, g.inv_at(p));
                continue;
            }
            const auto disp = chart.displacement(p, center);
            double rho = 0.0;
            for (int i = 0; i < n; ++i) rho += disp[i] * disp[i];
            rho = std::sqrt(rho);
            tensor::Vec u{};
            if (rho > 0.0)
                for (int i = 0; i < n; ++i) u[i] = disp[i] / rho;
            else
                u[0] = 1.0;
            const auto e = tensor::complete_frame(n, u);
            double phi_rho = 0.0;
            for (int i = 0; i < n; ++i) phi_rho += dphi.at(i, p) * u[i];
            const double c = 1.0 / (1.0 + k * k * phi_rho * phi_rho);
            const auto cur = tensor::frame_components(n, tp, e);
            auto T = [&](int a, int b, int cc, int d) { return cur[((a * n + b) * n + cc) * n + d]; };
            double tang = 0.0, one = 0.0, two = 0.0;
            for (int i = 1; i < n; ++i)
                for (int kk = 1; kk < n; ++kk) {
                    two += T(i, 0, kk, 0) * T(i, 0, kk, 0);
                    for (int tt = 1; tt < n; ++tt) {
                        one += T(i, 0, kk, tt) * T(i, 0, kk, tt);
                        for (int j = 1; j < n; ++j) tang += T(i, j, kk, tt) * T(i, j, kk, tt);
                    }
                }
            out.at(0, p) = std::sqrt(std::max(0.0, tang + 4.0 * c * one + 4.0 * c * c * two));
        }
    });
    return out;
}

EConformalReport e_conformal_invariance_residual(const MetricField& g, const ScalarField& psi, double k,
                                                 const WeylErrorOptions& options) {
    Riem4Field lhs;
    {
        auto cb = std::make_shared<const CurvatureBundle>(curvature(scaled_metric(g, psi)));
        ScalarField kpsi = psi;
        kpsi *= k;
        lhs = weyl_error(deform(cb, kpsi), options);
    }
    ScalarField eta(g.chart());
    for (std::size_t p = 0; p < g.points(); ++p) eta.at(0, p) = 2.0 * k * std::sqrt(psi.at(0, p));
    const Riem4Field rhs = weyl_error(deform(g, eta), options);
    EConformalReport rep;
    for (std::size_t p = 0; p < g.points(); ++p) {
        const double s = psi.at(0, p);
        for (int c = 0; c < lhs.components(); ++c) {
            const double l = lhs.at(c, p), r = rhs.at(c, p);
            rep.residual_psi = std::max(rep.residual_psi, std::abs(l - s * r));
            rep.residual_inverse = std::max(rep.residual_inverse, std::abs(l - r / s));
            rep.scale = std::max(rep.scale, std::abs(l));
        }
    }
    return rep;
}

LemmaA2Terms lemma_a2_terms(std::shared_ptr<const CurvatureBundle> base, const ScalarField& phi, double t,
                            const WeylErrorOptions& options) {
    if (!(t > 0.0)) throw PreconditionError("lemma_a2_lhs requires t > 0");
    const DeformationBundle d = deform(std::move(base), phi);
    const MetricField& g = d.metric();
    const int n = g.dim();
    const Riem4Field e = weyl_error(d, options);
    const ScalarField wnorm = riemann_norm(d.base->weyl, d.deformed_inverse);
    const ScalarField enorm = riemann_norm(e, d.deformed_inverse);
    ScalarField c1(g.chart()), c2(g.chart()), c3(g.chart()), c4(g.chart());
    for (std::size_t p = 0; p < g.points(); ++p) {
        const double w = d.w.at(0, p);
        tensor::Vec v{};
        double rff = 0.0, hff = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int s = sym_slot(n, i, j);
                v[i] += d.hessian.at(s, p) * d.df_up.at(j, p);
                rff += d.df_up.at(i, p) * d.base->ricci.at(s, p) * d.df_up.at(j, p);
                hff += d.df_up.at(i, p) * d.hessian.at(s, p) * d.df_up.at(j, p);
            }
        double vv = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) vv += v[i] * g.inverse().at(sym_slot(n, i, j), p) * v[j];
        c1.at(0, p) = d.base->scalar.at(0, p) + t * wnorm.at(0, p);
        c2.at(0, p) = t * enorm.at(0, p);
        c3.at(0, p) = -rff / w;
        c4.at(0, p) = (n - 1.0) / (n - 2.0) * (vv / (w * w) - hff * hff / (w * w * w));
    }
    LemmaA2Terms terms;
    terms.curvature = integrate(c1, g);
    terms.error = integrate(c2, g);
    terms.ricci = integrate(c3, g);
    terms.hessian = integrate(c4, g);
    return terms;
}

double lemma_a2_lhs(const MetricField& g, const ScalarField& phi, double t) {
    if (!(t > 0.0)) throw PreconditionError("lemma_a2_lhs requires t > 0");
    return lemma_a2_terms(std::make_shared<const CurvatureBundle>(curvature(g)), phi, t).total();
}

}  // namespace swc
