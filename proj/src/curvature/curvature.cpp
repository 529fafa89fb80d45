#include "swc/curvature/curvature.hpp"

#include "swc/grid/ops.hpp"
#include "swc/parallel.hpp"
#include "swc/tensor/fields.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

namespace swc {

namespace {

// Lowered symbols Gamma_{e,bc} stored like ChristoffelField (e major).
ChristoffelField lowered_christoffel(const MetricField& g) {
    const Chart& chart = g.chart();
    const int n = g.dim();
    const int ns = sym_count(n);
    ChristoffelField low(chart);
    for (int x = 0; x < n; ++x) {
        const Sym2Field dg = differentiate(g.metric(), x);
        for (int e = 0; e < n; ++e)
            for (int b = 0; b < n; ++b)
                for (int c = b; c < n; ++c) {
                    auto out = low.component(e * ns + sym_slot(n, b, c));
                    auto add = [&](int i, int j, double coef) {
                        const auto src = dg.component(sym_slot(n, i, j));
                        for (std::size_t p = 0; p < out.size(); ++p) out[p] += coef * src[p];
                    };
                    if (b == x) add(e, c, 0.5);
                    if (c == x) add(e, b, 0.5);
                    if (e == x) add(b, c, -0.5);
                }
    }
    return low;
}

struct SecondDerivativeTerm {
    int slot;
    int component;
    double coef;
};

// For each unordered axis pair (x <= y), the Riemann slots fed by d_x d_y g_uv.
std::vector<std::vector<SecondDerivativeTerm>> second_derivative_terms(int n) {
    const auto& idx = RiemannIndex::get(n);
    std::vector<std::vector<SecondDerivativeTerm>> terms(n * n);
    for (int s = 0; s < idx.slot_count(); ++s) {
        const auto [a, b, c, d] = idx.indices(s);
        auto push = [&](int p, int q, int u, int v, double coef) {
            terms[std::min(p, q) * n + std::max(p, q)].push_back({s, sym_slot(n, u, v), coef});
        };
        push(a, d, b, c, 0.5);
        push(b, c, a, d, 0.5);
        push(a, c, b, d, -0.5);
        push(b, d, a, c, -0.5);
    }
    return terms;
}

}  // namespace

ChristoffelField christoffel(const MetricField& g) {
    const int n = g.dim();
    const int ns = sym_count(n);
    const ChristoffelField low = lowered_christoffel(g);
    ChristoffelField up(g.chart());
    parallel_for(g.points(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p)
            for (int c = 0; c < n; ++c)
                for (int s = 0; s < ns; ++s) {
                    double v = 0.0;
                    for (int e = 0; e < n; ++e)
                        v += g.inverse().at(sym_slot(n, c, e), p) * low.at(e * ns + s, p);
                    up.at(c * ns + s, p) = v;
                }
    });
    return up;
}

Riem4Field riemann(const MetricField& g, RiemannOptions options) {
    const Chart& chart = g.chart();
    const int n = g.dim();
    const int ns = sym_count(n);
    const auto& idx = RiemannIndex::get(n);
    Riem4Field rm(chart);

    {
        const ChristoffelField low = lowered_christoffel(g);
        parallel_for(g.points(), [&](std::size_t begin, std::size_t end) {
            std::array<double, kMaxDim * 21> gl{}, gu{};
            for (std::size_t p = begin; p < end; ++p) {
                const tensor::Mat inv = g.inv_at(p);
                for (int e = 0; e < n; ++e)
                    for (int s = 0; s < ns; ++s) gl[e * ns + s] = low.at(e * ns + s, p);
                for (int f = 0; f < n; ++f)
                    for (int s = 0; s < ns; ++s) {
                        double v = 0.0;
                        for (int e = 0; e < n; ++e) v += tensor::at(inv, f, e) * gl[e * ns + s];
                        gu[f * ns + s] = v;
                    }
                for (int slot = 0; slot < idx.slot_count(); ++slot) {
                    const auto [a, b, c, d] = idx.indices(slot);
                    const int bc = sym_slot(n, b, c), ad = sym_slot(n, a, d);
                    const int ac = sym_slot(n, a, c), bd = sym_slot(n, b, d);
                    double v = 0.0;
                    for (int e = 0; e < n; ++e)
                        v += gl[e * ns + bc] * gu[e * ns + ad] - gl[e * ns + ac] * gu[e * ns + bd];
                    rm.at(slot, p) = v;
                }
            }
        });
    }

    const auto terms = second_derivative_terms(n);
    std::vector<double> tmp(g.points());
    for (int x = 0; x < n; ++x) {
        const Sym2Field dx = differentiate(g.metric(), x);
        for (int y = x; y < n; ++y) {
            const auto& list = terms[x * n + y];
            if (list.empty()) continue;
            Sym2Field dxy(chart);
            for (int c = 0; c < ns; ++c) derivative(chart, dx.component(c), dxy.component(c), y);
            // d_x d_y appears once per unordered pair; both orderings are the same field.
            for (const auto& t : list) {
                auto out = rm.component(t.slot);
                const auto src = dxy.component(t.component);
                for (std::size_t p = 0; p < out.size(); ++p) out[p] += t.coef * src[p];
            }
        }
    }

    if (options.project && n >= 4) {
        parallel_for(g.points(), [&](std::size_t begin, std::size_t end) {
            for (std::size_t p = begin; p < end; ++p) {
                auto v = riem_at(rm, p);
                tensor::project_bianchi(n, v);
                store_riem(rm, p, v);
            }
        });
    }
    return rm;
}

std::pair<Sym2Field, ScalarField> ricci_scalar(const Riem4Field& riem, const MetricField& g) {
    const int n = g.dim();
    Sym2Field ric(g.chart());
    ScalarField r(g.chart());
    parallel_for(g.points(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            const tensor::Mat inv = g.inv_at(p);
            const auto t = riem_at(riem, p);
            double scal = 0.0;
            for (int b = 0; b < n; ++b)
                for (int d = b; d < n; ++d) {
                    double v = 0.0;
                    for (int a = 0; a < n; ++a)
                        for (int c = 0; c < n; ++c) v += tensor::at(inv, a, c) * tensor::component(n, t, a, b, c, d);
                    ric.at(sym_slot(n, b, d), p) = v;
                    scal += (b == d ? 1.0 : 2.0) * tensor::at(inv, b, d) * v;
                }
            r.at(0, p) = scal;
        }
    });
    return {std::move(ric), std::move(r)};
}

namespace {

// Rm = W + sign * [Ric o g / (n-2) - R g o g / (2(n-1)(n-2))], applied slotwise.
Riem4Field shift_by_trace_part(const Riem4Field& src, const Sym2Field& ricci, const ScalarField& scalar,
                               const MetricField& g, double sign) {
    const int n = g.dim();
    const auto& idx = RiemannIndex::get(n);
    Riem4Field out(g.chart());
    const double c1 = 1.0 / (n - 2);
    const double c2 = 1.0 / (2.0 * (n - 1) * (n - 2));
    parallel_for(g.points(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            const tensor::Mat gm = g.g_at(p);
            tensor::Mat ric{};
            for (int i = 0, s = 0; i < n; ++i)
                for (int j = i; j < n; ++j, ++s) {
                    tensor::at(ric, i, j) = ricci.at(s, p);
                    tensor::at(ric, j, i) = ricci.at(s, p);
                }
            const auto kn_rg = tensor::kulkarni_nomizu(n, ric, gm);
            const auto kn_gg = tensor::kulkarni_nomizu(n, gm, gm);
            const double r = scalar.at(0, p);
            for (int s = 0; s < idx.slot_count(); ++s)
                out.at(s, p) = src.at(s, p) + sign * (c1 * kn_rg[s] - c2 * r * kn_gg[s]);
        }
    });
    return out;
}

}  // namespace

Riem4Field weyl(const Riem4Field& riem, const Sym2Field& ricci, const ScalarField& scalar,
                const MetricField& g) {
    return shift_by_trace_part(riem, ricci, scalar, g, -1.0);
}

Riem4Field recompose_riemann(const Riem4Field& w, const Sym2Field& ricci, const ScalarField& scalar,
                             const MetricField& g) {
    return shift_by_trace_part(w, ricci, scalar, g, 1.0);
}

CurvatureBundle curvature(const MetricField& g) {
    CurvatureBundle b;
    b.metric = g;
    b.christoffel = christoffel(g);
    b.riemann = riemann(g);
    auto [ric, r] = ricci_scalar(b.riemann, g);
    b.ricci = std::move(ric);
    b.scalar = std::move(r);
    b.weyl = weyl(b.riemann, b.ricci, b.scalar, g);
    return b;
}

double decomposition_residual(const CurvatureBundle& b) {
    const Riem4Field re = recompose_riemann(b.weyl, b.ricci, b.scalar, b.metric);
    return (re - b.riemann).max_abs();
}

double decomposition_residual(const MetricField& g) {
    return decomposition_residual(curvature(g));
}

double weyl_trace_residual(const Riem4Field& w, const MetricField& g) {
    const int n = g.dim();
    double worst = 0.0;
    std::mutex mu;
    parallel_for(g.points(), [&](std::size_t begin, std::size_t end) {
        double local = 0.0;
        for (std::size_t p = begin; p < end; ++p) {
            const tensor::Mat inv = g.inv_at(p);
            const auto t = riem_at(w, p);
            for (int k = 0; k < n; ++k)
                for (int b = 0; b < n; ++b) {
                    double v = 0.0;
                    for (int i = 0; i < n; ++i)
                        for (int a = 0; a < n; ++a) v += tensor::at(inv, i, a) * tensor::component(n, t, i, a, k, b);
                    local = std::max(local, std::abs(v));
                }
        }
        std::lock_guard lock(mu);
        worst = std::max(worst, local);
    });
    return worst;
}

CovectorField einstein_divergence(const CurvatureBundle& b) {
    const MetricField& g = b.metric;
    const int n = g.dim();
    const int ns = sym_count(n);
    Sym2Field ein(g.chart());
    for (std::size_t p = 0; p < g.points(); ++p)
        for (int s = 0; s < ns; ++s) ein.at(s, p) = b.ricci.at(s, p) - 0.5 * b.scalar.at(0, p) * g.metric().at(s, p);
    std::vector<Sym2Field> dein;
    for (int c = 0; c < n; ++c) dein.push_back(differentiate(ein, c));
    CovectorField out(g.chart());
    for (std::size_t p = 0; p < g.points(); ++p) {
        const tensor::Mat inv = g.inv_at(p);
        auto G = [&](int i, int j) { return ein.at(sym_slot(n, i, j), p); };
        auto Gam = [&](int c, int a, int bb) { return b.christoffel.at(c * ns + sym_slot(n, a, bb), p); };
        for (int bb = 0; bb < n; ++bb) {
            double v = 0.0;
            for (int a = 0; a < n; ++a)
                for (int c = 0; c < n; ++c) {
                    double cov = dein[c].at(sym_slot(n, a, bb), p);
                    for (int d = 0; d < n; ++d) cov -= Gam(d, c, a) * G(d, bb) + Gam(d, c, bb) * G(a, d);
                    v += tensor::at(inv, a, c) * cov;
                }
            out.at(bb, p) = v;
        }
    }
    return out;
}

}  // namespace swc

namespace swc {

Sym2Field covariant_hessian(const ScalarField& f, const ChristoffelField& gamma) {
    const Chart& chart = f.chart();
    const int n = f.dim();
    const int ns = sym_count(n);
    const CovectorField df = gradient(f);
    Sym2Field h(chart);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            derivative(chart, df.component(a), h.component(sym_slot(n, a, b)), b);
    for (std::size_t p = 0; p < f.points(); ++p)
        for (int s = 0; s < ns; ++s) {
            double v = 0.0;
            for (int c = 0; c < n; ++c) v += gamma.at(c * ns + s, p) * df.at(c, p);
            h.at(s, p) -= v;
        }
    return h;
}

ScalarField trace(const Sym2Field& t, const MetricField& g) {
    const int n = g.dim();
    ScalarField out(g.chart());
    for (std::size_t p = 0; p < g.points(); ++p) {
        double v = 0.0;
        for (int i = 0, s = 0; i < n; ++i)
            for (int j = i; j < n; ++j, ++s) v += (i == j ? 1.0 : 2.0) * g.inverse().at(s, p) * t.at(s, p);
        out.at(0, p) = v;
    }
    return out;
}

}  // namespace swc
