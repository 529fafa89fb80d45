#include "swc/construct/construct.hpp"

#include "swc/error.hpp"
#include "swc/grid/ops.hpp"
#include "swc/tensor/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace swc {

namespace {

double radius_of(const std::array<double, kMaxDim>& x, int n) {
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += x[a] * x[a];
    return std::sqrt(r2);
}

void require_flat_balls(const MetricField& g, const BallConfig& config) {
    const Chart& chart = g.chart();
    const int n = chart.dim();
    if (!(config.radius > 0.0)) throw InputError("ball radius must be positive");
    for (int a = 0; a < n; ++a)
        if (!(1.1 * config.radius < 0.5 * chart.length(a)))
            throw InputError("ball radius does not fit in the torus along axis " + std::to_string(a));
    if (presets::center_separation(chart, config.centers) <= 2.0 * config.radius)
        throw InputError("balls are not pairwise disjoint");
    for (std::size_t p = 0; p < chart.point_count(); ++p)
        for (std::size_t b = 0; b < config.centers.size(); ++b) {
            if (radius_of(chart.displacement(p, config.centers[b]), n) >= 1.1 * config.radius) continue;
            for (int i = 0, s = 0; i < n; ++i)
                for (int j = i; j < n; ++j, ++s)
                    if (std::abs(g.metric().at(s, p) - (i == j ? 1.0 : 0.0)) > 1e-14) {
                        std::ostringstream os;
                        os << "metric is not flat on B_{1.1r} of ball " << b << " (point " << p << ")";
                        throw InputError(os.str());
                    }
        }
}

}  // namespace

RadialFields radial_fields(const MetricField& g, const BallConfig& config, const BumpProfile& profile) {
    require_flat_balls(g, config);
    const Chart& chart = g.chart();
    const int n = chart.dim();
    const double e = 2.0 / (n - 2);
    const double r = config.radius;
    RadialFields rf;
    rf.f = ScalarField(chart);
    rf.psi = ScalarField(chart);
    rf.f_rho = ScalarField(chart);
    rf.f_rhorho = ScalarField(chart);
    rf.psi_rho = ScalarField(chart);
    rf.psi_rhorho = ScalarField(chart);
    for (std::size_t p = 0; p < chart.point_count(); ++p) {
        double f = 1.0, fr = 0.0, frr = 0.0;
        for (const Point& c : config.centers) {
            const double rho = radius_of(chart.displacement(p, c), n);
            if (rho >= r) continue;
            f = profile.y(rho / r);
            fr = profile.dy(rho / r) / r;
            frr = profile.d2y(rho / r) / (r * r);
        }
        rf.f.at(0, p) = f;
        rf.f_rho.at(0, p) = fr;
        rf.f_rhorho.at(0, p) = frr;
        rf.psi.at(0, p) = std::pow(f, e);
        rf.psi_rho.at(0, p) = e * std::pow(f, e - 1.0) * fr;
        rf.psi_rhorho.at(0, p) = e * ((e - 1.0) * std::pow(f, e - 2.0) * fr * fr + std::pow(f, e - 1.0) * frr);
    }
    return rf;
}

namespace {

struct PhiIntegrands {
    PhiTerms terms;
    double printed = 0.0;
};

PhiIntegrands phi_display(const CurvatureBundle& base, const DeformationBundle& bar, const ScalarField& f,
                          const ScalarField& psi, double t, double k) {
    const MetricField& g = base.metric;
    const Chart& chart = g.chart();
    const int n = chart.dim();
    const std::size_t np = chart.point_count();
    const CovectorField dpsi = gradient(psi);
    const CovectorField psi_up = raise(dpsi, g);
    const Sym2Field hpsi = covariant_hessian(psi, base.christoffel);
    const CovectorField df = gradient(f);
    const Sym2Field hf = covariant_hessian(f, base.christoffel);
    const ScalarField lapf = trace(hf, g);
    const ScalarField wbar = riemann_norm(base.weyl, bar.deformed_inverse);
    const ScalarField ebar = riemann_norm(weyl_error(bar), bar.deformed_inverse);

    const double k2 = k * k;
    const double c1 = (n - 1.0) / (n - 2.0);
    std::array<ScalarField, 9> blocks;
    for (auto& b : blocks) b = ScalarField(chart);
    ScalarField pw(chart), pe(chart), pl(chart), pc(chart);
    for (std::size_t p = 0; p < np; ++p) {
        const double fv = f.at(0, p), ps = psi.at(0, p);
        double s = 0.0, ric = 0.0, hfpp = 0.0, fpsi = 0.0, q = 0.0, vv = 0.0;
        tensor::Vec v{};
        for (int i = 0; i < n; ++i) {
            s += dpsi.at(i, p) * psi_up.at(i, p);
            fpsi += df.at(i, p) * psi_up.at(i, p);
            for (int j = 0; j < n; ++j) {
                const int sl = sym_slot(n, i, j);
                ric += psi_up.at(i, p) * base.ricci.at(sl, p) * psi_up.at(j, p);
                hfpp += psi_up.at(i, p) * hf.at(sl, p) * psi_up.at(j, p);
                v[i] += hpsi.at(sl, p) * psi_up.at(j, p);
            }
        }
        for (int i = 0; i < n; ++i) {
            q += v[i] * psi_up.at(i, p);
            for (int j = 0; j < n; ++j) vv += v[i] * g.inverse().at(sym_slot(n, i, j), p) * v[j];
        }
        const double d = ps / k2 + s;
        blocks[0].at(0, p) = base.scalar.at(0, p) * fv;
        blocks[1].at(0, p) = t * fv * wbar.at(0, p);
        blocks[2].at(0, p) = -ric * fv / d;
        blocks[3].at(0, p) = t * fv * ebar.at(0, p);
        blocks[4].at(0, p) = hfpp / d;
        blocks[5].at(0, p) = (n - 1.0) / (2.0 * k2) * fpsi / d;
        blocks[6].at(0, p) = -ps * lapf.at(0, p) / ((n - 2.0) * k2 * d);
        blocks[7].at(0, p) = c1 * fv * (vv / (d * d) - q * q / (d * d * d));
        const double cubic = 0.25 * s * s * s - s * q * ps;
        blocks[8].at(0, p) = c1 / k2 * fv * cubic / (ps * d * d * d);
        // Printed weights: f/psi on the Weyl terms, no 1/(n-2) on the Laplacian
        // term, no 1/psi on the cubic term.
        pw.at(0, p) = blocks[1].at(0, p) / ps;
        pe.at(0, p) = blocks[3].at(0, p) / ps;
        pl.at(0, p) = blocks[6].at(0, p) * (n - 2.0);
        pc.at(0, p) = blocks[8].at(0, p) * ps;
    }
    PhiIntegrands out;
    PhiTerms& T = out.terms;
    T.curvature = integrate(blocks[0], g);
    T.weyl = integrate(blocks[1], g);
    T.ricci = integrate(blocks[2], g);
    T.error = integrate(blocks[3], g);
    T.hessian_f = integrate(blocks[4], g);
    T.gradient = integrate(blocks[5], g);
    T.laplacian = integrate(blocks[6], g);
    T.hessian_psi = integrate(blocks[7], g);
    T.cubic = integrate(blocks[8], g);
    out.printed = T.curvature + integrate(pw, g) + T.ricci + integrate(pe, g) + T.hessian_f + T.gradient +
                  integrate(pl, g) + T.hessian_psi + integrate(pc, g);
    return out;
}

}  // namespace

PhiResult phi_from_psi(std::shared_ptr<const CurvatureBundle> base, double t, const ScalarField& psi, double k) {
    if (!(t > 0.0)) throw PreconditionError("phi_functional requires t > 0");
    if (!(k > 0.0)) throw PreconditionError("phi_functional requires k > 0");
    const MetricField& g = base->metric;
    PhiResult res;
    {
        // Path a: lemma a2 on g' = psi g with phi = k psi.
        auto gp = std::make_shared<const CurvatureBundle>(curvature(scaled_metric(g, psi)));
        ScalarField kpsi = psi;
        kpsi *= k;
        res.terms_a = lemma_a2_terms(gp, kpsi, t);
        res.path_a = res.terms_a.total();
    }
    ScalarField eta(g.chart());
    for (std::size_t p = 0; p < eta.points(); ++p) eta.at(0, p) = 2.0 * k * std::sqrt(psi.at(0, p));
    const DeformationBundle bar = deform(base, eta);
    const PhiIntegrands d = phi_display(*base, bar, f_from_psi(psi), psi, t, k);
    res.terms = d.terms;
    res.value = d.terms.total();
    res.printed = d.printed;
    res.residual = std::abs(res.value - res.path_a);
    return res;
}

PhiResult phi_functional(std::shared_ptr<const CurvatureBundle> base, double t, const BallConfig& config,
                         const BumpProfile& profile) {
    const RadialFields rf = radial_fields(base->metric, config, profile);
    return phi_from_psi(std::move(base), t, rf.psi, config.k);
}

PhiResult phi_functional(const MetricField& g, double t, const BallConfig& config, const BumpProfile& profile) {
    return phi_functional(std::make_shared<const CurvatureBundle>(curvature(g)), t, config, profile);
}

DeformedConformal deformed_conformal_metric(const MetricField& g, const BallConfig& config,
                                            const BumpProfile& profile) {
    const RadialFields rf = radial_fields(g, config, profile);
    ScalarField kpsi = rf.psi;
    kpsi *= config.k;
    const DeformationBundle d = deform(scaled_metric(g, rf.psi), kpsi);
    DeformedConformal out{d.deformed_metric(), ScalarField(g.chart())};
    for (std::size_t p = 0; p < out.u.points(); ++p) out.u.at(0, p) = std::pow(d.w.at(0, p), -0.25);
    return out;
}

double lemma_a1_bridge(const MetricField& g, double t, const BallConfig& config, const BumpProfile& profile) {
    const DeformedConformal dc = deformed_conformal_metric(g, config, profile);
    return lemma_a1_lhs(dc.metric, t, dc.u);
}

RadialErrorReport radial_error_components(const MetricField& g, const Point& center, double r, double k,
                                          const BumpProfile& profile) {
    const Chart& chart = g.chart();
    const int n = chart.dim();
    const BallConfig config{{center}, r, k};
    const RadialFields rf = radial_fields(g, config, profile);
    ScalarField keta(chart);
    for (std::size_t p = 0; p < chart.point_count(); ++p) keta.at(0, p) = 2.0 * k * std::sqrt(rf.psi.at(0, p));
    const Riem4Field e = weyl_error(deform(g, keta));
    RadialErrorReport rep;
    rep.scale = e.max_abs();
    const double k2 = k * k;
    for (std::size_t p = 0; p < chart.point_count(); ++p) {
        const auto x = chart.displacement(p, center);
        const double rho = radius_of(x, n);
        if (rho == 0.0 || rho >= r) continue;
        ++rep.points;
        tensor::Vec u{};
        for (int a = 0; a < n; ++a) u[a] = x[a] / rho;
        const auto comp = tensor::frame_components(n, riem_at(e, p), tensor::complete_frame(n, u));
        auto E = [&](int a, int b, int c, int d) { return comp[((a * n + b) * n + c) * n + d]; };
        // eta = 2 sqrt(psi) and its radial derivatives.
        const double ps = rf.psi.at(0, p), pr = rf.psi_rho.at(0, p), prr = rf.psi_rhorho.at(0, p);
        const double a1 = pr / std::sqrt(ps);
        const double b1 = prr / std::sqrt(ps) - 0.5 * pr * pr / (ps * std::sqrt(ps));
        const double c = a1 / rho;  // tangential Hessian eigenvalue
        const double dd = 1.0 / k2 + a1 * a1;
        const double tang = 2.0 * b1 * c * (a1 * a1 - 1.0) / (k2 * dd * dd * (n - 2.0));
        const double pair = k2 * b1 * c / ((n - 2.0) * (1.0 + k2 * a1 * a1));
        for (int i = 1; i < n; ++i)
            for (int kk = 1; kk < n; ++kk) {
                rep.radial_pair = std::max(rep.radial_pair, std::abs(E(i, 0, kk, 0)));
                rep.printed_radial = std::max(rep.printed_radial, std::abs((i == kk ? pair : 0.0) - E(i, 0, kk, 0)));
                for (int t = 1; t < n; ++t) {
                    rep.one_radial = std::max(rep.one_radial, std::abs(E(i, 0, kk, t)));
                    for (int j = 1; j < n; ++j) {
                        const double gg = (i == kk && j == t ? 1.0 : 0.0) - (i == t && j == kk ? 1.0 : 0.0);
                        rep.tangential = std::max(rep.tangential, std::abs(E(i, j, kk, t)));
                        rep.printed_tangential =
                            std::max(rep.printed_tangential, std::abs(tang * gg - E(i, j, kk, t)));
                    }
                }
            }
    }
    return rep;
}

BumpProfile search_profile(const SearchOptions& o, int n) {
    return o.family == BumpFamily::steep ? make_bump(o.delta, n) : BumpProfile(o.delta, n, o.family);
}

SearchResult search_parameters(const MetricField& g, double t, const SearchOptions& options) {
    const Chart& chart = g.chart();
    const int n = chart.dim();
    const BumpProfile profile = search_profile(options, n);
    std::vector<double> radii = options.radii;
    if (radii.empty()) {
        const double L = chart.length(0);
        radii = {L / 16, L / 12, L / 8, L / 6};
    }
    std::sort(radii.begin(), radii.end());
    auto base = std::make_shared<const CurvatureBundle>(curvature(g));
    SearchResult res;
    double best = std::numeric_limits<double>::infinity();
    LandscapeCell best_cell;
    for (double r : radii) {
        std::optional<BallConfig> cfg;
        std::string why;
        for (int count : {4, 2, 1}) {
            if (count > options.max_balls) continue;
            BallConfig c{presets::symmetric_centers(chart, count), r, 1.0};
            try {
                require_flat_balls(g, c);
                cfg = c;
                break;
            } catch (const InputError& e) {
                why = e.what();
            }
        }
        for (double k : options.ks) {
            LandscapeCell cell;
            cell.radius = r;
            cell.k = k;
            if (!cfg) {
                cell.note = why;
                res.landscape.push_back(cell);
                continue;
            }
            BallConfig c = *cfg;
            c.k = k;
            const PhiResult phi = phi_functional(base, t, c, profile);
            cell.feasible = true;
            cell.balls = static_cast<int>(c.centers.size());
            cell.phi = phi.value;
            cell.phi_a = phi.path_a;
            res.landscape.push_back(cell);
            if (phi.value < best) {
                best = phi.value;
                best_cell = cell;
            }
            if (!res.found && phi.value < 0.0 && phi.path_a < 0.0) {
                res.found = true;
                res.config = c;
            }
        }
    }
    std::ostringstream os;
    if (res.found) {
        os << "Phi_M < 0 at r = " << res.config.radius << ", k = " << res.config.k << " with "
           << res.config.centers.size() << " balls";
    } else if (std::isfinite(best)) {
        os << "no cell with negative Phi_M; minimum " << best << " at r = " << best_cell.radius
           << ", k = " << best_cell.k;
    } else {
        os << "no feasible ball layout on the search grid";
    }
    res.message = os.str();
    return res;
}

std::string_view construct_status_name(ConstructStatus s) {
    switch (s) {
        case ConstructStatus::success: return "success";
        case ConstructStatus::search_failure: return "search_failure";
        case ConstructStatus::shortcut_failure: return "shortcut_failure";
        case ConstructStatus::verification_failure: return "verification_failure";
    }
    return "unknown";
}

namespace {

void finish(ConstructionOutcome& out, const MetricField& g, double t, const ConstructOptions& options) {
    SolveReport rep = solve_constant_F(g, t, options.solve);
    out.solved_metric = g;
    out.final_metric = conformal_metric(g, rep.u);
    out.defect = constant_F_defect(g, rep.u, t);
    std::ostringstream os;
    if (!rep.converged) {
        out.status = ConstructStatus::verification_failure;
        os << "solver did not converge: " << rep.message;
    } else if (!(out.defect < options.tolerance)) {
        out.status = ConstructStatus::verification_failure;
        os << "max |F + 1| = " << out.defect << " on the final metric exceeds " << options.tolerance;
    } else {
        out.status = ConstructStatus::success;
        os << "max |F + 1| = " << out.defect;
    }
    out.solve = std::move(rep);
    out.message += (out.message.empty() ? "" : "; ") + os.str();
}

}  // namespace

ConstructionOutcome construct_constant_F(const MetricField& g0, double t, const ConstructOptions& options) {
    ConstructionOutcome out;
    const TrichotomyResult tri = first_eigenvalue(g0, t, options.solve.eigen);
    out.lambda = tri.lambda;
    out.verdict = tri.verdict;
    out.shortcut = t <= 0.0 || tri.verdict == Verdict::negative;
    if (out.shortcut) {
        out.message = "shortcut: solving directly on the input metric";
        if (tri.verdict != Verdict::negative) {
            std::ostringstream os;
            os << "shortcut taken (t <= 0) but the first eigenvalue " << tri.lambda << " is "
               << verdict_name(tri.verdict) << "; no conformal metric with F = -1 in this class";
            out.status = ConstructStatus::shortcut_failure;
            out.message = os.str();
            return out;
        }
        finish(out, g0, t, options);
        return out;
    }
    out.search = search_parameters(g0, t, options.search);
    if (!out.search->found) {
        out.status = ConstructStatus::search_failure;
        out.message = out.search->message;
        return out;
    }
    const BumpProfile profile = search_profile(options.search, g0.dim());
    const DeformedConformal dc = deformed_conformal_metric(g0, out.search->config, profile);
    out.lemma_a1 = lemma_a1_lhs(dc.metric, t, dc.u);
    out.message = out.search->message;
    if (!(*out.lemma_a1 < 0.0)) {
        out.status = ConstructStatus::verification_failure;
        out.message += "; lemma a1 value is not negative on the deformed metric";
        return out;
    }
    try {
        finish(out, dc.metric, t, options);
    } catch (const PreconditionError& e) {
        out.status = ConstructStatus::verification_failure;
        out.message += std::string("; ") + e.what();
    }
    return out;
}

PinchingReport pinching_report(const MetricField& g, double eps) {
    if (!(eps > 0.0)) throw PreconditionError("pinching_report requires eps > 0");
    const CurvatureBundle b = curvature(g);
    const ScalarField w = riemann_norm(b.weyl, g);
    PinchingReport rep;
    rep.max_scalar = -std::numeric_limits<double>::infinity();
    rep.max_pinching = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < g.points(); ++p) {
        const double r = b.scalar.at(0, p);
        const double m = w.at(0, p) * w.at(0, p) - eps * r * r;
        if (r > rep.max_scalar) {
            rep.max_scalar = r;
            rep.worst_scalar_point = p;
        }
        if (m > rep.max_pinching) {
            rep.max_pinching = m;
            rep.worst_pinching_point = p;
        }
    }
    rep.negative_scalar = rep.max_scalar < 0.0;
    rep.pinched = rep.max_pinching < 0.0;
    return rep;
}

}  // namespace swc
