#include "swc/yamabe/yamabe.hpp"

#include "swc/error.hpp"
#include "swc/grid/ops.hpp"
#include "swc/simd/kernels.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace swc {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::negative: return "negative";
        case Verdict::zero: return "zero";
        case Verdict::positive: return "positive";
    }
    return "unknown";
}

std::string_view start_name(SolveStart s) {
    return s == SolveStart::barrier ? "barrier" : "eigenfunction";
}

namespace {

double b_norm(std::span<const double> u, std::span<const double> rho, double cell) {
    return std::sqrt(simd::dot_weighted(u.data(), u.data(), rho.data(), u.size()) * cell);
}

}  // namespace

TrichotomyResult first_eigenvalue(const ModifiedLaplacian& op, const EigenOptions& options) {
    const Chart& c = op.chart();
    const std::size_t np = c.point_count();
    const auto rho = op.metric().density().component(0);
    const double cell = c.cell_volume();
    const auto pot = op.potential().component(0);
    const double scale = op.scale();
    // -a Delta >= 0, so min F - 1 sits below the spectrum.
    const double sigma = *std::min_element(pot.begin(), pot.end()) - 1.0;
    const std::vector<double> shift(np, -sigma);
    const std::vector<double> diag = op.weighted_diagonal(shift);
    const LinearOperator a = [&](std::span<const double> x, std::span<double> y) { op.apply_weighted(x, y, shift); };

    std::vector<double> u(np, 1.0), x(np), rhs(np), au(np);
    {
        const double nrm = b_norm(u, rho, cell);
        for (auto& v : u) v /= nrm;
    }
    auto rayleigh = [&] {
        op.apply_weighted(u, au);
        return simd::dot(u.data(), au.data(), np) * cell;  // u is B-normalized
    };
    TrichotomyResult res;
    double lambda = rayleigh();
    bool done = false;
    for (int it = 0; it < options.max_iterations; ++it) {
        for (std::size_t p = 0; p < np; ++p) {
            rhs[p] = rho[p] * u[p];
            x[p] = u[p] / (lambda - sigma);
        }
        conjugate_gradient(a, diag, rhs, x, options.cg);
        const double nrm = b_norm(x, rho, cell);
        for (std::size_t p = 0; p < np; ++p) u[p] = x[p] / nrm;
        const double next = rayleigh();
        res.iterations = it + 1;
        const bool small = std::abs(next - lambda) <= options.tolerance * scale;
        lambda = next;
        if (small) {
            done = true;
            break;
        }
    }
    if (!done) {
        std::ostringstream os;
        os << "first_eigenvalue: no convergence after " << options.max_iterations << " iterations";
        throw ConvergenceError(os.str());
    }
    double sum = 0.0;
    for (double v : u) sum += v;
    if (sum < 0.0)
        for (auto& v : u) v = -v;
    res.lambda = lambda;
    res.eigenfunction = ScalarField(c);
    std::copy(u.begin(), u.end(), res.eigenfunction.component(0).begin());
    res.min_eigenfunction = *std::min_element(u.begin(), u.end());
    op.apply_weighted(u, au);
    double r = 0.0;
    for (std::size_t p = 0; p < np; ++p) r = std::max(r, std::abs(au[p] / rho[p] - lambda * u[p]));
    res.residual = r / scale;
    res.tolerance = 1e-6 * scale;
    res.verdict = std::abs(lambda) < res.tolerance ? Verdict::zero
                  : lambda < 0.0                  ? Verdict::negative
                                                  : Verdict::positive;
    return res;
}

TrichotomyResult first_eigenvalue(const MetricField& g, double t, const EigenOptions& options) {
    return first_eigenvalue(ModifiedLaplacian::for_metric(g, t), options);
}

double yhat(const ModifiedLaplacian& op, const ScalarField& u, YhatExponent exponent) {
    const int n = op.metric().dim();
    const double q = 2.0 * n / (n - 2.0);
    ScalarField pw(op.chart());
    for (std::size_t p = 0; p < u.points(); ++p) pw.at(0, p) = std::pow(std::abs(u.at(0, p)), q);
    const double den = integrate(pw, op.metric());
    if (!(den > 0.0)) throw InputError("yhat: u vanishes identically");
    const double s = exponent == YhatExponent::scale_invariant ? (n - 2.0) / n : (n - 2.0) / 2.0;
    return op.quadratic_form(u) / std::pow(den, s);
}

double lemma_a1_lhs(const ModifiedLaplacian& op, const ScalarField& u) {
    ScalarField fu2(op.chart());
    for (std::size_t p = 0; p < u.points(); ++p) {
        const double v = u.at(0, p);
        if (!(v > 0.0)) throw InputError("lemma_a1_lhs: u must be positive (point " + std::to_string(p) + ")");
        fu2.at(0, p) = op.potential().at(0, p) * v * v;
    }
    return integrate(fu2, op.metric()) + op.a() * op.dirichlet_energy(u);
}

double lemma_a1_lhs(const MetricField& g, double t, const ScalarField& u) {
    return lemma_a1_lhs(ModifiedLaplacian::for_metric(g, t), u);
}

double constant_F_residual(const ModifiedLaplacian& op, const ScalarField& u) {
    const double pn = conformal_p(op.metric().dim());
    const ScalarField lu = op.apply(u);
    double r = 0.0, m = 0.0;
    for (std::size_t p = 0; p < u.points(); ++p) {
        const double up = std::pow(u.at(0, p), pn);
        r = std::max(r, std::abs(lu.at(0, p) + up));
        m = std::max(m, up);
    }
    return r / m;
}

SolveReport solve_constant_F(const ModifiedLaplacian& op, const SolveOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    const Chart& c = op.chart();
    const std::size_t np = c.point_count();
    const int n = c.dim();
    const double pn = conformal_p(n);
    const auto rho = op.metric().density().component(0);

    const TrichotomyResult tri = first_eigenvalue(op, options.eigen);
    if (tri.verdict != Verdict::negative) {
        std::ostringstream os;
        os << "solve_constant_F: first eigenvalue " << tri.lambda << " is " << verdict_name(tri.verdict)
           << "; a conformal metric with F = -1 exists only when it is negative";
        throw PreconditionError(os.str());
    }
    const auto u1 = tri.eigenfunction.component(0);
    if (!(tri.min_eigenfunction > 0.0))
        throw ConvergenceError("solve_constant_F: first eigenfunction is not positive");

    SolveReport rep;
    rep.lambda = tri.lambda;
    rep.start = options.start;

    // With g1 = u1^{4/(n-2)} g, F1 = lambda u1^{1-p} < 0 and U = u1 v.
    std::vector<double> f1(np), u1p(np);
    double fmax = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
        f1[p] = -tri.lambda * std::pow(u1[p], 1.0 - pn);  // -F1 > 0
        u1p[p] = std::pow(u1[p], pn);
        fmax = std::max(fmax, f1[p]);
    }
    const double vplus = std::pow(fmax, 1.0 / (pn - 1.0));
    const double m = pn * std::pow(vplus, pn - 1.0);

    double v0 = vplus;
    if (options.start == SolveStart::eigenfunction) {
        // Nehari scaling of c u1: c^{p-1} = -lambda int u1^2 / int u1^{p+1}.
        double num = 0.0, den = 0.0;
        for (std::size_t p = 0; p < np; ++p) {
            num += rho[p] * u1[p] * u1[p];
            den += rho[p] * std::pow(u1[p], pn + 1.0);
        }
        v0 = std::pow(-tri.lambda * num / den, 1.0 / (pn - 1.0));
    }
    std::vector<double> v(np, v0), big(np), rhs(np), shift(np), tmp(np);
    for (std::size_t p = 0; p < np; ++p) {
        big[p] = u1[p] * v[p];
        shift[p] = m * u1p[p] / u1[p];
    }
    ScalarField uf(c);
    auto residual = [&] {
        std::copy(big.begin(), big.end(), uf.component(0).begin());
        return constant_F_residual(op, uf);
    };

    {
        const std::vector<double> diag = op.weighted_diagonal(shift);
        const LinearOperator a = [&](std::span<const double> x, std::span<double> y) {
            op.apply_weighted(x, y, shift);
        };
        for (int it = 0; it < options.max_monotone; ++it) {
            for (std::size_t p = 0; p < np; ++p) rhs[p] = rho[p] * u1p[p] * (m * v[p] - std::pow(v[p], pn));
            conjugate_gradient(a, diag, rhs, big, options.cg);
            double change = 0.0, vmax = 0.0;
            for (std::size_t p = 0; p < np; ++p) {
                const double nv = big[p] / u1[p];
                change = std::max(change, std::abs(nv - v[p]));
                vmax = std::max(vmax, nv);
                v[p] = nv;
            }
            rep.monotone_iterations = it + 1;
            rep.history.push_back(residual());
            if (change <= options.monotone_switch * vmax) break;
        }
    }

    // Rounding floor of the residual: |L u| is evaluated with terms of size scale * max u.
    auto floor = [&] {
        double umax = 0.0;
        for (double b : big) umax = std::max(umax, b);
        return 1e4 * std::numeric_limits<double>::epsilon() * op.scale() / std::pow(umax, pn - 1.0);
    };
    const double target = [&] { return std::max(options.tolerance, floor()); }();
    double res = residual();
    for (int it = 0; it < options.max_newton && res > target; ++it) {
        for (std::size_t p = 0; p < np; ++p) shift[p] = pn * std::pow(big[p], pn - 1.0);
        const std::vector<double> diag = op.weighted_diagonal(shift);
        const LinearOperator a = [&](std::span<const double> x, std::span<double> y) {
            op.apply_weighted(x, y, shift);
        };
        op.apply_weighted(big, tmp);
        for (std::size_t p = 0; p < np; ++p) rhs[p] = -(tmp[p] + rho[p] * std::pow(big[p], pn));
        std::vector<double> delta(np, 0.0);
        conjugate_gradient(a, diag, rhs, delta, options.cg);
        double step = 1.0;
        std::vector<double> trial(np);
        double next = res;
        for (int ls = 0; ls < 20; ++ls) {
            bool positive = true;
            for (std::size_t p = 0; p < np; ++p) {
                trial[p] = big[p] + step * delta[p];
                positive = positive && trial[p] > 0.0;
            }
            if (positive) {
                std::swap(big, trial);
                next = residual();
                if (next < res) break;
                std::swap(big, trial);
            }
            step *= 0.5;
        }
        rep.newton_iterations = it + 1;
        rep.history.push_back(next);
        if (!(next < res)) break;
        res = next;
    }
    rep.residual = residual();
    rep.converged = rep.residual <= std::max(options.tolerance, floor());
    rep.u = uf;
    std::copy(big.begin(), big.end(), rep.u.component(0).begin());
    if (!rep.converged) {
        std::ostringstream os;
        os << "residual " << rep.residual << " above tolerance " << std::max(options.tolerance, floor()) << " after "
           << rep.monotone_iterations << " monotone and " << rep.newton_iterations << " Newton iterations";
        rep.message = os.str();
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

SolveReport solve_constant_F(const MetricField& g, double t, const SolveOptions& options) {
    return solve_constant_F(ModifiedLaplacian::for_metric(g, t), options);
}

double constant_F_defect(const MetricField& g, const ScalarField& u, double t) {
    const ScalarField f = scalar_weyl(conformal_metric(g, u), t);
    double d = 0.0;
    for (std::size_t p = 0; p < f.points(); ++p) d = std::max(d, std::abs(f.at(0, p) + 1.0));
    return d;
}

}  // namespace swc
