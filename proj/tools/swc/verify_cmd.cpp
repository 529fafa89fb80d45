#include "commands.hpp"
#include "report.hpp"

#include "swc/conformal/conformal.hpp"
#include "swc/grid/wfld.hpp"

#include <fstream>
#include <iostream>
#include <random>

namespace swc::cli {

namespace {

// Checks whose residual is a discretization error, with the key of their scale.
constexpr std::array<std::pair<const char*, const char*>, 6> kConvergent = {{
    {"weyl_identity", "error_scale"},
    {"scalar_closed_form", "scale"},
    {"conformal_scalar", "scale"},
    {"conformal_weyl_psi", "scale"},
    {"covariance", "scale"},
    {"e_conformal", "scale"},
}};

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
    double d = 0.0;
    for (std::size_t p = 0; p < a.points(); ++p) d = std::max(d, std::abs(a.at(0, p) - b.at(0, p)));
    return d;
}

// Band-limited scalar with the same continuum function at every resolution.
ScalarField smooth_scalar(const Chart& chart, double base, double amp, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> kd(-1, 1);
    std::uniform_real_distribution<double> ud(-1.0, 1.0), ph(0.0, 2.0 * M_PI);
    const int n = chart.dim();
    std::vector<std::array<int, kMaxDim>> ks;
    std::vector<double> amps, phases;
    while (ks.size() < 3) {
        std::array<int, kMaxDim> k{};
        bool zero = true;
        for (int a = 0; a < n; ++a) zero = (k[a] = kd(rng)) == 0 && zero;
        if (zero) continue;
        ks.push_back(k);
        amps.push_back(amp * ud(rng));
        phases.push_back(ph(rng));
    }
    return sample(chart, [&](const std::array<double, kMaxDim>& x) {
        double v = base;
        for (std::size_t m = 0; m < ks.size(); ++m) {
            double arg = phases[m];
            for (int a = 0; a < n; ++a) arg += 2.0 * M_PI * ks[m][a] * x[a] / chart.length(a);
            v += amps[m] * std::cos(arg);
        }
        return v;
    });
}

}  // namespace

json identity_suite(const MetricField& g, const ScalarField& f, const ScalarField& psi, double k, double t,
                    const WeylErrorOptions& options) {
    auto base = std::make_shared<const CurvatureBundle>(curvature(g));
    const DeformationBundle d = deform(base, f);
    const CurvatureBundle direct = curvature(d.deformed_metric());
    const auto wi = weyl_identity_residual(d, direct.weyl, options);
    const ScalarField closed = deformed_scalar_closed_form(d);
    const auto alg = deformation_algebra_residual(d);
    const auto div = scalar_divergence_identity(d);
    const ConformalFormulaReport conf = conformal_formula_check(*base, psi);
    const auto ec = e_conformal_invariance_residual(g, psi, k, options);
    const double cov = covariance_residual(g, u_from_psi(psi), f, t);
    return json{
        {"curvature_scale", std::max(base->riemann.max_abs(), direct.riemann.max_abs())},
        {"weyl_identity", {{"residual", wi.residual}, {"error_scale", wi.error_scale}}},
        {"scalar_closed_form", {{"residual", max_abs_difference(closed, direct.scalar)}, {"scale", direct.scalar.max_abs()}}},
        {"conformal_scalar", {{"residual", conf.scalar}, {"scale", base->scalar.max_abs()}}},
        {"conformal_weyl_psi", {{"residual", conf.weyl_psi}, {"scale", conf.weyl_scale}, {"inverse_law_residual", conf.weyl_inverse}, {"convention", conf.weyl_convention}}},
        {"covariance", {{"residual", cov}, {"scale", base->scalar.max_abs()}}},
        {"e_conformal", {{"residual", ec.residual_psi}, {"scale", ec.scale}, {"inverse_law_residual", ec.residual_inverse}}},
        {"deformation_algebra", {{"determinant", alg.determinant}, {"inverse", alg.inverse}}},
        {"divergence_identity", {{"integral", div.integral}, {"scale", div.scale}}},
    };
}

json suite_orders(const json& coarse, const json& fine) {
    json orders = json::object();
    bool pass = true;
    for (const auto& [name, scale_key] : kConvergent) {
        // Tensors that vanish identically (Weyl parts in 3D) sit at rounding
        // level relative to the curvature, not to their own size.
        const double floor =
            1e-10 * std::max(fine[name][scale_key].get<double>(), fine["curvature_scale"].get<double>());
        const json o = convergence_order(coarse[name]["residual"], fine[name]["residual"], 2.0, floor);
        pass = pass && (o.is_null() || o.get<double>() >= 3.0);
        orders[name] = o;
    }
    const bool algebra = fine["deformation_algebra"]["determinant"].get<double>() < 1e-10 &&
                         fine["deformation_algebra"]["inverse"].get<double>() < 1e-10;
    const bool divergence =
        fine["divergence_identity"]["integral"].get<double>() < 1e-8 * fine["divergence_identity"]["scale"].get<double>();
    return json{{"orders", orders}, {"algebra_ok", algebra}, {"divergence_ok", divergence},
                {"pass", pass && algebra && divergence}};
}

int run_verify(const RunConfig& cfg) {
    Stopwatch sw;
    const WeylErrorOptions options =
        cfg.mutate_block >= 0 ? WeylErrorOptions::flipped(cfg.mutate_block) : WeylErrorOptions{};
    json runs = json::array();
    std::ofstream csv(cfg.out / "convergence.csv");
    csv << "check,resolution,residual\n";
    for (int N : {cfg.resolution, 2 * cfg.resolution}) {
        const MetricField g = build_metric(cfg, N);
        const ScalarField f = smooth_scalar(g.chart(), 0.0, cfg.f_amplitude, cfg.seed * 7919 + 1);
        const ScalarField psi = smooth_scalar(g.chart(), 1.0, cfg.psi_amplitude, cfg.seed * 7919 + 2);
        const std::string tag = std::to_string(N);
        wfld::write(cfg.out / ("metric_" + tag + ".wfld"), g.metric());
        wfld::write(cfg.out / ("f_" + tag + ".wfld"), f);
        wfld::write(cfg.out / ("psi_" + tag + ".wfld"), psi);
        const json s = identity_suite(g, f, psi, cfg.k, cfg.t, options);
        for (const auto& [name, _] : kConvergent) csv << name << ',' << N << ',' << s[name]["residual"].dump() << '\n';
        runs.push_back(json{{"resolution", N}, {"suite", s}});
        sw.lap("suite_" + tag);
    }
    const json verdict = suite_orders(runs[0]["suite"], runs[1]["suite"]);
    write_json(cfg.out / "report.json", json{{"config", to_json(cfg)}, {"runs", runs}, {"result", verdict}});
    sw.write(cfg.out);
    for (const auto& [name, o] : verdict["orders"].items())
        std::cout << name << ": order " << (o.is_null() ? std::string("rounding level") : o.dump()) << '\n';
    const bool pass = verdict["pass"].get<bool>();
    std::cout << (pass ? "all identities converge at order >= 3" : "identity suite FAILED") << '\n';
    return pass ? kSuccess : kVerificationFailure;
}

}  // namespace swc::cli
