#include "commands.hpp"
#include "report.hpp"

#include "swc/grid/wfld.hpp"

#include <fstream>
#include <iostream>

namespace swc::cli {

json pinching_json(const PinchingReport& r) {
    return json{{"negative_scalar", r.negative_scalar},
                {"pinched", r.pinched},
                {"max_scalar", r.max_scalar},
                {"max_pinching", r.max_pinching},
                {"worst_scalar_point", r.worst_scalar_point},
                {"worst_pinching_point", r.worst_pinching_point}};
}

json landscape_json(const std::vector<LandscapeCell>& cells) {
    json out = json::array();
    for (const auto& c : cells)
        out.push_back(json{{"radius", c.radius},
                           {"k", c.k},
                           {"balls", c.balls},
                           {"feasible", c.feasible},
                           {"phi", c.phi},
                           {"phi_a", c.phi_a},
                           {"note", c.note}});
    return out;
}

json final_numbers(const MetricField& solved, const ScalarField& u, const MetricField& final_metric, double t) {
    const ScalarField F = scalar_weyl(final_metric, t);
    double defect = 0.0;
    for (double v : F.component(0)) defect = std::max(defect, std::abs(v + 1.0));
    return json{{"solve_residual", constant_F_residual(ModifiedLaplacian::for_metric(solved, t), u)},
                {"defect", defect},
                {"F_final", field_summary(F, final_metric)},
                {"u", field_summary(u, solved)},
                {"pinching", pinching_json(pinching_report(final_metric, 1.0))}};
}

namespace {

void write_landscape(const std::filesystem::path& path, const std::vector<LandscapeCell>& cells) {
    std::ofstream csv(path);
    csv << "radius,k,balls,feasible,phi,phi_a,note\n";
    csv.precision(17);
    for (const auto& c : cells)
        csv << c.radius << ',' << c.k << ',' << c.balls << ',' << (c.feasible ? 1 : 0) << ',' << c.phi << ','
            << c.phi_a << ",\"" << c.note << "\"\n";
}

json solve_json(const SolveReport& s) {
    return json{{"converged", s.converged},
                {"residual", s.residual},
                {"monotone_iterations", s.monotone_iterations},
                {"newton_iterations", s.newton_iterations},
                {"lambda", s.lambda},
                {"start", start_name(s.start)},
                {"history", s.history},
                {"message", s.message}};
}

}  // namespace

int run_construct(const RunConfig& cfg) {
    Stopwatch sw;
    const MetricField g0 = build_metric(cfg, cfg.resolution);
    wfld::write(cfg.out / "metric.wfld", g0.metric());
    ConstructOptions options;
    options.search = search_options(cfg, g0.chart());
    options.tolerance = cfg.tolerance;
    const ConstructionOutcome out = construct_constant_F(g0, cfg.t, options);
    sw.lap("construct");

    json report{{"config", to_json(cfg)},
                {"status", construct_status_name(out.status)},
                {"shortcut", out.shortcut},
                {"verdict", verdict_name(out.verdict)},
                {"message", out.message}};
    json numbers{{"lambda", out.lambda}};
    if (out.search) {
        write_landscape(cfg.out / "landscape.csv", out.search->landscape);
        numbers["landscape"] = landscape_json(out.search->landscape);
        report["search_found"] = out.search->found;
    }
    if (out.lemma_a1) numbers["lemma_a1"] = *out.lemma_a1;
    if (out.solve) report["solve"] = solve_json(*out.solve);
    if (out.solved_metric && out.solve && out.final_metric) {
        wfld::write(cfg.out / "solved_metric.wfld", out.solved_metric->metric());
        wfld::write(cfg.out / "u.wfld", out.solve->u);
        wfld::write(cfg.out / "final_metric.wfld", out.final_metric->metric());
        wfld::write(cfg.out / "F_final.wfld", scalar_weyl(*out.final_metric, cfg.t));
        numbers["final"] = final_numbers(*out.solved_metric, out.solve->u, *out.final_metric, cfg.t);
        numbers["final"]["solve_residual_reported"] = out.solve->residual;
        numbers["final"]["defect_reported"] = out.defect;
    }
    // The bridge pair (g'', u) of a successful search.
    if (out.lemma_a1) {
        const BumpProfile profile = search_profile(options.search, g0.dim());
        const DeformedConformal dc = deformed_conformal_metric(g0, out.search->config, profile);
        wfld::write(cfg.out / "bridge_metric.wfld", dc.metric.metric());
        wfld::write(cfg.out / "bridge_u.wfld", dc.u);
    }
    report["numbers"] = numbers;
    sw.lap("report");
    write_json(cfg.out / "report.json", report);
    sw.write(cfg.out);

    std::cout << "status: " << construct_status_name(out.status) << " (" << out.message << ")\n";
    if (out.final_metric) std::cout << "max |F + 1| on the final metric: " << out.defect << '\n';
    switch (out.status) {
        case ConstructStatus::success: return kSuccess;
        case ConstructStatus::verification_failure: return kVerificationFailure;
        default: return kSearchFailure;
    }
}

}  // namespace swc::cli
