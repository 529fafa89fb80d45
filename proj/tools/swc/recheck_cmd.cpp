#include "commands.hpp"
#include "report.hpp"

#include "swc/error.hpp"
#include "swc/grid/wfld.hpp"
#include "swc/tensor/fields.hpp"

#include <cstring>
#include <iostream>

namespace swc::cli {

namespace {

MetricField read_metric(const std::filesystem::path& path) {
    return MetricField(wfld::read<FieldKind::sym2>(path));
}

template <FieldKind K>
bool same_bits(const TensorField<K>& a, const TensorField<K>& b) {
    return a.chart() == b.chart() && std::memcmp(a.raw().data(), b.raw().data(), a.raw().size_bytes()) == 0;
}

void recheck_curvature(const std::filesystem::path& dir, const RunConfig& cfg, const json& report, ClaimList& claims) {
    const MetricField g = read_metric(dir / "metric.wfld");
    claims.add_tree("curvature", report["curvature"], curvature_numbers(g, cfg.t));
    const CurvatureBundle b = curvature(g);
    claims.require("R.wfld matches the metric", same_bits(wfld::read<FieldKind::scalar>(dir / "R.wfld"), b.scalar));
    claims.require("W_norm.wfld matches the metric",
                   same_bits(wfld::read<FieldKind::scalar>(dir / "W_norm.wfld"), riemann_norm(b.weyl, g)));
    claims.require("F.wfld matches the metric",
                   same_bits(wfld::read<FieldKind::scalar>(dir / "F.wfld"), scalar_weyl(b, cfg.t)));
}

void recheck_verify(const std::filesystem::path& dir, const RunConfig& cfg, const json& report, ClaimList& claims) {
    const WeylErrorOptions options =
        cfg.mutate_block >= 0 ? WeylErrorOptions::flipped(cfg.mutate_block) : WeylErrorOptions{};
    json suites = json::array();
    for (const auto& run : report["runs"]) {
        const std::string tag = std::to_string(run["resolution"].get<int>());
        const MetricField g = read_metric(dir / ("metric_" + tag + ".wfld"));
        const ScalarField f = wfld::read<FieldKind::scalar>(dir / ("f_" + tag + ".wfld"));
        const ScalarField psi = wfld::read<FieldKind::scalar>(dir / ("psi_" + tag + ".wfld"));
        const json s = identity_suite(g, f, psi, cfg.k, cfg.t, options);
        claims.add_tree("suite_" + tag, run["suite"], s);
        suites.push_back(s);
    }
    if (suites.size() == 2) claims.add_tree("result", report["result"], suite_orders(suites[0], suites[1]));
    else claims.require("two resolutions reported", false);
}

void recheck_construct(const std::filesystem::path& dir, const RunConfig& cfg, const json& report,
                       ClaimList& claims) {
    const MetricField g0 = read_metric(dir / "metric.wfld");
    const json& numbers = report["numbers"];
    claims.add("lambda", numbers["lambda"], json(first_eigenvalue(g0, cfg.t).lambda));
    if (numbers.contains("landscape")) {
        const SearchResult s = search_parameters(g0, cfg.t, search_options(cfg, g0.chart()));
        claims.add_tree("landscape", numbers["landscape"], landscape_json(s.landscape));
    }
    if (numbers.contains("lemma_a1")) {
        const MetricField bridge = read_metric(dir / "bridge_metric.wfld");
        const ScalarField u = wfld::read<FieldKind::scalar>(dir / "bridge_u.wfld");
        claims.add("lemma_a1", numbers["lemma_a1"], json(lemma_a1_lhs(bridge, cfg.t, u)));
    }
    if (numbers.contains("final")) {
        const MetricField solved = read_metric(dir / "solved_metric.wfld");
        const ScalarField u = wfld::read<FieldKind::scalar>(dir / "u.wfld");
        const MetricField final_metric = read_metric(dir / "final_metric.wfld");
        claims.require("final metric is u^{4/(n-2)} times the solved metric",
                       same_bits(final_metric.metric(), conformal_metric(solved, u).metric()));
        json recomputed = final_numbers(solved, u, final_metric, cfg.t);
        const json& reported = numbers["final"];
        claims.add("final.solve_residual_reported", reported["solve_residual_reported"], recomputed["solve_residual"]);
        claims.add("final.defect_reported", reported["defect_reported"], recomputed["defect"]);
        recomputed["solve_residual_reported"] = reported["solve_residual_reported"];
        recomputed["defect_reported"] = reported["defect_reported"];
        claims.add_tree("final", reported, recomputed);
        claims.require("F_final.wfld matches the final metric",
                       same_bits(wfld::read<FieldKind::scalar>(dir / "F_final.wfld"), scalar_weyl(final_metric, cfg.t)));
    }
}

}  // namespace

int run_recheck(const RunConfig& cfg) {
    const json report = read_json(cfg.dir / "report.json");
    const RunConfig run = from_json(report["config"]);
    ClaimList claims(1e-12);
    if (run.command == "curvature") recheck_curvature(cfg.dir, run, report, claims);
    else if (run.command == "verify") recheck_verify(cfg.dir, run, report, claims);
    else if (run.command == "construct") recheck_construct(cfg.dir, run, report, claims);
    else throw InputError("report.json names no recheckable command: " + run.command);
    const json result = claims.to_json();
    write_json(cfg.dir / "recheck.json", result);
    std::size_t failed = 0;
    for (const auto& c : result["claims"]) failed += !c["ok"].get<bool>();
    std::cout << result["claims"].size() << " claims rechecked, " << failed << " mismatched\n";
    return claims.ok() ? kSuccess : kVerificationFailure;
}

}  // namespace swc::cli
