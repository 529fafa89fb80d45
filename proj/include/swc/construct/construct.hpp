#pragma once

#include "swc/aubin/aubin.hpp"
#include "swc/construct/bump.hpp"
#include "swc/construct/presets.hpp"
#include "swc/yamabe/yamabe.hpp"

#include <optional>
#include <string>
#include <vector>

namespace swc {

/// h balls of radius r, deformation strength k.
struct BallConfig {
    std::vector<Point> centers;
    double radius = 0.0;
    double k = 1.0;
};

/// f = y(rho/r) on each ball, 1 elsewhere; psi = f^{2/(n-2)}. The radial
/// derivatives are exact (from y', y''); f and psi are sampled values.
struct RadialFields {
    ScalarField f;
    ScalarField psi;
    ScalarField f_rho, f_rhorho;
    ScalarField psi_rho, psi_rhorho;
};

/// Throws InputError unless g = delta exactly on B_{1.1 r} of every center and
/// the balls are pairwise disjoint.
RadialFields radial_fields(const MetricField& g, const BallConfig& config, const BumpProfile& profile);

/// Integrals of the corrected single-metric display of Phi_M, one per block.
struct PhiTerms {
    double curvature = 0.0;  // int R f
    double weyl = 0.0;       // t int f |W|_gbar
    double ricci = 0.0;      // -int Ric(grad psi, grad psi) f / D
    double error = 0.0;      // t int f |E_g(2k sqrt psi)|_gbar
    double hessian_f = 0.0;  // int f_ij psi^i psi^j / D
    double gradient = 0.0;   // (n-1)/(2k^2) int f_i psi^i / D
    double laplacian = 0.0;  // -1/((n-2) k^2) int psi Delta f / D
    double hessian_psi = 0.0;  // (n-1)/(n-2) int f [|Hess psi . grad psi|^2/D^2 - Hess psi(grad psi, grad psi)^2/D^3]
    double cubic = 0.0;      // (n-1)/((n-2) k^2) int f (|grad psi|^6/4 - |grad psi|^2 Hess psi(..) psi)/(psi D^3)
    double total() const {
        return curvature + weyl + ricci + error + hessian_f + gradient + laplacian + hessian_psi + cubic;
    }
};

struct PhiResult {
    double value = 0.0;     // single-metric display on g
    double path_a = 0.0;    // lemma a2 on psi g with phi = k psi
    double residual = 0.0;  // |value - path_a|
    double printed = 0.0;   // display with the printed weights (diagnostic)
    PhiTerms terms;
    LemmaA2Terms terms_a;
};

PhiResult phi_functional(std::shared_ptr<const CurvatureBundle> base, double t, const BallConfig& config,
                         const BumpProfile& profile);
PhiResult phi_functional(const MetricField& g, double t, const BallConfig& config, const BumpProfile& profile);
/// Same functional for an arbitrary positive psi (f = psi^{(n-2)/2}).
PhiResult phi_from_psi(std::shared_ptr<const CurvatureBundle> base, double t, const ScalarField& psi, double k);

/// g'' = psi g + d(k psi) (x) d(k psi) and u = (1 + |d(k psi)|^2_{psi g})^{-1/4}.
struct DeformedConformal {
    MetricField metric;
    ScalarField u;
};
DeformedConformal deformed_conformal_metric(const MetricField& g, const BallConfig& config,
                                            const BumpProfile& profile);

/// lemma_a1_lhs(g'', t, u) for the pair above.
double lemma_a1_bridge(const MetricField& g, double t, const BallConfig& config, const BumpProfile& profile);

/// Frame components of E_g(k eta), eta = 2 sqrt(psi), in a flat ball, in the
/// orthonormal frame (e_rho, tangential). Rotationally symmetric deformations
/// of flat space are conformally flat, so the exact E vanishes; the printed
/// simplified displays are evaluated alongside.
struct RadialErrorReport {
    double one_radial = 0.0;     // max |E_i rho k t|
    double tangential = 0.0;     // max |E_ijkt|
    double radial_pair = 0.0;    // max |E_i rho k rho|
    double scale = 0.0;          // max slot magnitude of E_g(k eta)
    double printed_tangential = 0.0;  // max |printed E_ijkt - computed|
    double printed_radial = 0.0;      // max |printed E_i rho k rho - computed|
    std::size_t points = 0;
};
RadialErrorReport radial_error_components(const MetricField& g, const Point& center, double r, double k,
                                          const BumpProfile& profile);

struct SearchOptions {
    std::vector<double> radii;  // absolute; empty = {L/16, L/12, L/8, L/6}
    std::vector<double> ks{1, 2, 4, 8, 16};
    int max_balls = 4;
    double delta = 0.1;
    BumpFamily family = BumpFamily::steep;
};

struct LandscapeCell {
    double radius = 0.0;
    double k = 0.0;
    int balls = 0;
    bool feasible = false;
    double phi = 0.0;
    double phi_a = 0.0;
    std::string note;
};

struct SearchResult {
    bool found = false;
    BallConfig config;
    std::vector<LandscapeCell> landscape;
    std::string message;
};

/// make_bump for the steep family, the plain profile otherwise.
BumpProfile search_profile(const SearchOptions& options, int n);

/// Evaluates Phi_M on the (r, k) grid with the largest feasible ball count per
/// radius; `found` when both paths are negative for some cell (first in
/// increasing r, then k).
SearchResult search_parameters(const MetricField& g, double t, const SearchOptions& options = {});

enum class ConstructStatus { success, search_failure, shortcut_failure, verification_failure };
std::string_view construct_status_name(ConstructStatus s);

struct ConstructOptions {
    SearchOptions search{};
    SolveOptions solve{};
    double tolerance = 5e-3;  // on max |F + 1| of the final metric
};

struct ConstructionOutcome {
    ConstructStatus status = ConstructStatus::search_failure;
    bool shortcut = false;
    double lambda = 0.0;
    Verdict verdict = Verdict::zero;
    std::optional<SearchResult> search;
    std::optional<double> lemma_a1;
    std::optional<SolveReport> solve;
    std::optional<MetricField> solved_metric;  // the input metric, or g'' after a successful search
    std::optional<MetricField> final_metric;
    double defect = 0.0;  // max |F + 1| recomputed on the final metric
    std::string message;
};

ConstructionOutcome construct_constant_F(const MetricField& g0, double t, const ConstructOptions& options = {});

struct PinchingReport {
    bool negative_scalar = false;  // R < 0 everywhere
    bool pinched = false;          // |W|^2 < eps R^2 everywhere
    double max_scalar = 0.0;
    double max_pinching = 0.0;     // max (|W|^2 - eps R^2)
    std::size_t worst_scalar_point = 0;
    std::size_t worst_pinching_point = 0;
};
PinchingReport pinching_report(const MetricField& g, double eps);

}  // namespace swc
