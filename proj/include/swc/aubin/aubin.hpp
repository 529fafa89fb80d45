#pragma once

#include "swc/curvature/curvature.hpp"
#include "swc/tensor/point.hpp"

#include <array>
#include <memory>
#include <string_view>

namespace swc {

/// The deformation g' = g + df (x) df and the ingredients of its closed forms.
struct DeformationBundle {
    std::shared_ptr<const CurvatureBundle> base;
    ScalarField f;
    CovectorField df;          // f_i
    CovectorField df_up;       // f^i
    Sym2Field hessian;         // f_ij, covariant in g
    ScalarField laplacian;     // Delta f
    ScalarField w;             // 1 + |grad f|^2
    Sym2Field deformed;        // g'_ij = g_ij + f_i f_j
    Sym2Field deformed_inverse;  // g^ij - f^i f^j / w

    const MetricField& metric() const { return base->metric; }
    /// g' as a validated metric field (direct inversion, used by oracles).
    MetricField deformed_metric() const;
};

DeformationBundle deform(std::shared_ptr<const CurvatureBundle> base, const ScalarField& f);
DeformationBundle deform(const MetricField& g, const ScalarField& f);

/// Relative residuals of det g' = w det g (against an LU determinant) and of
/// the closed-form inverse (against Cholesky inversion).
struct DeformationAlgebraReport {
    double determinant = 0.0;
    double inverse = 0.0;
};
DeformationAlgebraReport deformation_algebra_residual(const DeformationBundle& b);

/// R' = R - 2 Ric(f,f)/w + ((Delta f)^2 - |Hess f|^2)/w
///      - 2 ((Delta f) Hess(f,f) - |Hess f . grad f|^2) / w^2.
ScalarField deformed_scalar_closed_form(const DeformationBundle& b);

inline constexpr int kEBlockCount = 12;

/// One entry per printed term of E(f):
///  0 hessian_square     (f_ik f_jt - f_it f_jk)/w
///  1 ricci_gradient     (R_ik f_j f_t - ...)/(n-2)
///  2 scalar_gradient    R (g_ik f_j f_t - ...)/((n-1)(n-2))
///  3 riemann_gradient   f^p f^q [R_ipkq (g_jt + f_j f_t) - ...]/(w(n-2))
///  4 ricci_contracted   -2 Ric(f,f) [gg + g f f]/(w(n-1)(n-2))
///  5 hessian_trace_ik   -[(Delta f) f_ik - f_ip f^p_k](g_jt + f_j f_t) ... /(w(n-2))
///  6 hessian_trace_jt   same with (ik) <-> (jt)
///  7 laplacian_square   ((Delta f)^2 - |Hess f|^2)[gg + g f f]/(w(n-1)(n-2))
///  8 hessian_gradient_ik f^p f^q (f_ik f_pq - f_ip f_kq)(g_jt + f_j f_t) ... /(w^2(n-2))
///  9 hessian_gradient_jt same with (ik) <-> (jt)
/// 10 cubic_metric       -2 [(Delta f) Hess(f,f) - |Hess f . grad f|^2] gg/(w^2(n-1)(n-2))
/// 11 cubic_gradient     same with g f f in place of gg
std::string_view eblock_name(int block);

/// Signs applied to the printed blocks. The default negates block 1: with the
/// printed sign W + E(f) misses the Weyl tensor of g' by a first-order Ricci
/// term (checked symbolically and by the grid oracle).
struct WeylErrorOptions {
    std::array<double, kEBlockCount> signs{1, -1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};

    static WeylErrorOptions as_printed();
    /// Default signs with one block negated (mutation testing).
    static WeylErrorOptions flipped(int block);
};

/// Pointwise inputs of E(f).
struct EPointInput {
    int n = 0;
    tensor::Mat g{};
    tensor::Mat inv{};
    tensor::Vec df{};
    tensor::Mat hessian{};
    tensor::Mat ricci{};
    double scalar = 0.0;
    tensor::PointRiem riemann{};
};

/// The twelve printed blocks at one point, without any sign table applied.
std::array<tensor::PointRiem, kEBlockCount> weyl_error_blocks(const EPointInput& in);

/// E(f) with the given block signs.
Riem4Field weyl_error(const DeformationBundle& b, const WeylErrorOptions& options = {});

/// max |W_g + E_g(f) - W_g'| against the directly computed Weyl tensor of g'.
struct WeylIdentityReport {
    double residual = 0.0;
    double error_scale = 0.0;  // max |E_g(f)|
};
WeylIdentityReport weyl_identity_residual(const DeformationBundle& b, const Riem4Field& deformed_weyl,
                                          const WeylErrorOptions& options = {});
WeylIdentityReport weyl_identity_residual(const DeformationBundle& b, const WeylErrorOptions& options = {});

struct DivergenceIdentityReport {
    double pointwise = 0.0;        // max |R'_div - R'_closed|
    double integral = 0.0;         // |int R'_div - int R + int Ric(f,f)/w|
    double integral_closed = 0.0;  // same with the closed-form R'
    double scale = 0.0;            // int |R| + int |Ric(f,f)|/w
};
/// R'_div = R - Ric(f,f)/w + nabla^i((Delta f f_i - f_ij f^j)/w).
DivergenceIdentityReport scalar_divergence_identity(const DeformationBundle& b);

/// |T| in g_bar = g + d(k phi) (x) d(k phi), raised with g^ij - k^2 phi^i phi^j / (1 + k^2 |d phi|^2).
ScalarField deformed_norm(const Riem4Field& t, const MetricField& g, const ScalarField& phi, double k);
ScalarField deformed_norm(const Riem4Field& t, const MetricField& g, const CovectorField& dphi, double k);

/// Same norm from the three-block radial formula: in an orthonormal frame
/// (e_rho, e_i) of a flat metric, |T|^2 = sum T_ijkt^2 + 4c sum T_i rho k t^2
/// + 4c^2 sum T_i rho k rho^2 with c = 1/(1 + k^2 phi_rho^2). Requires g = delta
/// wherever d phi != 0 and d phi radial about `center`; where d phi = 0 the
/// result is |T|_g.
ScalarField deformed_norm_radial(const Riem4Field& t, const MetricField& g, const CovectorField& dphi, double k,
                                 const std::array<double, kMaxDim>& center);

struct EConformalReport {
    double residual_psi = 0.0;      // max |E_g'(k psi) - psi E_g(2k sqrt psi)|
    double residual_inverse = 0.0;  // max |E_g'(k psi) - E_g(2k sqrt psi)/psi|
    double scale = 0.0;             // max |E_g'(k psi)|
};
EConformalReport e_conformal_invariance_residual(const MetricField& g, const ScalarField& psi, double k,
                                                 const WeylErrorOptions& options = {});

struct LemmaA2Terms {
    double curvature = 0.0;  // int (R + t |W_g|_phi) dV_g
    double error = 0.0;      // t int |E_g(phi)|_phi dV_g
    double ricci = 0.0;      // -int Ric(phi, phi)/w dV_g
    double hessian = 0.0;    // (n-1)/(n-2) int [|Hess phi . grad phi|^2/w^2 - Hess(phi,phi)^2/w^3] dV_g
    double total() const { return curvature + error + ricci + hessian; }
};

/// Throws PreconditionError for t <= 0.
LemmaA2Terms lemma_a2_terms(std::shared_ptr<const CurvatureBundle> base, const ScalarField& phi, double t,
                            const WeylErrorOptions& options = {});
double lemma_a2_lhs(const MetricField& g, const ScalarField& phi, double t);

}  // namespace swc
