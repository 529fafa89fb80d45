#pragma once

#include "swc/grid/metric.hpp"

#include <utility>

namespace swc {

/// Curvature of a metric field, all tensors in (0,k) form except Gamma.
struct CurvatureBundle {
    MetricField metric;
    ChristoffelField christoffel;  // Gamma^c_ab
    Riem4Field riemann;            // Rm_abcd, Rm_ijij > 0 on spheres
    Sym2Field ricci;               // Ric_bd = g^ac Rm_abcd
    ScalarField scalar;            // R = g^bd Ric_bd
    Riem4Field weyl;
};

struct RiemannOptions {
    /// Remove the totally antisymmetric part left by discretization.
    bool project = true;
};

/// Gamma^c_ab = 1/2 g^cd (d_a g_db + d_b g_da - d_d g_ab).
ChristoffelField christoffel(const MetricField& g);

/// Rm_abcd = 1/2 (d_a d_d g_bc + d_b d_c g_ad - d_a d_c g_bd - d_b d_d g_ac)
///           + g^ef (Gamma_{e,bc} Gamma_{f,ad} - Gamma_{e,ac} Gamma_{f,bd}),
/// with Gamma_{e,bc} the lowered symbols and mixed second derivatives composed
/// from first-derivative stencils. Second derivatives are streamed one axis
/// pair at a time to bound memory.
Riem4Field riemann(const MetricField& g, RiemannOptions options = {});

std::pair<Sym2Field, ScalarField> ricci_scalar(const Riem4Field& riem, const MetricField& g);

/// W = Rm - Ric o g / (n-2) + R g o g / (2(n-1)(n-2)).
Riem4Field weyl(const Riem4Field& riem, const Sym2Field& ricci, const ScalarField& scalar,
                const MetricField& g);

/// Rm rebuilt from (W, Ric, R, g).
Riem4Field recompose_riemann(const Riem4Field& weyl, const Sym2Field& ricci, const ScalarField& scalar,
                             const MetricField& g);

CurvatureBundle curvature(const MetricField& g);

/// max |recompose(W, Ric, R, g) - Rm| over points and slots.
double decomposition_residual(const CurvatureBundle& b);
double decomposition_residual(const MetricField& g);

/// max |g^ia W_iakb| over points and (k, b).
double weyl_trace_residual(const Riem4Field& weyl, const MetricField& g);

/// nabla^a (Ric_ab - R g_ab / 2), zero for exact curvature (contracted second Bianchi).
CovectorField einstein_divergence(const CurvatureBundle& b);

}  // namespace swc

namespace swc {

/// f_ab = d_a d_b f - Gamma^c_ab d_c f, second derivatives composed from first-derivative stencils.
Sym2Field covariant_hessian(const ScalarField& f, const ChristoffelField& gamma);

/// g^ab f_ab.
ScalarField trace(const Sym2Field& t, const MetricField& g);

}  // namespace swc
