#pragma once

#include "swc/grid/chart.hpp"

#include <array>
#include <span>

/// Pointwise multilinear algebra on one tangent space.
///
/// Matrices are dense kMaxDim x kMaxDim row-major arrays of which the leading
/// n x n block is used. Riemann-type tensors use the deduplicated slot layout
/// of RiemannIndex.
namespace swc::tensor {

using Mat = std::array<double, kMaxDim * kMaxDim>;
using Vec = std::array<double, kMaxDim>;
/// Up to 120 independent slots (n = 6).
using PointRiem = std::array<double, 120>;

inline double& at(Mat& m, int i, int j) {
    return m[i * kMaxDim + j];
}
inline double at(const Mat& m, int i, int j) {
    return m[i * kMaxDim + j];
}

/// Unpacks lexicographic (i <= j) storage into a full symmetric matrix.
Mat unpack_sym(int n, std::span<const double> sym);

/// g_ab, g^ab and det g at one point.
struct PointMetric {
    int n = 0;
    Mat g{};
    Mat inv{};
    double det = 0.0;
};

/// Cholesky-based inverse and determinant. Returns false if `a` is not SPD.
bool spd_inverse(int n, const Mat& a, Mat& inv, double& det);

/// Determinant by partial-pivot LU; independent of the Cholesky path.
double lu_determinant(int n, Mat a);

/// Throws InputError when not SPD.
PointMetric make_point_metric(int n, const Mat& g);

/// (A o B)_ijkl = A_ik B_jl + A_jl B_ik - A_il B_jk - A_jk B_il.
PointRiem kulkarni_nomizu(int n, const Mat& a, const Mat& b);

/// Squared norm T_ijkl T^ijkl with indices raised by `inv`.
double riemann_norm_sq(int n, const PointRiem& t, const Mat& inv);
double riemann_norm(int n, const PointRiem& t, const Mat& inv);

/// Component T_abcd of a deduplicated tensor.
double component(int n, const PointRiem& t, int a, int b, int c, int d);

/// Expands to a dense n^4 array indexed ((a*n + b)*n + c)*n + d.
std::array<double, kMaxDim * kMaxDim * kMaxDim * kMaxDim> to_dense(int n, const PointRiem& t);

using Dense4 = std::array<double, kMaxDim * kMaxDim * kMaxDim * kMaxDim>;
using Frame = std::array<Vec, kMaxDim>;

/// Orthonormal frame of the Euclidean inner product with e_0 = u (|u| = 1),
/// completed by Gram-Schmidt on the standard basis.
Frame complete_frame(int n, const Vec& u);

/// Dense components T(e_a, e_b, e_c, e_d), indexed like to_dense.
Dense4 frame_components(int n, const PointRiem& t, const Frame& e);

/// Largest residual of pair antisymmetry, pair exchange and first Bianchi on a dense n^4 tensor.
double symmetry_violation(int n, std::span<const double> dense);

/// Largest |T_abcd + T_acdb + T_adbc| over distinct indices.
double bianchi_violation(int n, const PointRiem& t);

/// Removes the totally antisymmetric part, leaving an algebraic curvature tensor.
void project_bianchi(int n, PointRiem& t);

}  // namespace swc::tensor
