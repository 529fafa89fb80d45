#pragma once

#include <array>
#include <cstddef>
#include <string_view>

/// Hot loops of the workbench: periodic 4-tap stencils along one axis of a
/// row-major block, and the reductions used by the conjugate-gradient solver.
/// Every kernel has a portable scalar version and an AVX2 version; the public
/// entry points dispatch on the CPU at runtime.
///
/// Stencils are evaluated as ((w0*a + w1*b) + w2*c) + w3*d without fused
/// multiply-add, so the two backends agree bit-for-bit. Reductions use a
/// different summation order per backend and agree to rounding.
namespace swc::simd {

enum class Backend { scalar, avx2 };

/// Four-point stencil: out[i] = sum_k weights[k] * in[(i + offsets[k]) mod extent].
struct Stencil4 {
    std::array<int, 4> offsets{};
    std::array<double, 4> weights{};
};

/// A block viewed as outer x extent x inner with the stencil axis in the middle.
struct AxisLayout {
    std::size_t outer = 1;
    std::size_t extent = 1;
    std::size_t inner = 1;
};

namespace scalar {
void stencil(const double* in, double* out, const AxisLayout& layout, const Stencil4& s);
double dot(const double* a, const double* b, std::size_t n);
double dot_weighted(const double* a, const double* b, const double* w, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void xpay(const double* x, double alpha, double* y, std::size_t n);
double max_abs(const double* a, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool supported();
void stencil(const double* in, double* out, const AxisLayout& layout, const Stencil4& s);
double dot(const double* a, const double* b, std::size_t n);
double dot_weighted(const double* a, const double* b, const double* w, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void xpay(const double* x, double alpha, double* y, std::size_t n);
double max_abs(const double* a, std::size_t n);
}  // namespace avx2

Backend active_backend();
/// Forces a backend; throws ConfigError when the CPU lacks it.
void set_backend(Backend backend);
std::string_view backend_name(Backend backend);

void stencil(const double* in, double* out, const AxisLayout& layout, const Stencil4& s);
/// sum a[i] * b[i]
double dot(const double* a, const double* b, std::size_t n);
/// sum a[i] * b[i] * w[i]
double dot_weighted(const double* a, const double* b, const double* w, std::size_t n);
/// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);
/// y = x + alpha * y
void xpay(const double* x, double alpha, double* y, std::size_t n);
double max_abs(const double* a, std::size_t n);

}  // namespace swc::simd
