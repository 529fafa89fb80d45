#include "swc/simd/kernels.hpp"

#include <cmath>

namespace swc::simd::scalar {

namespace {

inline std::size_t wrap(std::ptrdiff_t i, std::size_t extent) {
    const auto e = static_cast<std::ptrdiff_t>(extent);
    return static_cast<std::size_t>(((i % e) + e) % e);
}

}  // namespace

void stencil(const double* in, double* out, const AxisLayout& layout, const Stencil4& s) {
    const std::size_t n = layout.extent;
    const std::size_t inner = layout.inner;
    const double w0 = s.weights[0], w1 = s.weights[1], w2 = s.weights[2], w3 = s.weights[3];
    for (std::size_t o = 0; o < layout.outer; ++o) {
        const double* base = in + o * n * inner;
        double* dst = out + o * n * inner;
        for (std::size_t i = 0; i < n; ++i) {
            const auto ii = static_cast<std::ptrdiff_t>(i);
            const double* p0 = base + wrap(ii + s.offsets[0], n) * inner;
            const double* p1 = base + wrap(ii + s.offsets[1], n) * inner;
            const double* p2 = base + wrap(ii + s.offsets[2], n) * inner;
            const double* p3 = base + wrap(ii + s.offsets[3], n) * inner;
            double* q = dst + i * inner;
            for (std::size_t j = 0; j < inner; ++j) {
                double r = w0 * p0[j];
                r = r + w1 * p1[j];
                r = r + w2 * p2[j];
                r = r + w3 * p3[j];
                q[j] = r;
            }
        }
    }
}

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dot_weighted(const double* a, const double* b, const double* w, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i] * w[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpay(const double* x, double alpha, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + alpha * y[i];
}

double max_abs(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(a[i]));
    return m;
}

}  // namespace swc::simd::scalar
