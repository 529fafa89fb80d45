#include "swc/simd/kernels.hpp"

#include <cmath>

#if defined(__x86_64__) || defined(_M_X64)
#define SWC_X86 1
#include <immintrin.h>
#endif

namespace swc::simd::avx2 {

#if SWC_X86 && defined(SWC_HAVE_AVX2)

bool supported() {
    return __builtin_cpu_supports("avx2");
}

namespace {

inline std::size_t wrap(std::ptrdiff_t i, std::size_t extent) {
    const auto e = static_cast<std::ptrdiff_t>(extent);
    return static_cast<std::size_t>(((i % e) + e) % e);
}

__attribute__((target("avx2"))) inline __m256d combine(__m256d a, __m256d b, __m256d c, __m256d d,
                                                        __m256d w0, __m256d w1, __m256d w2,
                                                        __m256d w3) {
    __m256d r = _mm256_mul_pd(w0, a);
    r = _mm256_add_pd(r, _mm256_mul_pd(w1, b));
    r = _mm256_add_pd(r, _mm256_mul_pd(w2, c));
    r = _mm256_add_pd(r, _mm256_mul_pd(w3, d));
    return r;
}

inline double combine1(double a, double b, double c, double d, const Stencil4& s) {
    double r = s.weights[0] * a;
    r = r + s.weights[1] * b;
    r = r + s.weights[2] * c;
    r = r + s.weights[3] * d;
    return r;
}

// Stencil axis is the contiguous one: vectorize along the line, wrap the ends.
__attribute__((target("avx2"))) void stencil_contiguous(const double* in, double* out,
                                                        const AxisLayout& layout,
                                                        const Stencil4& s) {
    const std::size_t n = layout.extent;
    int lo_off = 0, hi_off = 0;
    for (int off : s.offsets) {
        lo_off = off < lo_off ? off : lo_off;
        hi_off = off > hi_off ? off : hi_off;
    }
    const std::size_t lo = static_cast<std::size_t>(-lo_off);
    const std::size_t hi = n > static_cast<std::size_t>(hi_off) ? n - hi_off : 0;
    const __m256d w0 = _mm256_set1_pd(s.weights[0]);
    const __m256d w1 = _mm256_set1_pd(s.weights[1]);
    const __m256d w2 = _mm256_set1_pd(s.weights[2]);
    const __m256d w3 = _mm256_set1_pd(s.weights[3]);
    for (std::size_t o = 0; o < layout.outer; ++o) {
        const double* line = in + o * n;
        double* dst = out + o * n;
        auto edge = [&](std::size_t i) {
            const auto ii = static_cast<std::ptrdiff_t>(i);
            dst[i] = combine1(line[wrap(ii + s.offsets[0], n)], line[wrap(ii + s.offsets[1], n)],
                              line[wrap(ii + s.offsets[2], n)], line[wrap(ii + s.offsets[3], n)], s);
        };
        std::size_t i = 0;
        for (; i < lo && i < n; ++i) edge(i);
        for (; i + 4 <= hi; i += 4) {
            const __m256d a = _mm256_loadu_pd(line + i + s.offsets[0]);
            const __m256d b = _mm256_loadu_pd(line + i + s.offsets[1]);
            const __m256d c = _mm256_loadu_pd(line + i + s.offsets[2]);
            const __m256d d = _mm256_loadu_pd(line + i + s.offsets[3]);
            _mm256_storeu_pd(dst + i, combine(a, b, c, d, w0, w1, w2, w3));
        }
        for (; i < n; ++i) edge(i);
    }
}

// Stencil axis is strided: each output row is a combination of four input rows.
__attribute__((target("avx2"))) void stencil_strided(const double* in, double* out,
                                                     const AxisLayout& layout, const Stencil4& s) {
    const std::size_t n = layout.extent;
    const std::size_t inner = layout.inner;
    const __m256d w0 = _mm256_set1_pd(s.weights[0]);
    const __m256d w1 = _mm256_set1_pd(s.weights[1]);
    const __m256d w2 = _mm256_set1_pd(s.weights[2]);
    const __m256d w3 = _mm256_set1_pd(s.weights[3]);
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
            std::size_t j = 0;
            for (; j + 4 <= inner; j += 4) {
                const __m256d r = combine(_mm256_loadu_pd(p0 + j), _mm256_loadu_pd(p1 + j),
                                          _mm256_loadu_pd(p2 + j), _mm256_loadu_pd(p3 + j), w0, w1,
                                          w2, w3);
                _mm256_storeu_pd(q + j, r);
            }
            for (; j < inner; ++j) q[j] = combine1(p0[j], p1[j], p2[j], p3[j], s);
        }
    }
}

__attribute__((target("avx2"))) inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void stencil(const double* in, double* out, const AxisLayout& layout, const Stencil4& s) {
    if (layout.inner == 1)
        stencil_contiguous(in, out, layout, s);
    else
        stencil_strided(in, out, layout, s);
}

__attribute__((target("avx2"))) double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
        acc1 = _mm256_add_pd(acc1,
                             _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

__attribute__((target("avx2"))) double dot_weighted(const double* a, const double* b,
                                                    const double* w, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d x0 = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d x1 = _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(x0, _mm256_loadu_pd(w + i)));
        acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(x1, _mm256_loadu_pd(w + i + 4)));
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i] * w[i];
    return s;
}

__attribute__((target("avx2"))) void axpy(double alpha, const double* x, double* y,
                                          std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i,
                         _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i))));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

__attribute__((target("avx2"))) void xpay(const double* x, double alpha, double* y,
                                          std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i,
                         _mm256_add_pd(_mm256_loadu_pd(x + i), _mm256_mul_pd(va, _mm256_loadu_pd(y + i))));
    for (; i < n; ++i) y[i] = x[i] + alpha * y[i];
}

__attribute__((target("avx2"))) double max_abs(const double* a, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(a + i)));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double r = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
    for (; i < n; ++i) r = std::fmax(r, std::fabs(a[i]));
    return r;
}

#else

bool supported() {
    return false;
}
void stencil(const double* in, double* out, const AxisLayout& layout, const Stencil4& s) {
    scalar::stencil(in, out, layout, s);
}
double dot(const double* a, const double* b, std::size_t n) {
    return scalar::dot(a, b, n);
}
double dot_weighted(const double* a, const double* b, const double* w, std::size_t n) {
    return scalar::dot_weighted(a, b, w, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
    scalar::axpy(alpha, x, y, n);
}
void xpay(const double* x, double alpha, double* y, std::size_t n) {
    scalar::xpay(x, alpha, y, n);
}
double max_abs(const double* a, std::size_t n) {
    return scalar::max_abs(a, n);
}

#endif

}  // namespace swc::simd::avx2
