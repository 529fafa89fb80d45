#include "swc/error.hpp"
#include "swc/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace swc::simd {

namespace {

Backend detect() {
    if (const char* env = std::getenv("SWC_SIMD"); env && std::strcmp(env, "scalar") == 0)
        return Backend::scalar;
    return avx2::supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> backend{detect()};
    return backend;
}

}  // namespace

Backend active_backend() {
    return current().load(std::memory_order_relaxed);
}

void set_backend(Backend backend) {
    if (backend == Backend::avx2 && !avx2::supported())
        throw ConfigError("AVX2 backend requested but not supported by this CPU/build");
    current().store(backend, std::memory_order_relaxed);
}

std::string_view backend_name(Backend backend) {
    return backend == Backend::avx2 ? "avx2" : "scalar";
}

void stencil(const double* in, double* out, const AxisLayout& layout, const Stencil4& s) {
    if (active_backend() == Backend::avx2)
        avx2::stencil(in, out, layout, s);
    else
        scalar::stencil(in, out, layout, s);
}

double dot(const double* a, const double* b, std::size_t n) {
    return active_backend() == Backend::avx2 ? avx2::dot(a, b, n) : scalar::dot(a, b, n);
}

double dot_weighted(const double* a, const double* b, const double* w, std::size_t n) {
    return active_backend() == Backend::avx2 ? avx2::dot_weighted(a, b, w, n)
                                             : scalar::dot_weighted(a, b, w, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    if (active_backend() == Backend::avx2)
        avx2::axpy(alpha, x, y, n);
    else
        scalar::axpy(alpha, x, y, n);
}

void xpay(const double* x, double alpha, double* y, std::size_t n) {
    if (active_backend() == Backend::avx2)
        avx2::xpay(x, alpha, y, n);
    else
        scalar::xpay(x, alpha, y, n);
}

double max_abs(const double* a, std::size_t n) {
    return active_backend() == Backend::avx2 ? avx2::max_abs(a, n) : scalar::max_abs(a, n);
}

}  // namespace swc::simd
