#include "swc/yamabe/cg.hpp"

#include "swc/error.hpp"
#include "swc/simd/kernels.hpp"

#include <cmath>
#include <string>

namespace swc {

CgResult conjugate_gradient(const LinearOperator& a, std::span<const double> diagonal, std::span<const double> b,
                            std::span<double> x, const CgOptions& options) {
    const std::size_t n = b.size();
    std::vector<double> r(n), z(n), p(n), ap(n);
    a(x, ap);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
    const double bnorm = std::sqrt(simd::dot(b.data(), b.data(), n));
    CgResult res;
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        res.converged = true;
        return res;
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diagonal[i];
    p = z;
    double rz = simd::dot(r.data(), z.data(), n);
    for (int it = 0; it < options.max_iterations; ++it) {
        res.relative_residual = std::sqrt(simd::dot(r.data(), r.data(), n)) / bnorm;
        if (res.relative_residual <= options.relative_tolerance) {
            res.converged = true;
            return res;
        }
        a(p, ap);
        const double pap = simd::dot(p.data(), ap.data(), n);
        if (!(pap > 0.0))
            throw ConvergenceError("conjugate gradient: operator not positive definite (p.Ap = " +
                                   std::to_string(pap) + ")");
        const double alpha = rz / pap;
        simd::axpy(alpha, p.data(), x.data(), n);
        simd::axpy(-alpha, ap.data(), r.data(), n);
        for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diagonal[i];
        const double rz_new = simd::dot(r.data(), z.data(), n);
        simd::xpay(z.data(), rz_new / rz, p.data(), n);
        rz = rz_new;
        res.iterations = it + 1;
    }
    res.relative_residual = std::sqrt(simd::dot(r.data(), r.data(), n)) / bnorm;
    res.converged = res.relative_residual <= options.relative_tolerance;
    return res;
}

}  // namespace swc
