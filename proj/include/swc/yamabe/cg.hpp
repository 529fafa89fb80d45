#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace swc {

/// y = A x for a symmetric positive definite A.
using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct CgOptions {
    double relative_tolerance = 1e-12;
    int max_iterations = 5000;
};

struct CgResult {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients; x holds the initial guess.
/// Throws ConvergenceError on loss of positive definiteness.
CgResult conjugate_gradient(const LinearOperator& a, std::span<const double> diagonal, std::span<const double> b,
                            std::span<double> x, const CgOptions& options = {});

}  // namespace swc
