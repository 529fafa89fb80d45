#pragma once

#include "swc/conformal/conformal.hpp"
#include "swc/yamabe/cg.hpp"

#include <string>
#include <vector>

namespace swc {

enum class Verdict { negative, zero, positive };
std::string_view verdict_name(Verdict v);

struct TrichotomyResult {
    double lambda = 0.0;
    ScalarField eigenfunction;  // int u^2 dV = 1, positive sum
    Verdict verdict = Verdict::zero;
    double tolerance = 0.0;     // zero band |lambda| < tolerance
    double residual = 0.0;      // max |L u - lambda u| / scale
    double min_eigenfunction = 0.0;
    int iterations = 0;
};

struct EigenOptions {
    double tolerance = 1e-13;  // on successive Rayleigh quotients, relative to scale()
    int max_iterations = 500;
    CgOptions cg{};
};

/// Smallest eigenvalue of L on L^2(dV_g) by shifted inverse iteration.
TrichotomyResult first_eigenvalue(const ModifiedLaplacian& op, const EigenOptions& options = {});
TrichotomyResult first_eigenvalue(const MetricField& g, double t, const EigenOptions& options = {});

/// Denominator exponent of Y-hat: (n-2)/n keeps the quotient scale invariant;
/// `printed` uses (n-2)/2.
enum class YhatExponent { scale_invariant, printed };

/// int u L u dV / (int |u|^{2n/(n-2)} dV)^s
double yhat(const ModifiedLaplacian& op, const ScalarField& u, YhatExponent exponent = YhatExponent::scale_invariant);

/// int F u^2 dV + a_n int |grad u|^2 dV. Throws InputError unless u > 0.
double lemma_a1_lhs(const ModifiedLaplacian& op, const ScalarField& u);
double lemma_a1_lhs(const MetricField& g, double t, const ScalarField& u);

enum class SolveStart { barrier, eigenfunction };
std::string_view start_name(SolveStart s);

struct SolveOptions {
    SolveStart start = SolveStart::barrier;
    double tolerance = 1e-11;        // max |L u + u^p| / max u^p
    double monotone_switch = 1e-4;   // relative update size that hands over to Newton
    int max_monotone = 400;
    int max_newton = 30;
    EigenOptions eigen{};
    CgOptions cg{};
};

struct SolveReport {
    ScalarField u;
    bool converged = false;
    double residual = 0.0;
    int monotone_iterations = 0;
    int newton_iterations = 0;
    double lambda = 0.0;
    SolveStart start = SolveStart::barrier;
    std::vector<double> history;  // residual after each iteration
    double seconds = 0.0;
    std::string message;
};

/// u > 0 with L u = -u^{p_n}. Throws PreconditionError unless the first
/// eigenvalue of L is negative.
SolveReport solve_constant_F(const ModifiedLaplacian& op, const SolveOptions& options = {});
SolveReport solve_constant_F(const MetricField& g, double t, const SolveOptions& options = {});

/// max |L u + u^p| / max u^p
double constant_F_residual(const ModifiedLaplacian& op, const ScalarField& u);

/// max |F + 1| of g~ = u^{4/(n-2)} g, curvature recomputed from scratch.
double constant_F_defect(const MetricField& g, const ScalarField& u, double t);

}  // namespace swc
