#pragma once

#include "config.hpp"

#include "swc/aubin/aubin.hpp"
#include "swc/construct/construct.hpp"

namespace swc::cli {

int run_curvature(const RunConfig& cfg);
int run_verify(const RunConfig& cfg);
int run_construct(const RunConfig& cfg);
int run_recheck(const RunConfig& cfg);

// Numbers shared by a command and its recheck.

json curvature_numbers(const MetricField& g, double t);

/// Residuals of the two-path identities for one resolution.
json identity_suite(const MetricField& g, const ScalarField& f, const ScalarField& psi, double k, double t,
                    const WeylErrorOptions& options);
/// Orders between two suites on a doubled grid and the pass flag.
json suite_orders(const json& coarse, const json& fine);

json pinching_json(const PinchingReport& r);
json landscape_json(const std::vector<LandscapeCell>& cells);
/// Residual, defect, F summary and pinching of a solved conformal factor.
json final_numbers(const MetricField& solved, const ScalarField& u, const MetricField& final_metric, double t);

}  // namespace swc::cli
