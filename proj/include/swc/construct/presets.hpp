#pragma once

#include "swc/grid/metric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace swc {

using Point = std::array<double, kMaxDim>;

/// Band-limited perturbation: every component of g gets `modes` random
/// cosines with wave numbers in [-kmax, kmax]^n and amplitudes in
/// [-amplitude, amplitude].
struct RandomPresetOptions {
    double amplitude = 0.05;
    int modes = 2;
    int kmax = 1;
    std::uint64_t seed = 1;
};

/// Balls on which the generated metric is exactly Euclidean. The perturbation
/// is multiplied by a C-infinity cutoff that vanishes for rho <= radius and is
/// 1 for rho >= radius + transition.
struct FlatBallOptions {
    std::vector<Point> centers;
    double radius = 0.0;
    double transition = 0.0;
};

namespace presets {

MetricField flat(const Chart& chart);

/// delta + perturbation. Throws InputError when the result is not SPD.
MetricField random(const Chart& chart, const RandomPresetOptions& options);

MetricField flat_ball(const Chart& chart, const RandomPresetOptions& options, const FlatBallOptions& balls);

/// C-infinity cutoff: 0 for rho <= r0, 1 for rho >= r0 + width.
double cutoff(double rho, double r0, double width);

/// Torus-symmetric grid-point centers for 1, 2 or 4 balls. Throws ConfigError otherwise.
std::vector<Point> symmetric_centers(const Chart& chart, int count);

/// Smallest pairwise minimal-image distance between centers (infinity for one center).
double center_separation(const Chart& chart, const std::vector<Point>& centers);

}  // namespace presets
}  // namespace swc
