#pragma once

#include "swc/grid/field.hpp"
#include "swc/grid/metric.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace swc::testing {

/// Smooth periodic scalar: c0 + amp * sum of a few low Fourier modes.
struct Modes {
    std::vector<std::array<int, kMaxDim>> k;
    std::vector<double> amp;
    std::vector<double> phase;
};

inline Modes random_modes(int n, int count, int kmax, double amp, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> kd(-kmax, kmax);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
    Modes m;
    for (int c = 0; c < count; ++c) {
        std::array<int, kMaxDim> k{};
        bool zero = true;
        while (zero) {
            for (int a = 0; a < n; ++a) {
                k[a] = kd(rng);
                zero = zero && k[a] == 0;
            }
        }
        m.k.push_back(k);
        m.amp.push_back(amp * ud(rng));
        m.phase.push_back(ph(rng));
    }
    return m;
}

inline double eval(const Modes& m, const Chart& chart, const std::array<double, kMaxDim>& x) {
    double v = 0.0;
    for (std::size_t c = 0; c < m.k.size(); ++c) {
        double arg = m.phase[c];
        for (int a = 0; a < chart.dim(); ++a) arg += 2.0 * M_PI * m.k[c][a] * x[a] / chart.length(a);
        v += m.amp[c] * std::cos(arg);
    }
    return v;
}

inline ScalarField smooth_field(const Chart& chart, double base, const Modes& m) {
    return sample(chart, [&](const std::array<double, kMaxDim>& x) { return base + eval(m, chart, x); });
}

inline ScalarField random_smooth(const Chart& chart, double base, double amp, std::uint64_t seed,
                                 int count = 3, int kmax = 1) {
    return smooth_field(chart, base, random_modes(chart.dim(), count, kmax, amp, seed));
}

/// delta + band-limited perturbation, one mode set per component.
inline MetricField random_metric(const Chart& chart, double amp, std::uint64_t seed, int kmax = 1) {
    const int n = chart.dim();
    Sym2Field g(chart);
    for (int i = 0, s = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++s) {
            const ScalarField c = random_smooth(chart, i == j ? 1.0 : 0.0, amp, seed * 131 + s, 2, kmax);
            std::copy(c.component(0).begin(), c.component(0).end(), g.component(s).begin());
        }
    return MetricField(std::move(g));
}

inline double order(double coarse, double fine, double ratio) {
    return std::log(coarse / fine) / std::log(ratio);
}

}  // namespace swc::testing
