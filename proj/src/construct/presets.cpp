#include "swc/construct/presets.hpp"

#include "swc/error.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace swc::presets {

MetricField flat(const Chart& chart) {
    return flat_metric(chart);
}

namespace {

struct Mode {
    std::array<int, kMaxDim> k{};
    double amp = 0.0;
    double phase = 0.0;
};

Sym2Field perturbation(const Chart& chart, const RandomPresetOptions& o) {
    if (o.amplitude < 0.0 || o.modes < 0 || o.kmax < 1) throw ConfigError("random preset: invalid parameters");
    const int n = chart.dim();
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<int> kd(-o.kmax, o.kmax);
    std::uniform_real_distribution<double> ud(-1.0, 1.0), ph(0.0, 2.0 * M_PI);
    const int ns = n * (n + 1) / 2;
    std::vector<std::vector<Mode>> modes(ns);
    for (int s = 0; s < ns; ++s)
        for (int m = 0; m < o.modes; ++m) {
            Mode md;
            bool zero = true;
            while (zero) {
                zero = true;
                for (int a = 0; a < n; ++a) {
                    md.k[a] = kd(rng);
                    zero = zero && md.k[a] == 0;
                }
            }
            md.amp = o.amplitude * ud(rng);
            md.phase = ph(rng);
            modes[s].push_back(md);
        }
    Sym2Field out(chart);
    for (std::size_t p = 0; p < chart.point_count(); ++p) {
        std::array<double, kMaxDim> x{};
        for (int a = 0; a < n; ++a) x[a] = chart.coordinate(p, a);
        for (int s = 0; s < ns; ++s) {
            double v = 0.0;
            for (const Mode& md : modes[s]) {
                double arg = md.phase;
                for (int a = 0; a < n; ++a) arg += 2.0 * M_PI * md.k[a] * x[a] / chart.length(a);
                v += md.amp * std::cos(arg);
            }
            out.at(s, p) = v;
        }
    }
    return out;
}

}  // namespace

MetricField random(const Chart& chart, const RandomPresetOptions& options) {
    Sym2Field g = identity_sym2(chart);
    const Sym2Field d = perturbation(chart, options);
    for (int s = 0; s < g.components(); ++s)
        for (std::size_t p = 0; p < chart.point_count(); ++p) g.at(s, p) += d.at(s, p);
    return MetricField(std::move(g));
}

double cutoff(double rho, double r0, double width) {
    if (rho <= r0) return 0.0;
    if (rho >= r0 + width) return 1.0;
    const double t = (rho - r0) / width;
    const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

MetricField flat_ball(const Chart& chart, const RandomPresetOptions& options, const FlatBallOptions& balls) {
    if (!(balls.radius > 0.0) || !(balls.transition > 0.0))
        throw ConfigError("flat-ball preset: radius and transition must be positive");
    const int n = chart.dim();
    Sym2Field g = identity_sym2(chart);
    const Sym2Field d = perturbation(chart, options);
    for (std::size_t p = 0; p < chart.point_count(); ++p) {
        double chi = 1.0;
        for (const Point& c : balls.centers) {
            const auto x = chart.displacement(p, c);
            double r2 = 0.0;
            for (int a = 0; a < n; ++a) r2 += x[a] * x[a];
            chi *= cutoff(std::sqrt(r2), balls.radius, balls.transition);
        }
        if (chi == 0.0) continue;
        for (int s = 0; s < g.components(); ++s) g.at(s, p) += chi * d.at(s, p);
    }
    return MetricField(std::move(g));
}

std::vector<Point> symmetric_centers(const Chart& chart, int count) {
    const int n = chart.dim();
    // Nearest grid coordinate to a fraction of the period.
    auto snap = [&](int axis, double frac) {
        const int i = static_cast<int>(std::lround(frac * chart.size(axis))) % chart.size(axis);
        return i * chart.spacing(axis);
    };
    Point base{};
    for (int a = 0; a < n; ++a) base[a] = snap(a, 0.5);
    std::vector<Point> out;
    switch (count) {
        case 1: out.push_back(base); break;
        case 2:
            for (double f : {0.25, 0.75}) {
                Point c = base;
                c[0] = snap(0, f);
                out.push_back(c);
            }
            break;
        case 4:
            for (double f0 : {0.25, 0.75})
                for (double f1 : {0.25, 0.75}) {
                    Point c = base;
                    c[0] = snap(0, f0);
                    c[1] = snap(1, f1);
                    out.push_back(c);
                }
            break;
        default: throw ConfigError("symmetric centers: ball count must be 1, 2 or 4");
    }
    return out;
}

double center_separation(const Chart& chart, const std::vector<Point>& centers) {
    double best = std::numeric_limits<double>::infinity();
    const int n = chart.dim();
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
            double d2 = 0.0;
            for (int a = 0; a < n; ++a) {
                double d = std::abs(centers[i][a] - centers[j][a]);
                d = std::min(d, chart.length(a) - d);
                d2 += d * d;
            }
            best = std::min(best, std::sqrt(d2));
        }
    return best;
}

}  // namespace swc::presets
