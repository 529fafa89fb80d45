#include "swc/construct/bump.hpp"

#include "swc/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace swc {

namespace {

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double dstep(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
    return a * b * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t))) / ((a + b) * (a + b));
}

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kNodes = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                          -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                          0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kWeights = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                            0.2223810344533745, 0.1012285362903763};
constexpr int kPanels = 48;

}  // namespace

std::string bump_family_name(BumpFamily f) {
    return f == BumpFamily::steep ? "steep" : "gentle";
}

BumpFamily parse_bump_family(const std::string& s) {
    if (s == "steep") return BumpFamily::steep;
    if (s == "gentle") return BumpFamily::gentle;
    throw ConfigError("unknown bump family '" + s + "' (expected steep or gentle)");
}

BumpProfile::BumpProfile(double delta, int n, BumpFamily family) : delta_(delta), n_(n), family_(family) {
    if (!(delta > 0.0 && delta < 1.0)) throw ConstructionError("bump: delta must lie in (0, 1)");
    if (n < 3) throw ConstructionError("bump: dimension must be at least 3");
    const auto [a, b] = slope_band();
    rise_end_ = a * a;
    fall_start_ = b * b;
    norm_ = 0.0;
    norm_ = primitive(0.0);
}

std::pair<double, double> BumpProfile::slope_band() const {
    return {std::pow(0.25, 1.0 / (n_ - 1)), std::pow(0.75, 1.0 / (n_ - 1))};
}

double BumpProfile::beta(double s) const {
    if (family_ == BumpFamily::gentle) return 1.0 - step(s);
    const double rise = floor_ + (1.0 - floor_) * step(s / rise_end_);
    const double fall = 1.0 - step((s - fall_start_) / (1.0 - fall_start_));
    return rise * fall;
}

double BumpProfile::dbeta(double s) const {
    if (family_ == BumpFamily::gentle) return -dstep(s);
    const double rise = floor_ + (1.0 - floor_) * step(s / rise_end_);
    const double drise = (1.0 - floor_) * dstep(s / rise_end_) / rise_end_;
    const double fall = 1.0 - step((s - fall_start_) / (1.0 - fall_start_));
    const double dfall = -dstep((s - fall_start_) / (1.0 - fall_start_)) / (1.0 - fall_start_);
    return drise * fall + rise * dfall;
}

// Normalized H(s) / H(1), computed as 1 minus the tail integral over [s, 1] so
// that y never overshoots 1 where beta is flat to all orders.
double BumpProfile::primitive(double s) const {
    s = std::clamp(s, 0.0, 1.0);
    if (s == 1.0) return 1.0;
    const double h = (1.0 - s) / kPanels;
    double sum = 0.0;
    for (int p = 0; p < kPanels; ++p) {
        const double mid = s + (p + 0.5) * h;
        for (std::size_t q = 0; q < kNodes.size(); ++q) sum += kWeights[q] * beta(mid + 0.5 * h * kNodes[q]);
    }
    const double tail = 0.5 * h * sum;
    return norm_ == 0.0 ? tail : 1.0 - tail / norm_;
}

double BumpProfile::y(double x) const {
    x = std::abs(x);
    if (x >= 1.0) return 1.0;
    return delta_ + (1.0 - delta_) * primitive(x * x);
}

double BumpProfile::dy(double x) const {
    const double ax = std::abs(x);
    if (ax >= 1.0) return 0.0;
    return (1.0 - delta_) * 2.0 * x * beta(x * x) / norm_;
}

double BumpProfile::d2y(double x) const {
    if (std::abs(x) >= 1.0) return 0.0;
    const double s = x * x;
    return (1.0 - delta_) * (2.0 * beta(s) + 4.0 * s * dbeta(s)) / norm_;
}

BumpCheck BumpProfile::check(int samples) const {
    BumpCheck c;
    c.even = true;
    c.increasing = true;
    c.min_value = 1e300;
    c.min_band_slope = 1e300;
    const auto [a, b] = slope_band();
    double prev = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double x = static_cast<double>(i) / samples;  // [0, 1]
        const double v = y(x);
        // dy underflows to 0 before x = 1, so monotonicity is checked on samples.
        if (i > 0) c.increasing = c.increasing && v >= prev && dy(x) >= 0.0;
        prev = v;
        c.even = c.even && y(-x) == v;
        c.min_value = std::min(c.min_value, v);
        if (x >= a && x <= b) c.min_band_slope = std::min(c.min_band_slope, dy(x));
        const double xo = 1.0 + 2.0 * x;  // [1, 3]
        c.max_outside = std::max({c.max_outside, std::abs(y(xo) - 1.0), std::abs(y(-xo) - 1.0)});
    }
    c.flat_outside = c.max_outside == 0.0;
    c.lower_bound = c.min_value >= delta_ && delta_ > 0.0;
    c.slope_band = c.min_band_slope >= 1.0;
    return c;
}

BumpProfile make_bump(double delta, int n) {
    BumpProfile b(delta, n, BumpFamily::steep);
    const BumpCheck c = b.check();
    if (!c.ok()) {
        std::ostringstream os;
        os << "bump: conditions fail for delta = " << delta << ", n = " << n
           << " (min slope on band " << c.min_band_slope << ")";
        throw ConstructionError(os.str());
    }
    return b;
}

}  // namespace swc
