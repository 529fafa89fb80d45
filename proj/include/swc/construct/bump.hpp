#pragma once

#include <string>
#include <utility>
#include <vector>

namespace swc {

/// steep: y' >= 1 on the slope band, the profile the construction asks for.
/// gentle: one smooth transition over [0, 1]; resolvable on coarse grids but
/// below slope 1 near the outer end of the band.
enum class BumpFamily { steep, gentle };
std::string bump_family_name(BumpFamily f);
BumpFamily parse_bump_family(const std::string& s);

struct BumpCheck {
    bool even = false;
    bool flat_outside = false;
    bool lower_bound = false;
    bool increasing = false;
    bool slope_band = false;
    double min_value = 0.0;        // min y on [-1, 1]
    double min_band_slope = 0.0;   // min y' on the slope band
    double max_outside = 0.0;      // max |y - 1| for |x| >= 1
    bool ok() const { return even && flat_outside && lower_bound && increasing && slope_band; }
};

/// y(x) = delta + (1 - delta) H(x^2) / H(1), H(s) = int_0^s beta, with beta a
/// C-infinity weight that vanishes to all orders at s = 1. y is even, equals 1
/// for |x| >= 1 and has minimum delta at 0.
class BumpProfile {
public:
    BumpProfile(double delta, int n, BumpFamily family);

    double y(double x) const;
    double dy(double x) const;
    double d2y(double x) const;

    double delta() const { return delta_; }
    int dim() const { return n_; }
    BumpFamily family() const { return family_; }
    /// [(1/4)^{1/(n-1)}, (3/4)^{1/(n-1)}]
    std::pair<double, double> slope_band() const;

    /// Dense sampling of the five defining conditions.
    BumpCheck check(int samples = 10000) const;

private:
    double beta(double s) const;
    double dbeta(double s) const;
    double primitive(double s) const;

    double delta_;
    int n_;
    BumpFamily family_;
    double rise_end_ = 0.0;
    double fall_start_ = 0.0;
    double floor_ = 0.05;
    double norm_ = 1.0;
};

/// Validated steep profile. Throws ConstructionError when the conditions fail
/// (delta too close to 1 for the slope band to be reachable).
BumpProfile make_bump(double delta, int n);

}  // namespace swc
