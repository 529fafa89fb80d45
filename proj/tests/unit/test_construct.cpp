#include "helpers.hpp"

#include "swc/construct/construct.hpp"
#include "swc/error.hpp"
#include "swc/grid/ops.hpp"

#include <doctest.h>

#include <algorithm>
#include <limits>

using namespace swc;

namespace {

ScalarField constant(const Chart& c, double v) {
    return sample(c, [&](const auto&) { return v; });
}

double min_of(const ScalarField& f) {
    return *std::ranges::min_element(f.component(0));
}

double max_of(const ScalarField& f) {
    return *std::ranges::max_element(f.component(0));
}

}  // namespace

TEST_CASE("steep profile satisfies the bump conditions") {
    for (int n = 3; n <= 6; ++n) {
        CAPTURE(n);
        const BumpProfile b = make_bump(0.1, n);
        const BumpCheck c = b.check();
        CHECK(c.ok());
        CHECK(c.min_value == doctest::Approx(0.1));
        CHECK(c.max_outside == 0.0);
        CHECK(c.min_band_slope >= 1.0);
    }
}

TEST_CASE("profile derivatives match finite differences") {
    const double h = 1e-5;
    for (BumpFamily fam : {BumpFamily::steep, BumpFamily::gentle}) {
        const BumpProfile b(0.3, 4, fam);
        for (double x : {0.05, 0.2, 0.45, 0.6, 0.75, 0.9}) {
            CAPTURE(x);
            CHECK(b.dy(x) == doctest::Approx((b.y(x + h) - b.y(x - h)) / (2 * h)).epsilon(1e-6));
            CHECK(b.d2y(x) == doctest::Approx((b.dy(x + h) - b.dy(x - h)) / (2 * h)).epsilon(1e-5));
        }
    }
}

TEST_CASE("gentle profile is admissible except for the slope band") {
    const BumpCheck c = BumpProfile(0.1, 4, BumpFamily::gentle).check();
    CHECK(c.even);
    CHECK(c.flat_outside);
    CHECK(c.lower_bound);
    CHECK(c.increasing);
    CHECK_FALSE(c.slope_band);
}

TEST_CASE("bump construction rejects infeasible inputs") {
    CHECK_THROWS_AS(make_bump(0.95, 4), ConstructionError);
    CHECK_THROWS_AS(BumpProfile(0.0, 4, BumpFamily::steep), ConstructionError);
    CHECK_THROWS_AS(BumpProfile(0.5, 2, BumpFamily::steep), ConstructionError);
    CHECK(parse_bump_family("gentle") == BumpFamily::gentle);
    CHECK_THROWS_AS(parse_bump_family("round"), ConfigError);
}

TEST_CASE("flat-ball preset is Euclidean on its balls") {
    const Chart chart = make_cubic_chart(3, 16, 2.0 * M_PI);
    FlatBallOptions balls{presets::symmetric_centers(chart, 2), 1.0, 0.5};
    const MetricField g = presets::flat_ball(chart, RandomPresetOptions{0.1, 3, 1, 7}, balls);
    double inside = 0.0, outside = 0.0;
    for (std::size_t p = 0; p < chart.point_count(); ++p) {
        double rho = 1e300;
        for (const auto& c : balls.centers) {
            const auto d = chart.displacement(p, c);
            rho = std::min(rho, std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]));
        }
        double dev = 0.0;
        for (int i = 0, s = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j, ++s) dev = std::max(dev, std::abs(g.metric().at(s, p) - (i == j)));
        (rho <= balls.radius ? inside : outside) = std::max(rho <= balls.radius ? inside : outside, dev);
    }
    CHECK(inside == 0.0);
    CHECK(outside > 1e-3);
    CHECK(min_of(g.density()) > 0.0);
}

TEST_CASE("symmetric centers") {
    const Chart chart = make_cubic_chart(4, 8, 4.0);
    CHECK(presets::center_separation(chart, presets::symmetric_centers(chart, 1)) ==
          std::numeric_limits<double>::infinity());
    CHECK(presets::center_separation(chart, presets::symmetric_centers(chart, 2)) == doctest::Approx(2.0));
    CHECK(presets::center_separation(chart, presets::symmetric_centers(chart, 4)) == doctest::Approx(2.0));
    CHECK_THROWS_AS(presets::symmetric_centers(chart, 3), ConfigError);
}

TEST_CASE("radial fields require disjoint flat balls") {
    const Chart chart = make_cubic_chart(3, 16, 2.0 * M_PI);
    const BumpProfile b(0.5, 3, BumpFamily::gentle);
    const BallConfig one{presets::symmetric_centers(chart, 1), 1.0, 1.0};
    CHECK_THROWS_AS(radial_fields(testing::random_metric(chart, 0.05, 3), one, b), InputError);
    const BallConfig two{presets::symmetric_centers(chart, 2), 2.0, 1.0};
    CHECK_THROWS_AS(radial_fields(flat_metric(chart), two, b), InputError);

    const RadialFields rf = radial_fields(flat_metric(chart), one, b);
    CHECK(min_of(rf.f) == doctest::Approx(0.5));
    CHECK(max_of(rf.f) == 1.0);
    for (std::size_t p = 0; p < chart.point_count(); ++p)
        REQUIRE(rf.psi.at(0, p) == doctest::Approx(rf.f.at(0, p) * rf.f.at(0, p)).epsilon(1e-14));
}

TEST_CASE("psi = 1 reduces Phi to the integral of F") {
    const Chart chart = make_cubic_chart(4, 8, 2.0 * M_PI);
    const MetricField g = testing::random_metric(chart, 0.1, 12);
    auto base = std::make_shared<const CurvatureBundle>(curvature(g));
    const double t = 0.7;
    const PhiResult r = phi_from_psi(base, t, constant(chart, 1.0), 2.0);
    const double expected = integrate(scalar_weyl(*base, t), g);
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.path_a == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.terms.hessian_f == 0.0);
    CHECK(r.terms.cubic == 0.0);
}

TEST_CASE("Phi paths converge together on a resolved flat ball") {
    const BumpProfile b(0.7, 3, BumpFamily::gentle);
    double res[2];
    int i = 0;
    for (int N : {16, 24}) {
        const Chart chart = make_cubic_chart(3, N, 2.0 * M_PI);
        const BallConfig cfg{presets::symmetric_centers(chart, 1), 0.4 * 2.0 * M_PI, 2.0};
        res[i++] = phi_functional(flat_metric(chart), 1.0, cfg, b).residual;
    }
    CHECK(testing::order(res[0], res[1], 1.5) > 3.0);
}

TEST_CASE("phi requires positive t") {
    const Chart chart = make_cubic_chart(3, 8, 2.0 * M_PI);
    auto base = std::make_shared<const CurvatureBundle>(curvature(flat_metric(chart)));
    CHECK_THROWS_AS(phi_from_psi(base, 0.0, constant(chart, 1.0), 1.0), PreconditionError);
}

TEST_CASE("radial deformation error vanishes under refinement, unlike the printed displays") {
    const BumpProfile b(0.7, 4, BumpFamily::gentle);
    double tang[2];
    int i = 0;
    for (int N : {12, 16}) {
        const Chart chart = make_cubic_chart(4, N, 2.0 * M_PI);
        const auto rep = radial_error_components(flat_metric(chart), presets::symmetric_centers(chart, 1)[0],
                                                 0.4 * 2.0 * M_PI, 0.5, b);
        tang[i++] = rep.tangential;
        CHECK(rep.points > 0);
        CHECK(rep.printed_tangential > 10.0 * rep.tangential);
        CHECK(rep.printed_radial > 10.0 * rep.radial_pair);
    }
    CHECK(tang[1] < tang[0]);
}

TEST_CASE("pinching report on a flat torus") {
    const auto rep = pinching_report(flat_metric(make_cubic_chart(3, 8, 1.0)), 1.0);
    CHECK(rep.max_scalar == 0.0);
    CHECK_FALSE(rep.negative_scalar);
    CHECK_FALSE(rep.pinched);
    CHECK_THROWS_AS(pinching_report(flat_metric(make_cubic_chart(3, 8, 1.0)), 0.0), PreconditionError);
}

TEST_CASE("search on a flat torus finds no negative cell") {
    const Chart chart = make_cubic_chart(3, 16, 2.0 * M_PI);
    SearchOptions o;
    o.ks = {1.0, 4.0};
    const SearchResult s = search_parameters(flat_metric(chart), 1.0, o);
    CHECK_FALSE(s.found);
    CHECK(s.landscape.size() == 8);
    for (const auto& cell : s.landscape)
        if (cell.feasible) CHECK(cell.phi > 0.0);
    CHECK(s.message.find("no cell") != std::string::npos);
}

TEST_CASE("construction outcomes") {
    SUBCASE("shortcut on a zero class fails") {
        const auto out = construct_constant_F(flat_metric(make_cubic_chart(3, 16, 1.0)), 0.0);
        CHECK(out.shortcut);
        CHECK(out.status == ConstructStatus::shortcut_failure);
        CHECK_FALSE(out.solve.has_value());
    }
    SUBCASE("negative class is solved directly") {
        // The recomputed F carries the O(h^4) error of a rough metric at N = 24.
        const MetricField g = testing::random_metric(make_cubic_chart(3, 24, 1.0), 0.15, 41);
        ConstructOptions o;
        o.tolerance = 0.15;
        const auto out = construct_constant_F(g, 0.0, o);
        CHECK(out.shortcut);
        CHECK(out.verdict == Verdict::negative);
        CHECK(out.status == ConstructStatus::success);
        CHECK(out.defect < 0.15);
    }
}
