#include "helpers.hpp"

#include "swc/conformal/conformal.hpp"
#include "swc/error.hpp"
#include "swc/grid/ops.hpp"

#include <doctest.h>

using namespace swc;

TEST_CASE("conformal factor conversions round trip") {
    const Chart chart = make_cubic_chart(4, 8, 1.0);
    const ScalarField psi = testing::random_smooth(chart, 1.0, 0.3, 3);
    const ScalarField u = u_from_psi(psi), back = psi_from_u(u), f = f_from_psi(psi);
    for (std::size_t p = 0; p < chart.point_count(); ++p) {
        CHECK(back.at(0, p) == doctest::Approx(psi.at(0, p)).epsilon(1e-14));
        CHECK(f.at(0, p) == doctest::Approx(psi.at(0, p)).epsilon(1e-14));  // n = 4
        CHECK(u.at(0, p) == doctest::Approx(std::sqrt(psi.at(0, p))).epsilon(1e-14));
    }
    ScalarField bad = psi;
    bad.at(0, 5) = -1.0;
    CHECK_THROWS_AS(scaled_metric(flat_metric(chart), bad), InputError);
    CHECK_THROWS_AS(conformal_metric(flat_metric(chart), bad), InputError);
}

TEST_CASE("Weyl tensor scales by psi under g -> psi g") {
    const Chart chart = make_cubic_chart(4, 12, 2.0 * M_PI);
    const MetricField g = testing::random_metric(chart, 0.1, 4);
    const auto rep = conformal_formula_check(g, testing::random_smooth(chart, 1.0, 0.2, 5));
    CHECK(rep.weyl_convention == "psi");
    CHECK(rep.weyl_psi < 0.05 * rep.weyl_scale);
    CHECK(rep.weyl_inverse > 0.1 * rep.weyl_scale);
    CHECK(rep.volume < 1e-13);
}

TEST_CASE("conformal formulas converge under refinement") {
    ConformalFormulaReport r[2];
    int i = 0;
    for (int N : {12, 24}) {
        const Chart chart = make_cubic_chart(4, N, 2.0 * M_PI);
        r[i++] = conformal_formula_check(testing::random_metric(chart, 0.1, 4),
                                         testing::random_smooth(chart, 1.0, 0.2, 5));
    }
    CHECK(testing::order(r[0].scalar, r[1].scalar, 2.0) > 3.5);
    CHECK(testing::order(r[0].weyl_psi, r[1].weyl_psi, 2.0) > 3.5);
}

TEST_CASE("modified Laplacian basics") {
    const Chart chart = make_cubic_chart(3, 12, 2.0 * M_PI);
    const MetricField g = testing::random_metric(chart, 0.1, 2);
    const auto op = ModifiedLaplacian::for_metric(g, 0.5);
    const ScalarField one = sample(chart, [](const auto&) { return 1.0; });
    CHECK(op.laplace_beltrami(one).max_abs() < 1e-13);
    const ScalarField u = testing::random_smooth(chart, 1.0, 0.3, 7);
    ScalarField fu2(chart);
    for (std::size_t p = 0; p < chart.point_count(); ++p)
        fu2.at(0, p) = op.potential().at(0, p) * u.at(0, p) * u.at(0, p);
    const double expected = op.a() * op.dirichlet_energy(u) + integrate(fu2, g);
    CHECK(op.quadratic_form(u) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(op.dirichlet_energy(u) > 0.0);
}

TEST_CASE("smoothed Weyl norm approaches the plain one") {
    const Chart chart = make_cubic_chart(4, 8, 2.0 * M_PI);
    const auto b = curvature(testing::random_metric(chart, 0.1, 9));
    const ScalarField plain = scalar_weyl(b, 1.0);
    const ScalarField smooth = scalar_weyl(b, 1.0, 1e-8);
    for (std::size_t p = 0; p < chart.point_count(); ++p) {
        CHECK(smooth.at(0, p) <= plain.at(0, p));
        CHECK(smooth.at(0, p) == doctest::Approx(plain.at(0, p)).epsilon(1e-6));
    }
}

TEST_CASE("conformal Laplacian covariance converges") {
    double res[2];
    int i = 0;
    for (int N : {12, 24}) {
        const Chart chart = make_cubic_chart(4, N, 2.0 * M_PI);
        res[i++] = covariance_residual(testing::random_metric(chart, 0.1, 3), testing::random_smooth(chart, 1.0, 0.2, 4),
                                       testing::random_smooth(chart, 0.5, 0.3, 5), 1.0);
    }
    CHECK(testing::order(res[0], res[1], 2.0) > 3.5);
}
