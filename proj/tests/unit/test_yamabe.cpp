#include "helpers.hpp"
#include "oracle.hpp"

#include "swc/error.hpp"
#include "swc/grid/ops.hpp"
#include "swc/yamabe/yamabe.hpp"

#include <doctest.h>

using namespace swc;

namespace {

ScalarField constant(const Chart& c, double v) {
    return sample(c, [&](const auto&) { return v; });
}

}  // namespace

TEST_CASE("conjugate gradient solves a diagonally dominant system") {
    const std::size_t n = 50;
    const LinearOperator a = [&](std::span<const double> x, std::span<double> y) {
        for (std::size_t i = 0; i < n; ++i)
            y[i] = 4.0 * x[i] - x[(i + 1) % n] - x[(i + n - 1) % n];
    };
    std::vector<double> b(n), x(n, 0.0), d(n, 4.0), check(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = std::sin(0.3 * i);
    const auto r = conjugate_gradient(a, d, b, x);
    CHECK(r.converged);
    a(x, check);
    for (std::size_t i = 0; i < n; ++i) CHECK(check[i] == doctest::Approx(b[i]).epsilon(1e-10));
}

TEST_CASE("weighted operator is symmetric") {
    const Chart chart = make_cubic_chart(3, 8, 1.0);
    const auto op = ModifiedLaplacian::for_metric(testing::random_metric(chart, 0.1, 8), 1.0);
    CHECK(testing::weighted_asymmetry(op) < 1e-13);
}

TEST_CASE("flat torus has zero first eigenvalue") {
    const Chart chart = make_cubic_chart(4, 8, 2.0 * M_PI);
    const auto tri = first_eigenvalue(flat_metric(chart), 1.0);
    CHECK(std::abs(tri.lambda) < 1e-8);
    CHECK(tri.verdict == Verdict::zero);
    CHECK(tri.min_eigenfunction > 0.0);
}

TEST_CASE("constant potential shifts the spectrum") {
    const Chart chart = make_cubic_chart(3, 8, 1.0);
    const ModifiedLaplacian op(flat_metric(chart), constant(chart, -0.75));
    const auto tri = first_eigenvalue(op);
    CHECK(tri.lambda == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK(tri.verdict == Verdict::negative);
}

TEST_CASE("inverse iteration matches the dense eigensolve") {
    const Chart chart = make_cubic_chart(3, 8, 1.0);
    const auto op = ModifiedLaplacian::for_metric(testing::random_metric(chart, 0.1, 77), 0.5);
    const double dense = testing::dense_first_eigenvalue(op);
    const auto tri = first_eigenvalue(op);
    CHECK(std::abs(tri.lambda - dense) < 1e-8);
}

TEST_CASE("Y-hat exponent conventions") {
    const Chart chart = make_cubic_chart(4, 8, 1.0);
    const auto op = ModifiedLaplacian::for_metric(testing::random_metric(chart, 0.05, 5), 1.0);
    const ScalarField u = testing::random_smooth(chart, 1.0, 0.2, 6);
    ScalarField u2 = u;
    u2 *= 2.0;
    CHECK(yhat(op, u2) == doctest::Approx(yhat(op, u)).epsilon(1e-10));
    const double ratio = yhat(op, u2, YhatExponent::printed) / yhat(op, u, YhatExponent::printed);
    CHECK(ratio == doctest::Approx(std::pow(2.0, 2.0 - 4.0)).epsilon(1e-10));
    const ModifiedLaplacian flat(flat_metric(chart), constant(chart, 0.0));
    CHECK(yhat(flat, constant(chart, 1.0)) == 0.0);
}

TEST_CASE("lemma a1 value") {
    SUBCASE("integration by parts") {
        const Chart chart = make_cubic_chart(4, 8, 1.0);
        const auto op = ModifiedLaplacian::for_metric(testing::random_metric(chart, 0.05, 15), 1.0);
        const ScalarField u = testing::random_smooth(chart, 1.0, 0.2, 16);
        const double lhs = lemma_a1_lhs(op, u);
        CHECK(std::abs(lhs - op.quadratic_form(u)) < 1e-8 * std::abs(lhs));
    }
    SUBCASE("analytic flat value") {
        const int n = 4;
        const Chart chart = make_cubic_chart(n, 16, 2.0 * M_PI);
        const ModifiedLaplacian op(flat_metric(chart), constant(chart, 0.0));
        const ScalarField u = sample(chart, [](const auto& x) { return 1.0 + 0.1 * std::sin(x[0]); });
        const double exact = conformal_a(n) * 0.005 * std::pow(2.0 * M_PI, n);
        CHECK(lemma_a1_lhs(op, u) == doctest::Approx(exact).epsilon(1e-3));
    }
    SUBCASE("u = 1 gives the integral of F") {
        const Chart chart = make_cubic_chart(3, 8, 1.0);
        const MetricField g = testing::random_metric(chart, 0.05, 2);
        const auto op = ModifiedLaplacian::for_metric(g, 1.0);
        CHECK(lemma_a1_lhs(op, constant(chart, 1.0)) ==
              doctest::Approx(integrate(op.potential(), g)).epsilon(1e-12));
        CHECK_THROWS_AS(lemma_a1_lhs(op, constant(chart, 0.0)), InputError);
    }
}

TEST_CASE("manufactured solution is recovered from both starts") {
    const Chart chart = make_cubic_chart(4, 8, 2.0 * M_PI);
    const MetricField g = testing::random_metric(chart, 0.05, 31);
    const ScalarField ustar = sample(chart, [](const auto& x) { return 1.0 + 0.2 * std::sin(x[0]); });
    const auto op = testing::manufactured(g, ustar);
    SolveOptions a;
    SolveOptions b;
    b.start = SolveStart::eigenfunction;
    const auto ra = solve_constant_F(op, a);
    const auto rb = solve_constant_F(op, b);
    REQUIRE(ra.converged);
    REQUIRE(rb.converged);
    double ea = 0.0, eab = 0.0;
    for (std::size_t p = 0; p < chart.point_count(); ++p) {
        ea = std::max(ea, std::abs(ra.u.at(0, p) - ustar.at(0, p)));
        eab = std::max(eab, std::abs(ra.u.at(0, p) - rb.u.at(0, p)));
    }
    CHECK(ea < 1e-6);
    CHECK(eab < 1e-6);
}

TEST_CASE("F = -1 is a fixed point") {
    const Chart chart = make_cubic_chart(3, 8, 1.0);
    const ModifiedLaplacian op(testing::random_metric(chart, 0.05, 3), constant(chart, -1.0));
    const auto r = solve_constant_F(op);
    REQUIRE(r.converged);
    for (std::size_t p = 0; p < chart.point_count(); ++p) CHECK(std::abs(r.u.at(0, p) - 1.0) < 1e-8);
}

TEST_CASE("solver refuses a non-negative first eigenvalue") {
    const Chart chart = make_cubic_chart(3, 8, 1.0);
    CHECK_THROWS_AS(solve_constant_F(flat_metric(chart), 1.0), PreconditionError);
    const ModifiedLaplacian pos(flat_metric(chart), constant(chart, 0.5));
    CHECK_THROWS_AS(solve_constant_F(pos), PreconditionError);
}

TEST_CASE("verdict is conformally invariant and the eigenfunction change makes R negative") {
    const Chart chart = make_cubic_chart(3, 24, 1.0);
    const MetricField g = testing::random_metric(chart, 0.15, 41);
    const auto tri = first_eigenvalue(g, 0.0);
    REQUIRE(tri.verdict == Verdict::negative);
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
        const ScalarField u = testing::random_smooth(chart, 1.0, 0.2, 50 + seed);
        CHECK(first_eigenvalue(conformal_metric(g, u), 0.0).verdict == Verdict::negative);
    }
    const ScalarField r1 = scalar_weyl(conformal_metric(g, tri.eigenfunction), 0.0);
    double worst = -1e300;
    for (std::size_t p = 0; p < chart.point_count(); ++p) worst = std::max(worst, r1.at(0, p));
    CHECK(worst < 0.0);
}
