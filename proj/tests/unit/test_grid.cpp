#include "helpers.hpp"

#include "swc/error.hpp"
#include "swc/grid/ops.hpp"
#include "swc/grid/wfld.hpp"
#include "swc/simd/kernels.hpp"

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

using namespace swc;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("swc_test_" + name);
}

double sin_error(int n, int size) {
    const Chart chart = make_cubic_chart(n, size, 2.0 * M_PI);
    const ScalarField f = sample(chart, [](const auto& x) { return std::sin(x[0]) * std::cos(2.0 * x[1]); });
    const CovectorField df = gradient(f);
    double err = 0.0;
    for (std::size_t p = 0; p < chart.point_count(); ++p) {
        const double x = chart.coordinate(p, 0), y = chart.coordinate(p, 1);
        err = std::max(err, std::abs(df.at(0, p) - std::cos(x) * std::cos(2.0 * y)));
        err = std::max(err, std::abs(df.at(1, p) + 2.0 * std::sin(x) * std::sin(2.0 * y)));
    }
    return err;
}

}  // namespace

TEST_CASE("chart validation names the offending axis") {
    CHECK_THROWS_AS(make_cubic_chart(2, 8, 1.0), ConfigError);
    CHECK_THROWS_AS(make_cubic_chart(7, 8, 1.0), ConfigError);
    CHECK_THROWS_WITH_AS(make_chart(3, {8, 7, 8}, {1.0, 1.0, 1.0}), doctest::Contains("axis 1"), ConfigError);
    CHECK_THROWS_WITH_AS(make_chart(3, {8, 8, 8}, {1.0, 1.0, -1.0}), doctest::Contains("axis 2"), ConfigError);
    const Chart c = make_chart(3, {8, 10, 12}, {1.0, 2.0, 3.0});
    CHECK(c.point_count() == 960);
    CHECK(c.volume() == doctest::Approx(6.0));
    CHECK(c.unravel(c.stride(0) * 3 + c.stride(2) * 5)[0] == 3);
    CHECK(c.coordinate(c.stride(1) * 4, 1) == doctest::Approx(0.8));
}

TEST_CASE("minimal-image displacement wraps around the torus") {
    const Chart c = make_cubic_chart(3, 8, 1.0);
    const auto d = c.displacement(0, {0.875, 0.5, 0.125});
    CHECK(d[0] == doctest::Approx(0.125));
    CHECK(std::abs(d[1]) == doctest::Approx(0.5));
    CHECK(d[2] == doctest::Approx(-0.125));
}

TEST_CASE("central derivative is fourth order and exact on constants") {
    const double e16 = sin_error(3, 16), e32 = sin_error(3, 32);
    CHECK(testing::order(e16, e32, 2.0) > 3.8);
    const Chart chart = make_cubic_chart(4, 8, 3.0);
    const ScalarField one = sample(chart, [](const auto&) { return 0.7; });
    CHECK(gradient(one).max_abs() == 0.0);
}

TEST_CASE("integration and divergence on the torus") {
    const Chart chart = make_cubic_chart(3, 16, 2.0 * M_PI);
    const ScalarField f = sample(chart, [](const auto& x) { return 1.0 + std::sin(x[0]) * std::sin(x[2]); });
    CHECK(integrate_plain(f) == doctest::Approx(8.0 * M_PI * M_PI * M_PI).epsilon(1e-13));
    const MetricField g = testing::random_metric(chart, 0.1, 4);
    const CovectorField x = gradient(testing::random_smooth(chart, 0.0, 1.0, 9));
    const ScalarField rho = g.density();
    double scale = 0.0;
    for (std::size_t p = 0; p < chart.point_count(); ++p) scale += std::abs(rho.at(0, p));
    CHECK(std::abs(divergence_total(x, g)) < 1e-12 * scale);
    CHECK_THROWS_AS(integrate(f, sample(chart, [](const auto&) { return 0.0; })), InputError);
}

TEST_CASE("metric construction rejects non-SPD input") {
    const Chart chart = make_cubic_chart(3, 8, 1.0);
    Sym2Field g = identity_sym2(chart);
    g.at(sym_slot(3, 0, 1), 17) = 2.0;
    CHECK_THROWS_WITH_AS(MetricField{g}, doctest::Contains("17"), InputError);
}

TEST_CASE("WFLD round trip is bit-exact") {
    const Chart chart = make_chart(3, {8, 10, 12}, {1.0, 2.5, 3.0});
    const MetricField g = testing::random_metric(chart, 0.1, 2);
    const auto path = temp_file("metric.wfld");
    wfld::write(path, g.metric());
    const Sym2Field back = wfld::read<FieldKind::sym2>(path);
    CHECK(back.chart() == chart);
    CHECK(std::memcmp(back.raw().data(), g.metric().raw().data(), g.metric().raw().size_bytes()) == 0);
    CHECK_THROWS_AS(wfld::read<FieldKind::scalar>(path), InputError);
    std::filesystem::remove(path);
}

TEST_CASE("WFLD body is point-major") {
    const Chart chart = make_cubic_chart(3, 8, 1.0);
    CovectorField v(chart);
    for (int c = 0; c < 3; ++c)
        for (std::size_t p = 0; p < chart.point_count(); ++p) v.at(c, p) = 10.0 * p + c;
    const auto path = temp_file("point_major.wfld");
    wfld::write(path, v);
    std::ifstream in(path, std::ios::binary);
    in.seekg(4 + 4 + 4 + 3 * 4 + 3 * 8 + 4);
    double first[4];
    in.read(reinterpret_cast<char*>(first), sizeof first);
    CHECK(first[0] == 0.0);
    CHECK(first[1] == 1.0);
    CHECK(first[2] == 2.0);
    CHECK(first[3] == 10.0);
    std::filesystem::remove(path);
}

TEST_CASE("WFLD rejects malformed files") {
    const auto path = temp_file("bad.wfld");
    {
        std::ofstream out(path, std::ios::binary);
        out << "WFLX0000";
    }
    CHECK_THROWS_AS(wfld::read_raw(path), InputError);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << "WFLD";
    }
    CHECK_THROWS_AS(wfld::read_raw(path), InputError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(wfld::read_raw(path), InputError);
}

TEST_CASE("AVX2 stencils are bit-identical to the scalar kernels") {
    if (!simd::avx2::supported()) return;
    const simd::Stencil4 stencils[] = {central_first_stencil(0.1), staggered_forward_stencil(0.3),
                                       staggered_backward_stencil(0.3), half_interpolation_stencil()};
    for (const simd::AxisLayout layout : {simd::AxisLayout{1, 16, 1}, simd::AxisLayout{3, 8, 5},
                                          simd::AxisLayout{2, 12, 16}, simd::AxisLayout{1, 10, 7}}) {
        const std::size_t n = layout.outer * layout.extent * layout.inner;
        const auto in = random_vector(n, n);
        for (const auto& s : stencils) {
            std::vector<double> a(n), b(n);
            simd::scalar::stencil(in.data(), a.data(), layout, s);
            simd::avx2::stencil(in.data(), b.data(), layout, s);
            CHECK(std::memcmp(a.data(), b.data(), n * sizeof(double)) == 0);
        }
    }
}

TEST_CASE("AVX2 reductions agree with the scalar kernels to rounding") {
    if (!simd::avx2::supported()) return;
    for (std::size_t n : {1u, 3u, 4u, 17u, 1000u}) {
        CAPTURE(n);
        const auto a = random_vector(n, 1), b = random_vector(n, 2), w = random_vector(n, 3);
        double mag = 0.0;
        for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
        CHECK(std::abs(simd::scalar::dot(a.data(), b.data(), n) - simd::avx2::dot(a.data(), b.data(), n)) <=
              4 * n * 1e-16 * mag);
        CHECK(std::abs(simd::scalar::dot_weighted(a.data(), b.data(), w.data(), n) -
                       simd::avx2::dot_weighted(a.data(), b.data(), w.data(), n)) <= 4 * n * 1e-16 * mag);
        CHECK(simd::scalar::max_abs(a.data(), n) == simd::avx2::max_abs(a.data(), n));
        auto y1 = b, y2 = b;
        simd::scalar::axpy(0.3, a.data(), y1.data(), n);
        simd::avx2::axpy(0.3, a.data(), y2.data(), n);
        CHECK(y1 == y2);
        simd::scalar::xpay(a.data(), -0.7, y1.data(), n);
        simd::avx2::xpay(a.data(), -0.7, y2.data(), n);
        CHECK(y1 == y2);
    }
}

TEST_CASE("gradient is backend independent") {
    if (!simd::avx2::supported()) return;
    const Chart chart = make_cubic_chart(4, 8, 1.0);
    const ScalarField f = testing::random_smooth(chart, 1.0, 0.3, 5);
    const simd::Backend before = simd::active_backend();
    simd::set_backend(simd::Backend::scalar);
    const CovectorField a = gradient(f);
    simd::set_backend(simd::Backend::avx2);
    const CovectorField b = gradient(f);
    simd::set_backend(before);
    CHECK(std::memcmp(a.raw().data(), b.raw().data(), a.raw().size_bytes()) == 0);
}
