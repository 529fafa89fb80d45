#include "helpers.hpp"

#include "swc/aubin/aubin.hpp"
#include "swc/error.hpp"
#include "swc/grid/ops.hpp"
#include "swc/tensor/fields.hpp"

#include <doctest.h>

#include <random>

using namespace swc;
using tensor::at;
using tensor::Mat;
using tensor::PointRiem;

namespace {

struct RandomPoint {
    EPointInput in;
};

Mat random_sym(int n, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat m{};
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) at(m, i, j) = at(m, j, i) = scale * u(rng);
    return m;
}

PointRiem add(int n, PointRiem a, const PointRiem& b, double s = 1.0) {
    const int ns = RiemannIndex::get(n).slot_count();
    for (int k = 0; k < ns; ++k) a[k] += s * b[k];
    return a;
}

std::pair<Mat, double> ricci_of(int n, const PointRiem& rm, const Mat& inv) {
    Mat ric{};
    double r = 0.0;
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
            double s = 0.0;
            for (int a = 0; a < n; ++a)
                for (int c = 0; c < n; ++c) s += at(inv, a, c) * tensor::component(n, rm, a, b, c, d);
            at(ric, b, d) = s;
        }
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) r += at(inv, b, d) * at(ric, b, d);
    return {ric, r};
}

PointRiem point_weyl(int n, const PointRiem& rm, const Mat& g, const Mat& inv) {
    const auto [ric, r] = ricci_of(n, rm, inv);
    PointRiem w = add(n, rm, tensor::kulkarni_nomizu(n, ric, g), -1.0 / (n - 2));
    return add(n, w, tensor::kulkarni_nomizu(n, g, g), r / (2.0 * (n - 1) * (n - 2)));
}

EPointInput random_input(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    EPointInput in;
    in.n = n;
    Mat a = random_sym(n, rng, 0.3);
    for (int i = 0; i < n; ++i) at(a, i, i) += 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += at(a, i, k) * at(a, j, k);
            at(in.g, i, j) = s;
        }
    double det = 0.0;
    REQUIRE(tensor::spd_inverse(n, in.g, in.inv, det));
    for (int i = 0; i < n; ++i) in.df[i] = 0.8 * u(rng);
    in.hessian = random_sym(n, rng, 1.0);
    // Sums of Kulkarni-Nomizu squares span the algebraic curvature tensors.
    in.riemann = {};
    for (int c = 0; c < 3; ++c) {
        const Mat s = random_sym(n, rng, 1.0);
        in.riemann = add(n, in.riemann, tensor::kulkarni_nomizu(n, s, random_sym(n, rng, 1.0)), 0.5);
        in.riemann = add(n, in.riemann, tensor::kulkarni_nomizu(n, s, s), 0.25);
    }
    const auto [ric, r] = ricci_of(n, in.riemann, in.inv);
    in.ricci = ric;
    in.scalar = r;
    return in;
}

// Gauss equation for the graph of f in M x R: Rm' = Rm + (Hess f o Hess f) / (2w).
PointRiem deformed_weyl_oracle(const EPointInput& in) {
    const int n = in.n;
    Mat gp{};
    double grad2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            at(gp, i, j) = at(in.g, i, j) + in.df[i] * in.df[j];
            grad2 += at(in.inv, i, j) * in.df[i] * in.df[j];
        }
    Mat ginv{};
    double det = 0.0;
    REQUIRE(tensor::spd_inverse(n, gp, ginv, det));
    const PointRiem rm = add(n, in.riemann, tensor::kulkarni_nomizu(n, in.hessian, in.hessian), 0.5 / (1.0 + grad2));
    return point_weyl(n, rm, gp, ginv);
}

double combined_residual(const EPointInput& in, const WeylErrorOptions& o, double* scale = nullptr) {
    const int n = in.n;
    const int ns = RiemannIndex::get(n).slot_count();
    const auto blocks = weyl_error_blocks(in);
    const PointRiem w = point_weyl(n, in.riemann, in.g, in.inv);
    const PointRiem oracle = deformed_weyl_oracle(in);
    double res = 0.0, mag = 0.0;
    for (int s = 0; s < ns; ++s) {
        double e = 0.0;
        for (int k = 0; k < kEBlockCount; ++k) e += o.signs[k] * blocks[k][s];
        res = std::max(res, std::abs(w[s] + e - oracle[s]));
        mag = std::max(mag, std::abs(oracle[s] - w[s]));
    }
    if (scale) *scale = mag;
    return res;
}

// Blocks straight from the printed index expressions with explicit p, q sums.
std::array<PointRiem, kEBlockCount> naive_blocks(const EPointInput& in) {
    const int n = in.n;
    const auto& idx = RiemannIndex::get(n);
    const auto& g = in.g;
    const auto& gi = in.inv;
    const auto& h = in.hessian;
    const auto& f = in.df;
    tensor::Vec fu{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) fu[i] += at(gi, i, j) * f[j];
    double grad2 = 0.0, lap = 0.0, hess2 = 0.0, ricff = 0.0, hff = 0.0, hf2 = 0.0;
    for (int i = 0; i < n; ++i) grad2 += f[i] * fu[i];
    const double w = 1.0 + grad2;
    // f^p_k = g^pq f_qk
    auto hup = [&](int p, int k) {
        double s = 0.0;
        for (int q = 0; q < n; ++q) s += at(gi, p, q) * at(h, q, k);
        return s;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            lap += at(gi, i, j) * at(h, i, j);
            ricff += fu[i] * at(in.ricci, i, j) * fu[j];
            hff += fu[i] * at(h, i, j) * fu[j];
            hess2 += hup(i, j) * hup(j, i);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int p = 0; p < n; ++p)
                for (int q = 0; q < n; ++q) hf2 += at(h, i, p) * fu[p] * at(gi, i, j) * at(h, j, q) * fu[q];
    auto rm = [&](int a, int b, int c, int d) { return tensor::component(n, in.riemann, a, b, c, d); };
    auto P = [&](int a, int b) { return at(g, a, b) + f[a] * f[b]; };
    auto hh = [&](int a, int b) {
        double s = 0.0;
        for (int p = 0; p < n; ++p) s += at(h, a, p) * hup(p, b);
        return s;
    };
    const double n1 = n - 1.0, n2 = n - 2.0;
    std::array<PointRiem, kEBlockCount> b{};
    for (int s = 0; s < idx.slot_count(); ++s) {
        const auto [i, j, k, t] = idx.indices(s);
        const double gg = at(g, i, k) * at(g, j, t) - at(g, i, t) * at(g, j, k);
        const double gff = at(g, i, k) * f[j] * f[t] - at(g, i, t) * f[j] * f[k] + at(g, j, t) * f[i] * f[k] -
                           at(g, j, k) * f[i] * f[t];
        const auto& R = in.ricci;
        b[0][s] = (at(h, i, k) * at(h, j, t) - at(h, i, t) * at(h, j, k)) / w;
        b[1][s] = (at(R, i, k) * f[j] * f[t] - at(R, i, t) * f[j] * f[k] + at(R, j, t) * f[i] * f[k] -
                   at(R, j, k) * f[i] * f[t]) / n2;
        b[2][s] = in.scalar * gff / (n1 * n2);
        double s3 = 0.0, s8 = 0.0, s9 = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                const double ff = fu[p] * fu[q];
                s3 += ff * (rm(i, p, k, q) * P(j, t) - rm(i, p, t, q) * P(j, k) + rm(j, p, t, q) * P(i, k) -
                            rm(j, p, k, q) * P(i, t));
                s8 += ff * ((at(h, i, k) * at(h, p, q) - at(h, i, p) * at(h, k, q)) * P(j, t) -
                            (at(h, i, t) * at(h, p, q) - at(h, i, p) * at(h, t, q)) * P(j, k));
                s9 += ff * ((at(h, j, t) * at(h, p, q) - at(h, j, p) * at(h, t, q)) * P(i, k) -
                            (at(h, j, k) * at(h, p, q) - at(h, j, p) * at(h, k, q)) * P(i, t));
            }
        b[3][s] = s3 / (w * n2);
        b[4][s] = -2.0 * ricff * (gg + gff) / (w * n1 * n2);
        b[5][s] = -((lap * at(h, i, k) - hh(i, k)) * P(j, t) - (lap * at(h, i, t) - hh(i, t)) * P(j, k)) / (w * n2);
        b[6][s] = -((lap * at(h, j, t) - hh(j, t)) * P(i, k) - (lap * at(h, j, k) - hh(j, k)) * P(i, t)) / (w * n2);
        b[7][s] = (lap * lap - hess2) * (gg + gff) / (w * n1 * n2);
        b[8][s] = s8 / (w * w * n2);
        b[9][s] = s9 / (w * w * n2);
        b[10][s] = -2.0 * (lap * hff - hf2) * gg / (w * w * n1 * n2);
        b[11][s] = -2.0 * (lap * hff - hf2) * gff / (w * w * n1 * n2);
    }
    return b;
}

}  // namespace

TEST_CASE("E blocks match a naive index-loop transcription") {
    for (int n = 3; n <= 6; ++n) {
        const auto in = random_input(n, 100 + n);
        const auto fast = weyl_error_blocks(in);
        const auto ref = naive_blocks(in);
        const int ns = RiemannIndex::get(n).slot_count();
        for (int k = 0; k < kEBlockCount; ++k) {
            double diff = 0.0, mag = 0.0;
            for (int s = 0; s < ns; ++s) {
                diff = std::max(diff, std::abs(fast[k][s] - ref[k][s]));
                mag = std::max(mag, std::abs(ref[k][s]));
            }
            INFO("n = " << n << " block " << eblock_name(k));
            CHECK(diff <= 1e-12 * std::max(1.0, mag));
        }
    }
}

TEST_CASE("W + E(f) equals the Weyl tensor of the deformed metric pointwise") {
    for (int n = 3; n <= 6; ++n)
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto in = random_input(n, 7 * seed + n);
            double scale = 0.0;
            const double res = combined_residual(in, {}, &scale);
            INFO("n = " << n << " seed " << seed);
            CHECK(res <= 1e-11 * std::max(1.0, scale));
        }
}

TEST_CASE("printed Ricci-block sign misses the Gauss-equation oracle") {
    const auto in = random_input(4, 42);
    double scale = 0.0;
    combined_residual(in, {}, &scale);
    CHECK(combined_residual(in, WeylErrorOptions::as_printed()) > 1e-3 * scale);
}

TEST_CASE("flipping any single block breaks the pointwise identity") {
    for (int n = 4; n <= 5; ++n) {
        const auto in = random_input(n, 900 + n);
        double scale = 0.0;
        combined_residual(in, {}, &scale);
        for (int k = 0; k < kEBlockCount; ++k) {
            INFO("n = " << n << " block " << eblock_name(k));
            CHECK(combined_residual(in, WeylErrorOptions::flipped(k)) > 1e-6 * scale);
        }
    }
}

TEST_CASE("deformation algebra closed forms") {
    const Chart chart = make_cubic_chart(4, 8, 1.0);
    const MetricField g = testing::random_metric(chart, 0.1, 3);
    const ScalarField f = testing::random_smooth(chart, 0.0, 0.2, 4);
    const auto d = deform(g, f);
    const auto rep = deformation_algebra_residual(d);
    CHECK(rep.determinant < 1e-12);
    CHECK(rep.inverse < 1e-12);
}

TEST_CASE("closed-form deformed scalar curvature converges to the direct one") {
    auto run = [](int N) {
        const Chart chart = make_cubic_chart(3, N, 1.0);
        const MetricField g = testing::random_metric(chart, 0.05, 11);
        const ScalarField f = testing::random_smooth(chart, 0.0, 0.02, 12);
        const auto d = deform(g, f);
        const ScalarField closed = deformed_scalar_closed_form(d);
        const auto direct = curvature(d.deformed_metric());
        double e = 0.0;
        for (std::size_t p = 0; p < chart.point_count(); ++p)
            e = std::max(e, std::abs(closed.at(0, p) - direct.scalar.at(0, p)));
        return e;
    };
    const double e16 = run(16), e32 = run(32);
    CHECK(testing::order(e16, e32, 2.0) > 3.5);
}

TEST_CASE("scalar divergence identity integrates to zero") {
    const Chart chart = make_cubic_chart(4, 10, 1.0);
    const MetricField g = testing::random_metric(chart, 0.05, 21);
    const ScalarField f = testing::random_smooth(chart, 0.0, 0.05, 22);
    const auto rep = scalar_divergence_identity(deform(g, f));
    CHECK(rep.integral < 1e-12 * rep.scale);
}

TEST_CASE("radial and direct deformed norms agree on a flat metric") {
    const Chart chart = make_cubic_chart(4, 8, 1.0);
    const MetricField g = flat_metric(chart);
    std::array<double, kMaxDim> c{};
    for (int a = 0; a < 4; ++a) c[a] = 0.5;
    ScalarField phi(chart);
    for (std::size_t p = 0; p < chart.point_count(); ++p) {
        const auto x = chart.displacement(p, c);
        double r2 = 0.0;
        for (int a = 0; a < 4; ++a) r2 += x[a] * x[a];
        phi.at(0, p) = r2;
    }
    // Exact radial gradient 2x.
    CovectorField dphi(chart);
    for (std::size_t p = 0; p < chart.point_count(); ++p) {
        const auto x = chart.displacement(p, c);
        for (int a = 0; a < 4; ++a) dphi.at(a, p) = 2.0 * x[a];
    }
    const MetricField h = testing::random_metric(chart, 0.2, 5);
    const Riem4Field t = curvature(h).riemann;
    const ScalarField direct = deformed_norm(t, g, dphi, 0.7);
    const ScalarField radial = deformed_norm_radial(t, g, dphi, 0.7, c);
    for (std::size_t p = 0; p < chart.point_count(); ++p)
        CHECK(radial.at(0, p) == doctest::Approx(direct.at(0, p)).epsilon(1e-12));
}

TEST_CASE("lemma a2 rejects non-positive t") {
    const Chart chart = make_cubic_chart(4, 8, 1.0);
    const MetricField g = flat_metric(chart);
    const ScalarField phi = testing::random_smooth(chart, 0.0, 0.1, 1);
    CHECK_THROWS_AS(lemma_a2_lhs(g, phi, 0.0), PreconditionError);
    CHECK_THROWS_AS(lemma_a2_lhs(g, phi, -1.0), PreconditionError);
}
