#include "swc/grid/metric.hpp"

#include "swc/error.hpp"
#include "swc/parallel.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <string>

namespace swc {

MetricField::MetricField(Sym2Field g) : g_(std::move(g)), inv_(g_.chart()), density_(g_.chart()) {
    const int n = dim();
    const int ns = sym_count(n);
    std::atomic<std::size_t> bad{std::numeric_limits<std::size_t>::max()};
    parallel_for(points(), [&](std::size_t begin, std::size_t end) {
        double sym[21];
        for (std::size_t p = begin; p < end; ++p) {
            for (int s = 0; s < ns; ++s) sym[s] = g_.at(s, p);
            const tensor::Mat m = tensor::unpack_sym(n, {sym, static_cast<std::size_t>(ns)});
            tensor::Mat inv;
            double det = 0.0;
            if (!tensor::spd_inverse(n, m, inv, det)) {
                std::size_t cur = bad.load();
                while (p < cur && !bad.compare_exchange_weak(cur, p)) {
                }
                continue;
            }
            density_.at(0, p) = std::sqrt(det);
            for (int i = 0, s = 0; i < n; ++i)
                for (int j = i; j < n; ++j, ++s) inv_.at(s, p) = tensor::at(inv, i, j);
        }
    });
    if (bad.load() != std::numeric_limits<std::size_t>::max())
        throw InputError("metric is not positive definite at point index " + std::to_string(bad.load()));
}

tensor::Mat MetricField::g_at(std::size_t p) const {
    tensor::Mat m{};
    const int n = dim();
    for (int i = 0, s = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++s) {
            tensor::at(m, i, j) = g_.at(s, p);
            tensor::at(m, j, i) = g_.at(s, p);
        }
    return m;
}

tensor::Mat MetricField::inv_at(std::size_t p) const {
    tensor::Mat m{};
    const int n = dim();
    for (int i = 0, s = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++s) {
            tensor::at(m, i, j) = inv_.at(s, p);
            tensor::at(m, j, i) = inv_.at(s, p);
        }
    return m;
}

tensor::PointMetric MetricField::point(std::size_t p) const {
    tensor::PointMetric pm;
    pm.n = dim();
    pm.g = g_at(p);
    pm.inv = inv_at(p);
    pm.det = density_.at(0, p) * density_.at(0, p);
    return pm;
}

Sym2Field identity_sym2(const Chart& chart) {
    Sym2Field g(chart);
    for (int i = 0; i < chart.dim(); ++i) {
        auto c = g.component(sym_slot(chart.dim(), i, i));
        std::fill(c.begin(), c.end(), 1.0);
    }
    return g;
}

MetricField flat_metric(const Chart& chart) {
    return MetricField(identity_sym2(chart));
}

}  // namespace swc
