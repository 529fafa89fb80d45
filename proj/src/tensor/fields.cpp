#include "swc/tensor/fields.hpp"

#include "swc/parallel.hpp"

#include <algorithm>
#include <mutex>

namespace swc {

tensor::PointRiem riem_at(const Riem4Field& t, std::size_t p) {
    tensor::PointRiem v{};
    for (int s = 0; s < t.components(); ++s) v[s] = t.at(s, p);
    return v;
}

void store_riem(Riem4Field& t, std::size_t p, const tensor::PointRiem& v) {
    for (int s = 0; s < t.components(); ++s) t.at(s, p) = v[s];
}

namespace {

tensor::Mat sym_at(const Sym2Field& f, std::size_t p) {
    tensor::Mat m{};
    const int n = f.dim();
    for (int i = 0, s = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++s) {
            tensor::at(m, i, j) = f.at(s, p);
            tensor::at(m, j, i) = f.at(s, p);
        }
    return m;
}

}  // namespace

Riem4Field kulkarni_nomizu(const Sym2Field& a, const Sym2Field& b) {
    Riem4Field out(a.chart());
    const int n = a.dim();
    parallel_for(a.points(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p)
            store_riem(out, p, tensor::kulkarni_nomizu(n, sym_at(a, p), sym_at(b, p)));
    });
    return out;
}

ScalarField riemann_norm(const Riem4Field& t, const Sym2Field& inverse) {
    ScalarField out(t.chart());
    const int n = t.dim();
    parallel_for(t.points(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p)
            out.at(0, p) = tensor::riemann_norm(n, riem_at(t, p), sym_at(inverse, p));
    });
    return out;
}

ScalarField riemann_norm(const Riem4Field& t, const MetricField& g) {
    return riemann_norm(t, g.inverse());
}

double validate_riemann_symmetries(const Riem4Field& t) {
    double worst = 0.0;
    std::mutex mu;
    parallel_for(t.points(), [&](std::size_t begin, std::size_t end) {
        double local = 0.0;
        for (std::size_t p = begin; p < end; ++p)
            local = std::max(local, tensor::bianchi_violation(t.dim(), riem_at(t, p)));
        std::lock_guard lock(mu);
        worst = std::max(worst, local);
    });
    return worst;
}

}  // namespace swc
