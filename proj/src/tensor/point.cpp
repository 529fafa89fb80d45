#include "swc/tensor/point.hpp"

#include "swc/error.hpp"
#include "swc/grid/field.hpp"

#include <algorithm>
#include <cmath>

namespace swc::tensor {

Mat unpack_sym(int n, std::span<const double> sym) {
    Mat m{};
    int s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j, ++s) {
            at(m, i, j) = sym[s];
            at(m, j, i) = sym[s];
        }
    return m;
}

bool spd_inverse(int n, const Mat& a, Mat& inv, double& det) {
    Mat l{};
    det = 1.0;
    for (int j = 0; j < n; ++j) {
        double d = at(a, j, j);
        for (int k = 0; k < j; ++k) d -= at(l, j, k) * at(l, j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        at(l, j, j) = ljj;
        det *= d;
        for (int i = j + 1; i < n; ++i) {
            double s = at(a, i, j);
            for (int k = 0; k < j; ++k) s -= at(l, i, k) * at(l, j, k);
            at(l, i, j) = s / ljj;
        }
    }
    // inv = L^-T L^-1, built column by column from unit vectors.
    Mat linv{};
    for (int c = 0; c < n; ++c) {
        for (int i = 0; i < n; ++i) {
            double s = (i == c) ? 1.0 : 0.0;
            for (int k = c; k < i; ++k) s -= at(l, i, k) * at(linv, k, c);
            at(linv, i, c) = s / at(l, i, i);
        }
    }
    inv = Mat{};
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = std::max(i, j); k < n; ++k) s += at(linv, k, i) * at(linv, k, j);
            at(inv, i, j) = s;
            at(inv, j, i) = s;
        }
    return true;
}

double lu_determinant(int n, Mat a) {
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(at(a, r, c)) > std::abs(at(a, piv, c))) piv = r;
        if (at(a, piv, c) == 0.0) return 0.0;
        if (piv != c) {
            for (int k = 0; k < n; ++k) std::swap(at(a, c, k), at(a, piv, k));
            det = -det;
        }
        det *= at(a, c, c);
        for (int r = c + 1; r < n; ++r) {
            const double m = at(a, r, c) / at(a, c, c);
            for (int k = c; k < n; ++k) at(a, r, k) -= m * at(a, c, k);
        }
    }
    return det;
}

PointMetric make_point_metric(int n, const Mat& g) {
    PointMetric pm;
    pm.n = n;
    pm.g = g;
    if (!spd_inverse(n, g, pm.inv, pm.det)) throw InputError("metric is not symmetric positive definite");
    return pm;
}

PointRiem kulkarni_nomizu(int n, const Mat& a, const Mat& b) {
    const auto& idx = RiemannIndex::get(n);
    PointRiem t{};
    for (int s = 0; s < idx.slot_count(); ++s) {
        const auto [i, j, k, l] = idx.indices(s);
        t[s] = at(a, i, k) * at(b, j, l) + at(a, j, l) * at(b, i, k) - at(a, i, l) * at(b, j, k) -
               at(a, j, k) * at(b, i, l);
    }
    return t;
}

double riemann_norm_sq(int n, const PointRiem& t, const Mat& inv) {
    const auto& idx = RiemannIndex::get(n);
    const int np = idx.pair_count();
    // Pair-space form: |T|^2 = 4 tr(T G T G), G^{PQ} = g^ac g^bd - g^ad g^bc.
    std::array<double, 15 * 15> tm{}, gm{}, m{};
    for (int p = 0; p < np; ++p) {
        const auto [a, b] = idx.pair_indices(p);
        for (int q = 0; q < np; ++q) {
            const auto [c, d] = idx.pair_indices(q);
            gm[p * np + q] = at(inv, a, c) * at(inv, b, d) - at(inv, a, d) * at(inv, b, c);
            tm[p * np + q] = t[idx.slot_of_pairs(p, q)];
        }
    }
    for (int p = 0; p < np; ++p)
        for (int q = 0; q < np; ++q) {
            double s = 0.0;
            for (int r = 0; r < np; ++r) s += tm[p * np + r] * gm[r * np + q];
            m[p * np + q] = s;
        }
    double tr = 0.0;
    for (int p = 0; p < np; ++p)
        for (int q = 0; q < np; ++q) tr += m[p * np + q] * m[q * np + p];
    return 4.0 * tr;
}

double riemann_norm(int n, const PointRiem& t, const Mat& inv) {
    return std::sqrt(std::max(0.0, riemann_norm_sq(n, t, inv)));
}

double component(int n, const PointRiem& t, int a, int b, int c, int d) {
    const auto e = RiemannIndex::get(n).at(a, b, c, d);
    return e.sign == 0.0 ? 0.0 : e.sign * t[e.slot];
}

std::array<double, kMaxDim * kMaxDim * kMaxDim * kMaxDim> to_dense(int n, const PointRiem& t) {
    std::array<double, kMaxDim * kMaxDim * kMaxDim * kMaxDim> d{};
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e) d[((a * n + b) * n + c) * n + e] = component(n, t, a, b, c, e);
    return d;
}

double symmetry_violation(int n, std::span<const double> dense) {
    auto T = [&](int a, int b, int c, int d) { return dense[((a * n + b) * n + c) * n + d]; };
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const double v = T(a, b, c, d);
                    worst = std::max(worst, std::abs(v + T(b, a, c, d)));
                    worst = std::max(worst, std::abs(v + T(a, b, d, c)));
                    worst = std::max(worst, std::abs(v - T(c, d, a, b)));
                    worst = std::max(worst, std::abs(v + T(a, c, d, b) + T(a, d, b, c)));
                }
    return worst;
}

double bianchi_violation(int n, const PointRiem& t) {
    double worst = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    const double s = component(n, t, a, b, c, d) + component(n, t, a, c, d, b) +
                                     component(n, t, a, d, b, c);
                    worst = std::max(worst, std::abs(s));
                }
    return worst;
}

namespace {

// Parity of the permutation taking the sorted quadruple to (a, b, c, d).
double parity(std::array<int, 4> v) {
    double s = 1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (v[i] > v[j]) s = -s;
    return s;
}

}  // namespace

void project_bianchi(int n, PointRiem& t) {
    if (n < 4) return;
    const auto& idx = RiemannIndex::get(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    const double alt = (component(n, t, a, b, c, d) + component(n, t, a, c, d, b) +
                                        component(n, t, a, d, b, c)) /
                                       3.0;
                    for (auto [p, q, r, s] : {std::array{a, b, c, d}, std::array{a, c, b, d},
                                              std::array{a, d, b, c}}) {
                        const int slot = idx.slot_of_pairs(idx.pair(p, q), idx.pair(r, s));
                        t[slot] -= parity({p, q, r, s}) * alt;
                    }
                }
}

Frame complete_frame(int n, const Vec& u) {
    Frame e{};
    e[0] = u;
    // Skip the standard basis vector most aligned with u.
    int skip = 0;
    for (int a = 1; a < n; ++a)
        if (std::abs(u[a]) > std::abs(u[skip])) skip = a;
    int m = 1;
    for (int a = 0; a < n && m < n; ++a) {
        if (a == skip) continue;
        Vec v{};
        v[a] = 1.0;
        for (int b = 0; b < m; ++b) {
            double d = 0.0;
            for (int i = 0; i < n; ++i) d += v[i] * e[b][i];
            for (int i = 0; i < n; ++i) v[i] -= d * e[b][i];
        }
        double nv = 0.0;
        for (int i = 0; i < n; ++i) nv += v[i] * v[i];
        nv = std::sqrt(nv);
        for (int i = 0; i < n; ++i) v[i] /= nv;
        e[m++] = v;
    }
    return e;
}

Dense4 frame_components(int n, const PointRiem& t, const Frame& e) {
    const int n4 = n * n * n * n;
    Dense4 cur = to_dense(n, t);
    Dense4 nxt{};
    // Contract one slot at a time.
    for (int slot = 0; slot < 4; ++slot) {
        int stride = 1;
        for (int s = slot + 1; s < 4; ++s) stride *= n;
        for (int lin = 0; lin < n4; ++lin) {
            const int a = (lin / stride) % n;
            const int base = lin - a * stride;
            double v = 0.0;
            for (int i = 0; i < n; ++i) v += e[a][i] * cur[base + i * stride];
            nxt[lin] = v;
        }
        cur = nxt;
    }
    return cur;
}

}  // namespace swc::tensor
