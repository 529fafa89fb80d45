#include "swc/grid/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace swc {

RiemannIndex::RiemannIndex(int n) : n_(n), np_(n * (n - 1) / 2), ns_(np_ * (np_ + 1) / 2) {
    pair_of_.assign(n * n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            pair_of_[a * n + b] = pair_of_[b * n + a] = static_cast<int>(pairs_.size());
            pairs_.push_back({a, b});
        }
    slots_.resize(ns_);
    std::vector<int> hits(ns_, 0);
    for (int p = 0; p < np_; ++p)
        for (int q = p; q < np_; ++q) {
            const int s = slot_of_pairs(p, q);
            if (s < 0 || s >= ns_) throw std::logic_error("riemann index map out of range");
            ++hits[s];
            slots_[s] = {pairs_[p][0], pairs_[p][1], pairs_[q][0], pairs_[q][1]};
        }
    for (int h : hits)
        if (h != 1) throw std::logic_error("riemann index map is not a bijection");

    table_.assign(n * n * n * n, Entry{0, 0.0});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    if (a == b || c == d) continue;
                    const int s = slot_of_pairs(pair_of_[a * n + b], pair_of_[c * n + d]);
                    table_[((a * n + b) * n + c) * n + d] = {s, pair_sign(a, b) * pair_sign(c, d)};
                }
}

const RiemannIndex& RiemannIndex::get(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<RiemannIndex>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) slot.reset(new RiemannIndex(n));
    return *slot;
}

int component_count(FieldKind kind, int n) {
    switch (kind) {
        case FieldKind::scalar:
            return 1;
        case FieldKind::covector:
            return n;
        case FieldKind::sym2:
            return sym_count(n);
        case FieldKind::riem4:
            return RiemannIndex::get(n).slot_count();
        case FieldKind::christoffel:
            return n * sym_count(n);
    }
    return 0;
}

}  // namespace swc
