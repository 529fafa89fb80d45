#include "report.hpp"

#include "swc/error.hpp"
#include "swc/grid/ops.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace swc::cli {

json field_summary(const ScalarField& f, const MetricField& g) {
    const auto v = f.component(0);
    const ScalarField one(f.chart(), 1.0);
    return json{{"min", *std::ranges::min_element(v)},
                {"max", *std::ranges::max_element(v)},
                {"mean", integrate(f, g) / integrate(one, g)}};
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void Stopwatch::lap(const std::string& name) {
    const auto now = clock::now();
    laps_[name] = std::chrono::duration<double>(now - last_).count();
    last_ = now;
}

void Stopwatch::write(const std::filesystem::path& dir) const {
    write_json(dir / "timing.json", laps_);
}

json convergence_order(double coarse, double fine, double ratio, double floor) {
    if (fine <= floor) return nullptr;
    return std::log(coarse / fine) / std::log(ratio);
}

void ClaimList::add(const std::string& name, double reported, double recomputed) {
    const double diff = std::abs(reported - recomputed);
    const double mag = std::max(std::abs(reported), std::abs(recomputed));
    const bool ok = reported == recomputed || diff <= tolerance_ * mag;
    ok_ = ok_ && ok;
    claims_.push_back(json{{"claim", name}, {"reported", reported}, {"recomputed", recomputed}, {"ok", ok}});
}

void ClaimList::add(const std::string& name, const json& reported, const json& recomputed) {
    if (reported.is_number() && recomputed.is_number()) {
        add(name, reported.get<double>(), recomputed.get<double>());
        return;
    }
    const bool ok = reported == recomputed;
    ok_ = ok_ && ok;
    claims_.push_back(json{{"claim", name}, {"reported", reported}, {"recomputed", recomputed}, {"ok", ok}});
}

void ClaimList::add_tree(const std::string& prefix, const json& reported, const json& recomputed) {
    if (reported.is_structured() && reported.type() == recomputed.type() && reported.size() == recomputed.size()) {
        if (reported.is_object()) {
            for (const auto& [key, value] : reported.items()) {
                if (!recomputed.contains(key)) {
                    add(prefix + "." + key, value, nullptr);
                    continue;
                }
                add_tree(prefix + "." + key, value, recomputed[key]);
            }
        } else {
            for (std::size_t i = 0; i < reported.size(); ++i)
                add_tree(prefix + "[" + std::to_string(i) + "]", reported[i], recomputed[i]);
        }
        return;
    }
    add(prefix, reported, recomputed);
}

void ClaimList::require(const std::string& name, bool holds) {
    ok_ = ok_ && holds;
    claims_.push_back(json{{"claim", name}, {"ok", holds}});
}

json ClaimList::to_json() const {
    return json{{"tolerance", tolerance_}, {"ok", ok_}, {"claims", claims_}};
}

}  // namespace swc::cli
