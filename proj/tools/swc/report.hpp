#pragma once

#include "config.hpp"

#include "swc/grid/metric.hpp"

#include <chrono>
#include <filesystem>
#include <string>

namespace swc::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 2, kVerificationFailure = 3, kSearchFailure = 4 };

/// {min, max, mean} with the mean taken against dV_g.
json field_summary(const ScalarField& f, const MetricField& g);

void write_json(const std::filesystem::path& path, const json& j);
json read_json(const std::filesystem::path& path);

/// Wall-clock seconds go to timing.json so report.json stays byte-identical
/// across runs of the same config.
class Stopwatch {
public:
    void lap(const std::string& name);
    void write(const std::filesystem::path& dir) const;

private:
    using clock = std::chrono::steady_clock;
    clock::time_point last_ = clock::now();
    json laps_ = json::object();
};

/// log2(coarse / fine) for a doubling, or null when the fine value is at rounding level.
json convergence_order(double coarse, double fine, double ratio, double floor);

/// Reported-versus-recomputed comparisons for the recheck command.
class ClaimList {
public:
    explicit ClaimList(double tolerance) : tolerance_(tolerance) {}
    void add(const std::string& name, double reported, double recomputed);
    /// Numbers compare with the tolerance; null only matches null.
    void add(const std::string& name, const json& reported, const json& recomputed);
    /// Leaf-by-leaf comparison of two trees of the same shape.
    void add_tree(const std::string& prefix, const json& reported, const json& recomputed);
    void require(const std::string& name, bool holds);
    bool ok() const { return ok_; }
    json to_json() const;

private:
    double tolerance_;
    bool ok_ = true;
    json claims_ = json::array();
};

}  // namespace swc::cli
