#pragma once

#include "swc/grid/field.hpp"

#include <algorithm>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

/// WFLD v1 binary field files.
///
/// Header: magic "WFLD", u32 version (1), u32 n, u32 sizes[n], f64 lengths[n],
/// u32 component count. Body: little-endian f64, point-major, components in
/// storage order (lexicographic i <= j for symmetric fields).
namespace swc::wfld {

struct RawField {
    Chart chart;
    int components = 0;
    /// Component-major values, components * point_count entries.
    std::vector<double> values;
};

void write_raw(const std::filesystem::path& path, const Chart& chart, int components,
               std::span<const double> component_major);
RawField read_raw(const std::filesystem::path& path);

[[noreturn]] void throw_component_mismatch(const std::filesystem::path& path, int got, int expected);

template <FieldKind K>
void write(const std::filesystem::path& path, const TensorField<K>& f) {
    write_raw(path, f.chart(), f.components(), f.raw());
}

/// Throws InputError on malformed files or a component-count mismatch.
template <FieldKind K>
TensorField<K> read(const std::filesystem::path& path) {
    RawField raw = read_raw(path);
    TensorField<K> f(raw.chart);
    if (raw.components != f.components())
        throw_component_mismatch(path, raw.components, f.components());
    std::copy(raw.values.begin(), raw.values.end(), f.raw().begin());
    return f;
}

}  // namespace swc::wfld
