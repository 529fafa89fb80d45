#include "swc/grid/wfld.hpp"

#include "swc/error.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace swc::wfld {

namespace {

static_assert(std::endian::native == std::endian::little, "WFLD I/O assumes a little-endian host");

constexpr char kMagic[4] = {'W', 'F', 'L', 'D'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in, const std::filesystem::path& path) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(T)))
        throw InputError("WFLD file truncated: " + path.string());
    return v;
}

}  // namespace

void write_raw(const std::filesystem::path& path, const Chart& chart, int components,
               std::span<const double> component_major) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open for writing: " + path.string());
    out.write(kMagic, 4);
    put<std::uint32_t>(out, kVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(chart.dim()));
    for (int a = 0; a < chart.dim(); ++a) put<std::uint32_t>(out, static_cast<std::uint32_t>(chart.size(a)));
    for (int a = 0; a < chart.dim(); ++a) put<double>(out, chart.length(a));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(components));
    const std::size_t np = chart.point_count();
    std::vector<double> row(components);
    for (std::size_t p = 0; p < np; ++p) {
        for (int c = 0; c < components; ++c) row[c] = component_major[c * np + p];
        out.write(reinterpret_cast<const char*>(row.data()), sizeof(double) * components);
    }
    if (!out) throw InputError("write failed: " + path.string());
}

RawField read_raw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open: " + path.string());
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw InputError("not a WFLD file: " + path.string());
    const auto version = get<std::uint32_t>(in, path);
    if (version != kVersion) throw InputError("unsupported WFLD version in " + path.string());
    const auto n = static_cast<int>(get<std::uint32_t>(in, path));
    if (n < 3 || n > kMaxDim) throw InputError("WFLD dimension out of range in " + path.string());
    std::vector<int> sizes(n);
    std::vector<double> lengths(n);
    for (auto& s : sizes) s = static_cast<int>(get<std::uint32_t>(in, path));
    for (auto& l : lengths) l = get<double>(in, path);
    RawField raw;
    try {
        raw.chart = make_chart(n, sizes, lengths);
    } catch (const ConfigError& e) {
        throw InputError(std::string("WFLD header: ") + e.what());
    }
    raw.components = static_cast<int>(get<std::uint32_t>(in, path));
    const std::size_t np = raw.chart.point_count();
    raw.values.assign(static_cast<std::size_t>(raw.components) * np, 0.0);
    std::vector<double> row(raw.components);
    for (std::size_t p = 0; p < np; ++p) {
        if (!in.read(reinterpret_cast<char*>(row.data()), sizeof(double) * raw.components))
            throw InputError("WFLD file truncated: " + path.string());
        for (int c = 0; c < raw.components; ++c) raw.values[c * np + p] = row[c];
    }
    return raw;
}

void throw_component_mismatch(const std::filesystem::path& path, int got, int expected) {
    throw InputError("WFLD component count " + std::to_string(got) + " in " + path.string() +
                     ", expected " + std::to_string(expected));
}

}  // namespace swc::wfld
