// export.cpp

#include "qsync/export.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "qsync/version.hpp"

namespace qsync {

namespace {

void append_double(std::string& out, double value) {
    if (!std::isfinite(value)) throw std::domain_error("refusing to serialize a non-finite value");
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("float formatting failed");
    out.append(buf, ptr);
}

std::string render_header(std::span<const std::string> columns) {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out.push_back(',');
        out += columns[c];
    }
    out.push_back('\n');
    return out;
}

std::string render_rows(std::size_t width, std::span<const double> data) {
    if (width == 0 || data.size() % width != 0) throw std::invalid_argument("table data is not rectangular");
    std::string out;
    out.reserve(data.size() * 12);
    for (std::size_t i = 0; i < data.size(); ++i) {
        append_double(out, data[i]);
        out.push_back((i + 1) % width == 0 ? '\n' : ',');
    }
    return out;
}

std::size_t emit(std::ostream& out, const std::string& text) {
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("write failed");
    return text.size();
}

template <typename Writer>
std::size_t to_destination(const std::string& destination, Writer&& writer) {
    if (destination == "-") return writer(std::cout);
    std::ofstream file(destination, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + destination + "' for writing");
    const std::size_t n = writer(file);
    file.close();
    if (!file) throw IoError("failed to write '" + destination + "'");
    return n;
}

} // namespace

std::string format_double(double value) {
    std::string out;
    append_double(out, value);
    return out;
}

std::size_t write_csv(std::span<const std::string> columns, std::span<const double> data, std::ostream& out) {
    std::string text = render_header(columns);
    text += render_rows(columns.size(), data);
    return emit(out, text);
}

std::size_t write_long_csv(const GridResult& result, std::ostream& out) {
    return write_csv(result.columns, result.data, out);
}

std::size_t write_matrix(const GridResult& result, std::ostream& out) {
    if (result.axis_count != 2 || result.grid.axes.size() != 2)
        throw std::invalid_argument("matrix output needs exactly 2 axes, got " + std::to_string(result.axis_count));
    const std::size_t n_outer = result.grid.axes[0].count;
    const std::size_t n_inner = result.grid.axes[1].count;
    if (result.rows() != n_outer * n_inner) throw std::invalid_argument("matrix output: row count mismatch");

    std::string text;
    for (std::size_t j = 0; j < n_inner; ++j) {
        text.push_back(',');
        append_double(text, result.row(j)[1]);
    }
    text.push_back('\n');
    for (std::size_t i = 0; i < n_outer; ++i) {
        append_double(text, result.row(i * n_inner)[0]);
        for (std::size_t j = 0; j < n_inner; ++j) {
            text.push_back(',');
            append_double(text, result.value(i * n_inner + j));
        }
        text.push_back('\n');
    }
    return emit(out, text);
}

std::size_t write_result(const GridResult& result, const std::string& destination, TableFormat format) {
    return to_destination(destination, [&](std::ostream& os) {
        return format == TableFormat::matrix ? write_matrix(result, os) : write_long_csv(result, os);
    });
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) noexcept {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t grid_hash(const GridResult& result) {
    if (result.width() == 0) return fnv1a64({});
    return fnv1a64(render_rows(result.width(), result.data));
}

std::string hash_hex(std::uint64_t hash) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, hash >>= 4) out[static_cast<std::size_t>(i)] = digits[hash & 0xf];
    return out;
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

RunMetadata make_metadata(const GridResult& result) {
    RunMetadata meta;
    meta.preset_id = result.grid.preset_id;
    meta.grid = result.grid;
    meta.rows = result.rows();
    meta.columns = result.columns;
    meta.tool_version = kVersion;
    meta.grid_hash = grid_hash(result);
    meta.timestamp = iso8601_now();
    return meta;
}

std::string metadata_json(const RunMetadata& meta) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["tool"] = "qsync";
    j["version"] = meta.tool_version;
    j["preset"] = meta.preset_id.empty() ? ordered_json(nullptr) : ordered_json(meta.preset_id);
    j["observable"] = std::string(to_string(meta.grid.observable));

    ordered_json axes = ordered_json::array();
    for (const auto& a : meta.grid.axes) {
        axes.push_back({{"name", std::string(to_string(a.name))},
                        {"min", a.min},
                        {"max", a.max},
                        {"count", a.count},
                        {"scale", std::string(to_string(a.scale))}});
    }
    j["axes"] = axes;

    ordered_json fixed = ordered_json::object();
    for (const auto& [p, v] : meta.grid.fixed) fixed[std::string(to_string(p))] = v;
    j["fixed"] = fixed;
    j["initial_state"] = {{"rho11", meta.grid.initial.rho11},
                          {"re_rho10", meta.grid.initial.rho10.real()},
                          {"im_rho10", meta.grid.initial.rho10.imag()}};
    j["units"] = "rates in gamma0, time as gamma0*t";
    j["columns"] = meta.columns;
    j["rows"] = meta.rows;
    j["hash_algorithm"] = kGridHashAlgorithm;
    j["grid_hash"] = hash_hex(meta.grid_hash);
    j["timestamp"] = meta.timestamp;
    return j.dump(2) + "\n";
}

FigureFiles write_figure(const GridResult& result, const std::filesystem::path& directory) {
    const std::string id = result.grid.preset_id.empty() ? std::string("grid") : result.grid.preset_id;
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw IoError("cannot create directory '" + directory.string() + "': " + ec.message());

    FigureFiles files;
    files.csv = directory / (id + ".csv");
    files.meta = directory / (id + ".meta.json");
    write_result(result, files.csv.string());

    const RunMetadata meta = make_metadata(result);
    files.grid_hash = meta.grid_hash;
    const std::string json = metadata_json(meta);
    to_destination(files.meta.string(), [&](std::ostream& os) { return emit(os, json); });
    return files;
}

} // namespace qsync
