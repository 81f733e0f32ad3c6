// export.hpp — CSV / matrix / metadata serialization of sweep results

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "qsync/errors.hpp"
#include "qsync/sweep.hpp"

namespace qsync {

// Shortest decimal that parses back to the same double (at most 17
// significant digits). Throws std::domain_error for NaN or infinity.
std::string format_double(double value);

// Generic table writer: header line, then one line per row, LF endings.
// The writers below return the number of bytes emitted.
// data is row-major with columns.size() entries per row.
std::size_t write_csv(std::span<const std::string> columns, std::span<const double> data, std::ostream& out);

// Long format: columns of result.columns, one line per grid point.
// Throws std::domain_error on non-finite values and IoError on stream failure.
std::size_t write_long_csv(const GridResult& result, std::ostream& out);

// Matrix format for 2-D grids. The first line holds an empty corner cell and
// the inner-axis values; each further line is an outer-axis value followed by
// the first value column. Throws std::invalid_argument unless the grid is 2-D.
std::size_t write_matrix(const GridResult& result, std::ostream& out);

enum class TableFormat { long_form, matrix };

// Writes to a file, or to stdout when destination is "-".
std::size_t write_result(const GridResult& result, const std::string& destination,
                         TableFormat format = TableFormat::long_form);

// 64-bit FNV-1a over the canonical data-row bytes (the long CSV without its
// header line).
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL) noexcept;
std::uint64_t grid_hash(const GridResult& result);
std::string hash_hex(std::uint64_t hash);

struct RunMetadata {
    std::string preset_id;
    SweepGrid grid;
    std::size_t rows{0};
    std::vector<std::string> columns;
    std::string tool_version;
    std::uint64_t grid_hash{0};
    std::string timestamp;  // ISO-8601 UTC
};

RunMetadata make_metadata(const GridResult& result);
std::string metadata_json(const RunMetadata& meta);

std::string iso8601_now();

struct FigureFiles {
    std::filesystem::path csv;
    std::filesystem::path meta;
    std::uint64_t grid_hash{0};
};

// Writes <dir>/<id>.csv and <dir>/<id>.meta.json, creating dir if needed.
FigureFiles write_figure(const GridResult& result, const std::filesystem::path& directory);

} // namespace qsync
