// sweep.hpp — Parameter grids over (delta, gamma, lambda, t, phi, theta) and figure presets

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsync/dynamics.hpp"

namespace qsync {

enum class Parameter { delta, gamma, lambda, t, phi, theta };
enum class Scale { linear, log };
enum class Observable { abs_rho10, q, s, s_max, phi_star, revivals };

std::string_view to_string(Parameter p) noexcept;
std::string_view to_string(Observable o) noexcept;
std::string_view to_string(Scale s) noexcept;
std::optional<Parameter> parse_parameter(std::string_view name) noexcept;
std::optional<Observable> parse_observable(std::string_view name) noexcept;

// Parameters an observable needs to be evaluated, in canonical order.
std::vector<Parameter> required_parameters(Observable o);

// Output value columns for an observable. phi_star carries r alongside so
// consumers can mask points without coherence.
std::vector<std::string> value_columns(Observable o);

struct AxisSpec {
    Parameter name{Parameter::delta};
    double min{0.0};
    double max{1.0};
    std::size_t count{2};
    Scale scale{Scale::linear};

    // Throws std::invalid_argument unless min < max, count >= 2 and, for log
    // scale, min > 0.
    void validate() const;

    // Node values; the first and last nodes are exactly min and max.
    std::vector<double> values() const;

    // "name:min:max:count[:log]"
    static AxisSpec parse(std::string_view text);
};

// phi in [-pi, pi) with count nodes; the periodic endpoint is excluded.
AxisSpec periodic_phi_axis(std::size_t count);

inline constexpr double kMaxGridPoints = 1e8;

// Up to three axes; with no axes the grid is the single point given by fixed.
struct SweepGrid {
    std::vector<AxisSpec> axes;
    std::map<Parameter, double> fixed;
    Observable observable{Observable::s_max};
    InitialState initial{InitialState::plus()};
    std::string preset_id;  // empty for explicit grids

    // Throws std::invalid_argument on overlapping, missing or unused parameters.
    void validate() const;
    std::size_t point_count() const;
};

// Long-format table: one row per grid point, axis values first (declaration
// order) followed by the observable column(s).
struct GridResult {
    SweepGrid grid;
    std::vector<std::string> columns;
    std::size_t axis_count{0};
    std::vector<double> data;  // row-major, rows() * columns.size()

    std::size_t width() const noexcept { return columns.size(); }
    std::size_t rows() const noexcept { return columns.empty() ? 0 : data.size() / columns.size(); }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * width(), width()}; }
    double value(std::size_t i, std::size_t column = 0) const { return data[i * width() + axis_count + column]; }
};

struct SweepOptions {
    unsigned jobs{1};
};

// Evaluates every grid point; rows are ordered row-major in axis declaration
// order (last axis fastest). Output is independent of the job count.
// Throws std::length_error past kMaxGridPoints, std::invalid_argument for an
// invalid grid and std::domain_error if a value comes out non-finite.
GridResult run_sweep(const SweepGrid& grid, const SweepOptions& options = {});

// Named grids for each published figure panel.
SweepGrid figure_preset(std::string_view id);
const std::vector<std::string>& preset_ids();

struct BoundaryPoint {
    double row_value{0.0};  // value of the non-delta axis
    double lower{0.0};      // crossing at delta < 0 side
    double upper{0.0};      // crossing at delta > 0 side
    double width() const noexcept { return upper - lower; }
};

// For each row of a 2-D grid with a delta axis, the delta values where the
// first value column first crosses threshold moving outward from the node
// closest to delta = 0, linearly interpolated. Rows lacking a crossing on
// either side are omitted. Throws std::invalid_argument for non-2-D input.
std::vector<BoundaryPoint> tongue_boundary(const GridResult& result, double threshold);

} // namespace qsync
