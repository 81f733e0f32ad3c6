// sweep.cpp — grid evaluation engine and figure presets

#include "qsync/sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qsync/phasespace.hpp"

namespace qsync {

using std::numbers::pi;

namespace {

constexpr std::array kParameterNames{"delta", "gamma", "lambda", "t", "phi", "theta"};
constexpr std::array kObservableNames{"abs_rho10", "q", "s", "s_max", "phi_star", "revivals"};

constexpr std::size_t kParameterCount = kParameterNames.size();
using PointValues = std::array<double, kParameterCount>;

double parse_double(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw std::invalid_argument("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

// Revival counting samples the trajectory at this spacing (or finer).
constexpr double kRevivalSpacing = 0.01;
constexpr std::size_t kRevivalMinSamples = 1001;

double count_revivals(const InitialState& initial, const BathParams& params, double t_end) {
    if (!(t_end > 0.0)) throw std::invalid_argument("revivals observable needs t > 0");
    const auto samples = std::max(kRevivalMinSamples,
                                  static_cast<std::size_t>(std::ceil(t_end / kRevivalSpacing)) + 1);
    std::vector<double> times(samples);
    for (std::size_t k = 0; k < samples; ++k)
        times[k] = t_end * static_cast<double>(k) / static_cast<double>(samples - 1);
    const auto trajectory = coherence_trajectory(initial, params, times);
    return static_cast<double>(detect_backflow(trajectory).revivals);
}

// Writes the observable value(s) for one point into out.
void evaluate_point(const SweepGrid& grid, const PointValues& v, double* out) {
    auto get = [&](Parameter p) { return v[static_cast<std::size_t>(p)]; };
    const auto params = BathParams::make(get(Parameter::gamma), get(Parameter::lambda), get(Parameter::delta));
    const double t = get(Parameter::t);

    if (grid.observable == Observable::revivals) {
        out[0] = count_revivals(grid.initial, params, t);
        return;
    }

    const auto rho = evolve(grid.initial, h_closed_form(params, t));
    switch (grid.observable) {
        case Observable::abs_rho10: out[0] = std::abs(rho.rho10); break;
        case Observable::q: out[0] = husimi_q(rho, get(Parameter::theta), get(Parameter::phi)); break;
        case Observable::s: out[0] = shifted_phase_distribution(rho, get(Parameter::phi)); break;
        case Observable::s_max: out[0] = phase_summary(rho).s_max; break;
        case Observable::phi_star: {
            const auto summary = phase_summary(rho);
            out[0] = summary.phi_star;
            out[1] = summary.r;
            break;
        }
        case Observable::revivals: break;
    }
}

} // namespace

std::string_view to_string(Parameter p) noexcept { return kParameterNames[static_cast<std::size_t>(p)]; }
std::string_view to_string(Observable o) noexcept { return kObservableNames[static_cast<std::size_t>(o)]; }
std::string_view to_string(Scale s) noexcept { return s == Scale::log ? "log" : "linear"; }

std::optional<Parameter> parse_parameter(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kParameterNames.size(); ++i)
        if (name == kParameterNames[i]) return static_cast<Parameter>(i);
    return std::nullopt;
}

std::optional<Observable> parse_observable(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kObservableNames.size(); ++i)
        if (name == kObservableNames[i]) return static_cast<Observable>(i);
    return std::nullopt;
}

std::vector<Parameter> required_parameters(Observable o) {
    std::vector<Parameter> req{Parameter::delta, Parameter::gamma, Parameter::lambda, Parameter::t};
    if (o == Observable::s || o == Observable::q) req.push_back(Parameter::phi);
    if (o == Observable::q) req.push_back(Parameter::theta);
    return req;
}

std::vector<std::string> value_columns(Observable o) {
    if (o == Observable::phi_star) return {"phi_star", "r"};
    return {std::string(to_string(o))};
}

void AxisSpec::validate() const {
    const std::string label(to_string(name));
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
        throw std::invalid_argument("axis " + label + ": requires finite min < max");
    if (count < 2) throw std::invalid_argument("axis " + label + ": count must be >= 2");
    if (scale == Scale::log && !(min > 0.0))
        throw std::invalid_argument("axis " + label + ": log scale requires min > 0");
}

std::vector<double> AxisSpec::values() const {
    validate();
    std::vector<double> out(count);
    const double last = static_cast<double>(count - 1);
    if (scale == Scale::linear) {
        for (std::size_t i = 0; i < count; ++i) out[i] = min + (max - min) * static_cast<double>(i) / last;
    } else {
        const double lo = std::log(min);
        const double hi = std::log(max);
        for (std::size_t i = 0; i < count; ++i) out[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / last);
    }
    out.front() = min;
    out.back() = max;
    return out;
}

AxisSpec AxisSpec::parse(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 4 && parts.size() != 5)
        throw std::invalid_argument("axis spec '" + std::string(text) + "' must be name:min:max:count[:log]");
    AxisSpec axis;
    const auto name = parse_parameter(parts[0]);
    if (!name) throw std::invalid_argument("unknown axis name '" + std::string(parts[0]) + "'");
    axis.name = *name;
    axis.min = parse_double(parts[1], "axis min");
    axis.max = parse_double(parts[2], "axis max");
    std::size_t count = 0;
    const auto* end = parts[3].data() + parts[3].size();
    auto [ptr, ec] = std::from_chars(parts[3].data(), end, count);
    if (ec != std::errc{} || ptr != end)
        throw std::invalid_argument("cannot parse axis count from '" + std::string(parts[3]) + "'");
    axis.count = count;
    if (parts.size() == 5) {
        if (parts[4] == "log") axis.scale = Scale::log;
        else if (parts[4] == "linear") axis.scale = Scale::linear;
        else throw std::invalid_argument("axis scale must be 'log' or 'linear'");
    }
    axis.validate();
    return axis;
}

AxisSpec periodic_phi_axis(std::size_t count) {
    return {Parameter::phi, -pi, pi - 2.0 * pi / static_cast<double>(count), count, Scale::linear};
}

void SweepGrid::validate() const {
    if (axes.size() > 3) throw std::invalid_argument("a sweep takes at most 3 axes");
    std::array<bool, kParameterCount> seen{};
    auto claim = [&](Parameter p, const char* where) {
        auto& slot = seen[static_cast<std::size_t>(p)];
        if (slot) throw std::invalid_argument(std::string("parameter ") + std::string(to_string(p)) +
                                              " given more than once (" + where + ")");
        slot = true;
    };
    for (const auto& axis : axes) {
        axis.validate();
        claim(axis.name, "axis");
    }
    for (const auto& [p, value] : fixed) {
        claim(p, "fixed");
        if (!std::isfinite(value))
            throw std::invalid_argument("fixed " + std::string(to_string(p)) + " must be finite");
    }
    const auto required = required_parameters(observable);
    for (std::size_t i = 0; i < kParameterCount; ++i) {
        const auto p = static_cast<Parameter>(i);
        const bool needed = std::find(required.begin(), required.end(), p) != required.end();
        if (needed && !seen[i])
            throw std::invalid_argument("observable " + std::string(to_string(observable)) + " needs parameter " +
                                        std::string(to_string(p)));
        if (!needed && seen[i])
            throw std::invalid_argument("parameter " + std::string(to_string(p)) + " is not used by observable " +
                                        std::string(to_string(observable)));
    }
    initial.validate();
}

std::size_t SweepGrid::point_count() const {
    double total = 1.0;
    for (const auto& axis : axes) total *= static_cast<double>(axis.count);
    if (total > kMaxGridPoints) throw std::length_error("sweep exceeds the 1e8 point budget");
    return static_cast<std::size_t>(total);
}

GridResult run_sweep(const SweepGrid& grid, const SweepOptions& options) {
    grid.validate();
    const std::size_t points = grid.point_count();

    GridResult result;
    result.grid = grid;
    result.axis_count = grid.axes.size();
    for (const auto& axis : grid.axes) result.columns.emplace_back(to_string(axis.name));
    for (auto& c : value_columns(grid.observable)) result.columns.push_back(std::move(c));
    const std::size_t width = result.columns.size();
    result.data.assign(points * width, 0.0);

    std::vector<std::vector<double>> axis_values;
    for (const auto& axis : grid.axes) axis_values.push_back(axis.values());

    PointValues base{};
    for (const auto& [p, value] : grid.fixed) base[static_cast<std::size_t>(p)] = value;

    const std::size_t outer = grid.axes.empty() ? 1 : grid.axes.front().count;
    const std::size_t per_outer = points / outer;

    // Rows [first_outer * per_outer, last_outer * per_outer) belong to one worker.
    auto work = [&](std::size_t first_outer, std::size_t last_outer) {
        const std::size_t naxes = grid.axes.size();
        std::vector<std::size_t> index(naxes, 0);
        for (std::size_t row = first_outer * per_outer; row < last_outer * per_outer; ++row) {
            std::size_t rem = row;
            for (std::size_t a = naxes; a-- > 0;) {
                index[a] = rem % grid.axes[a].count;
                rem /= grid.axes[a].count;
            }
            PointValues v = base;
            double* out = result.data.data() + row * width;
            for (std::size_t a = 0; a < naxes; ++a) {
                const double x = axis_values[a][index[a]];
                v[static_cast<std::size_t>(grid.axes[a].name)] = x;
                out[a] = x;
            }
            evaluate_point(grid, v, out + naxes);
            for (std::size_t c = naxes; c < width; ++c)
                if (!std::isfinite(out[c]))
                    throw std::domain_error("non-finite value at grid row " + std::to_string(row));
        }
    };

    const std::size_t jobs = std::clamp<std::size_t>(options.jobs == 0 ? 1 : options.jobs, 1, outer);
    if (jobs == 1) {
        work(0, outer);
        return result;
    }

    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) {
        const std::size_t first = outer * j / jobs;
        const std::size_t last = outer * (j + 1) / jobs;
        workers.emplace_back([&, j, first, last] {
            try {
                work(first, last);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return result;
}

// ----------------------------- Figure presets --------------------------------

namespace {

constexpr std::size_t kPhiNodes = 181;

AxisSpec delta_axis() { return {Parameter::delta, -2.0, 2.0, 101, Scale::linear}; }
AxisSpec gamma_axis() { return {Parameter::gamma, 0.02, 2.0, 100, Scale::linear}; }
AxisSpec lambda_axis() { return {Parameter::lambda, 0.001, 0.5, 100, Scale::log}; }
AxisSpec theta_axis() { return {Parameter::theta, 0.0, pi, 91, Scale::linear}; }
AxisSpec phi_axis() { return periodic_phi_axis(kPhiNodes); }
AxisSpec detuning_pair() { return {Parameter::delta, 0.0, 1.0, 2, Scale::linear}; }

SweepGrid make_grid(std::vector<AxisSpec> axes, std::map<Parameter, double> fixed, Observable observable) {
    SweepGrid grid;
    grid.axes = std::move(axes);
    grid.fixed = std::move(fixed);
    grid.observable = observable;
    return grid;
}

SweepGrid husimi_sphere(double lambda, double delta, double t) {
    return make_grid({theta_axis(), phi_axis()},
                     {{Parameter::gamma, 1.0}, {Parameter::lambda, lambda}, {Parameter::delta, delta}, {Parameter::t, t}},
                     Observable::q);
}

SweepGrid coherence_curves(double lambda, double t_max, std::size_t samples) {
    return make_grid({detuning_pair(), {Parameter::t, 0.0, t_max, samples, Scale::linear}},
                     {{Parameter::gamma, 1.0}, {Parameter::lambda, lambda}}, Observable::abs_rho10);
}

SweepGrid phase_map(double lambda, double t) {
    return make_grid({delta_axis(), phi_axis()},
                     {{Parameter::gamma, 1.0}, {Parameter::lambda, lambda}, {Parameter::t, t}}, Observable::s);
}

SweepGrid coupling_tongue(double lambda, double t) {
    return make_grid({gamma_axis(), delta_axis()}, {{Parameter::lambda, lambda}, {Parameter::t, t}},
                     Observable::s_max);
}

SweepGrid width_tongue(double t) {
    return make_grid({lambda_axis(), delta_axis()}, {{Parameter::gamma, 1.0}, {Parameter::t, t}}, Observable::s_max);
}

// Equatorial slice theta = pi/2 of Q as it evolves, for delta = 0 and 1.
SweepGrid equatorial_history(double lambda, double t_max, std::size_t samples) {
    return make_grid({detuning_pair(), {Parameter::t, 0.0, t_max, samples, Scale::linear}, phi_axis()},
                     {{Parameter::gamma, 1.0}, {Parameter::lambda, lambda}, {Parameter::theta, 0.5 * pi}},
                     Observable::q);
}

struct PresetEntry {
    const char* id;
    SweepGrid (*make)();
};

const std::vector<PresetEntry>& preset_table() {
    static const std::vector<PresetEntry> table{
        {"fig1a", [] { return husimi_sphere(5.0, 0.0, 0.0); }},
        {"fig1b", [] { return husimi_sphere(5.0, 0.0, 10.0); }},
        {"fig1c", [] { return husimi_sphere(0.01, 0.0, 10.0); }},
        {"fig1d", [] { return husimi_sphere(0.01, 1.0, 500.0); }},
        {"fig2a", [] { return coherence_curves(5.0, 10.0, 1001); }},
        {"fig2b", [] { return coherence_curves(0.01, 500.0, 5001); }},
        {"fig3a", [] { return phase_map(5.0, 1.0); }},
        {"fig3b", [] { return phase_map(5.0, 2.0); }},
        {"fig3c", [] { return phase_map(5.0, 5.0); }},
        {"fig3d", [] { return phase_map(5.0, 30.0); }},
        {"fig4a", [] { return phase_map(0.01, 1.0); }},
        {"fig4b", [] { return phase_map(0.01, 20.0); }},
        {"fig4c", [] { return phase_map(0.01, 100.0); }},
        {"fig4d", [] { return phase_map(0.01, 500.0); }},
        {"fig5a", [] { return coupling_tongue(0.01, 500.0); }},
        {"fig5b", [] { return coupling_tongue(0.1, 500.0); }},
        {"fig6a", [] { return width_tongue(10.0); }},
        {"fig6b", [] { return width_tongue(100.0); }},
        {"sfig1", [] { return equatorial_history(5.0, 10.0, 6); }},
        {"sfig2", [] { return equatorial_history(0.01, 500.0, 6); }},
        {"sfig3a", [] { return coupling_tongue(0.01, 500.0); }},
        {"sfig3b", [] { return coupling_tongue(0.05, 500.0); }},
        {"sfig3c", [] { return coupling_tongue(0.1, 500.0); }},
        {"sfig3d", [] { return coupling_tongue(0.2, 500.0); }},
    };
    return table;
}

} // namespace

const std::vector<std::string>& preset_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& e : preset_table()) out.emplace_back(e.id);
        return out;
    }();
    return ids;
}

SweepGrid figure_preset(std::string_view id) {
    for (const auto& e : preset_table()) {
        if (id == e.id) {
            SweepGrid grid = e.make();
            grid.preset_id = e.id;
            return grid;
        }
    }
    throw std::invalid_argument("unknown figure preset '" + std::string(id) + "'");
}

// ----------------------------- Tongue boundary -------------------------------

std::vector<BoundaryPoint> tongue_boundary(const GridResult& result, double threshold) {
    const auto& axes = result.grid.axes;
    if (axes.size() != 2 || result.axis_count != 2)
        throw std::invalid_argument("tongue_boundary needs a 2-D grid");
    const bool delta_outer = axes[0].name == Parameter::delta;
    if (!delta_outer && axes[1].name != Parameter::delta)
        throw std::invalid_argument("tongue_boundary needs a delta axis");

    const std::size_t n_delta = delta_outer ? axes[0].count : axes[1].count;
    const std::size_t n_other = delta_outer ? axes[1].count : axes[0].count;
    if (result.rows() != n_delta * n_other) throw std::invalid_argument("tongue_boundary: row count mismatch");

    auto row_of = [&](std::size_t other, std::size_t d) { return delta_outer ? d * n_other + other : other * n_delta + d; };
    const std::size_t delta_column = delta_outer ? 0 : 1;

    std::vector<double> deltas(n_delta);
    for (std::size_t d = 0; d < n_delta; ++d) deltas[d] = result.row(row_of(0, d))[delta_column];
    std::size_t origin = 0;
    for (std::size_t d = 1; d < n_delta; ++d)
        if (std::abs(deltas[d]) < std::abs(deltas[origin])) origin = d;

    std::vector<BoundaryPoint> out;
    std::vector<double> s(n_delta);
    for (std::size_t other = 0; other < n_other; ++other) {
        for (std::size_t d = 0; d < n_delta; ++d) s[d] = result.value(row_of(other, d));

        auto crossing = [&](std::size_t i, std::size_t j) -> std::optional<double> {
            const bool below_i = s[i] < threshold;
            const bool below_j = s[j] < threshold;
            if (below_i == below_j) return std::nullopt;
            return deltas[i] + (deltas[j] - deltas[i]) * (threshold - s[i]) / (s[j] - s[i]);
        };

        std::optional<double> upper;
        for (std::size_t i = origin; i + 1 < n_delta && !upper; ++i) upper = crossing(i, i + 1);
        std::optional<double> lower;
        for (std::size_t i = origin; i > 0 && !lower; --i) lower = crossing(i, i - 1);

        if (lower && upper) {
            const double other_value = result.row(row_of(other, 0))[delta_outer ? 1 : 0];
            out.push_back({other_value, *lower, *upper});
        }
    }
    return out;
}

} // namespace qsync
