// cli.cpp — subcommand wiring for the qsync tool

#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "qsync/bath.hpp"
#include "qsync/dynamics.hpp"
#include "qsync/errors.hpp"
#include "qsync/export.hpp"
#include "qsync/sweep.hpp"
#include "qsync/version.hpp"

namespace qsync::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double to_double(std::string_view text, const std::string& what) {
    const std::string t = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
        throw std::invalid_argument("cannot parse " + what + " from '" + t + "'");
    return v;
}

InitialState parse_initial(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    if (parts.size() != 3) throw std::invalid_argument("--initial expects rho11,re10,im10");
    const double rho11 = to_double(parts[0], "--initial rho11");
    const complex rho10{to_double(parts[1], "--initial re10"), to_double(parts[2], "--initial im10")};
    try {
        return InitialState::make(rho11, rho10);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("--initial: ") + e.what());
    }
}

BathParams make_params(double gamma, double lambda, double delta) {
    return BathParams::make(gamma, lambda, delta);
}

// Values shared by the subcommands; each subcommand binds the subset it uses.
struct Settings {
    std::string config;
    double gamma{1.0};
    double lambda{0.0};
    double delta{0.0};
    double t{0.0};
    double tmax{0.0};
    double dt{0.01};
    std::size_t ntheta{91};
    std::size_t nphi{181};
    std::string initial;
    std::string out{"-"};
    std::string format{"long"};
    std::vector<std::string> axes;
    std::vector<std::string> fixed;
    std::string observable;
    std::string id;
    unsigned jobs{1};
    double verify_tmax{50.0};
    double verify_dt{1e-3};
};

void add_config(CLI::App* sub, Settings& s) {
    sub->add_option("--config", s.config, "Flat key = value file; flags override its values");
}

void add_bath(CLI::App* sub, Settings& s, bool lambda_required = true) {
    auto* lambda = sub->add_option("--lambda", s.lambda, "Spectral width (gamma0 units)");
    if (lambda_required) lambda->required();
    sub->add_option("--delta", s.delta, "Detuning omega0 - omega_c (gamma0 units)")->capture_default_str();
    sub->add_option("--gamma", s.gamma, "Coupling strength (gamma0 units)")->capture_default_str();
}

void add_initial(CLI::App* sub, Settings& s) {
    sub->add_option("--initial", s.initial, "Initial state rho11,re10,im10 (default: plus state)");
}

void add_jobs(CLI::App* sub, Settings& s) {
    sub->add_option("--jobs", s.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
}

InitialState initial_or_plus(const Settings& s) {
    return s.initial.empty() ? InitialState::plus() : parse_initial(s.initial);
}

int run_evolve(const Settings& s) {
    const auto params = make_params(s.gamma, s.lambda, s.delta);
    if (!(s.tmax > 0.0) || !std::isfinite(s.tmax)) throw std::invalid_argument("--tmax must be > 0");
    if (!(s.dt > 0.0) || s.dt > s.tmax) throw std::invalid_argument("--dt must satisfy 0 < dt <= tmax");
    const auto initial = initial_or_plus(s);
    const auto times = uniform_times(s.tmax, s.dt);

    const std::vector<std::string> columns{"t", "re_h", "im_h", "abs_h", "rho11", "re_rho10", "im_rho10", "abs_rho10"};
    std::vector<double> data;
    data.reserve(times.size() * columns.size());
    for (double t : times) {
        const auto amp = h_closed_form(params, t);
        const auto rho = evolve(initial, amp);
        data.insert(data.end(), {t, amp.value.real(), amp.value.imag(), std::abs(amp.value), rho.rho11,
                                 rho.rho10.real(), rho.rho10.imag(), std::abs(rho.rho10)});
    }
    if (s.out == "-") {
        write_csv(columns, data, std::cout);
    } else {
        std::ofstream file(s.out, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot open '" + s.out + "' for writing");
        write_csv(columns, data, file);
    }
    return kOk;
}

std::map<Parameter, double> bath_fixed(const Settings& s, double t) {
    make_params(s.gamma, s.lambda, s.delta);
    return {{Parameter::gamma, s.gamma}, {Parameter::lambda, s.lambda}, {Parameter::delta, s.delta}, {Parameter::t, t}};
}

int run_qfunc(const Settings& s) {
    SweepGrid grid;
    grid.axes = {{Parameter::theta, 0.0, std::numbers::pi, s.ntheta, Scale::linear}, periodic_phi_axis(s.nphi)};
    grid.fixed = bath_fixed(s, s.t);
    grid.observable = Observable::q;
    grid.initial = initial_or_plus(s);
    write_result(run_sweep(grid, {s.jobs}), s.out);
    return kOk;
}

int run_sphase(const Settings& s) {
    SweepGrid grid;
    grid.axes = {periodic_phi_axis(s.nphi)};
    grid.fixed = bath_fixed(s, s.t);
    grid.observable = Observable::s;
    grid.initial = initial_or_plus(s);
    write_result(run_sweep(grid, {s.jobs}), s.out);
    return kOk;
}

TableFormat parse_format(const std::string& f) {
    if (f == "long") return TableFormat::long_form;
    if (f == "matrix") return TableFormat::matrix;
    throw std::invalid_argument("--format must be 'long' or 'matrix'");
}

int run_sweep_command(const Settings& s) {
    SweepGrid grid;
    for (const auto& a : s.axes) grid.axes.push_back(AxisSpec::parse(a));
    for (const auto& f : s.fixed) {
        const auto eq = f.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--fixed expects name=value, got '" + f + "'");
        const auto name = parse_parameter(trim(f.substr(0, eq)));
        if (!name) throw std::invalid_argument("--fixed: unknown parameter '" + f.substr(0, eq) + "'");
        if (grid.fixed.count(*name)) throw std::invalid_argument("--fixed: parameter given twice in '" + f + "'");
        grid.fixed[*name] = to_double(f.substr(eq + 1), "--fixed " + f.substr(0, eq));
    }
    const auto observable = parse_observable(s.observable);
    if (!observable) throw std::invalid_argument("--observable: unknown observable '" + s.observable + "'");
    grid.observable = *observable;
    grid.initial = initial_or_plus(s);
    const auto format = parse_format(s.format);
    write_result(run_sweep(grid, {s.jobs}), s.out, format);
    return kOk;
}

int run_figure(const Settings& s) {
    const auto grid = figure_preset(s.id);
    const auto files = write_figure(run_sweep(grid, {s.jobs}), s.out);
    std::cout << files.csv.string() << " " << files.meta.string() << " " << kGridHashAlgorithm << ":"
              << hash_hex(files.grid_hash) << "\n";
    return kOk;
}

int run_verify(const Settings& s) {
    struct Case {
        double lambda, delta, gamma;
    };
    static constexpr Case cases[] = {{5.0, 0.0, 1.0}, {0.01, 0.0, 1.0}, {0.01, 1.0, 1.0}, {2.0, 0.0, 1.0}, {0.1, 0.5, 1.0}};
    constexpr double tolerance = 1e-5;

    auto max_error = [&](const BathParams& p, double dt) {
        const auto sol = volterra_solve(p, s.verify_tmax, dt);
        double err = 0.0;
        for (std::size_t k = 0; k < sol.h.size(); ++k)
            err = std::max(err, std::abs(sol.h[k] - h_closed_form(p, sol.time(k)).value));
        return err;
    };

    bool ok = true;
    std::cout << "lambda,delta,gamma,max_err_dt,max_err_half_dt,ratio,status\n";
    for (const auto& c : cases) {
        const auto p = make_params(c.gamma, c.lambda, c.delta);
        const double e1 = max_error(p, s.verify_dt);
        const double e2 = max_error(p, 0.5 * s.verify_dt);
        const bool pass = e1 < tolerance;
        ok = ok && pass;
        std::cout << format_double(c.lambda) << ',' << format_double(c.delta) << ',' << format_double(c.gamma) << ','
                  << format_double(e1) << ',' << format_double(e2) << ',' << format_double(e2 > 0.0 ? e1 / e2 : 0.0)
                  << ',' << (pass ? "pass" : "FAIL") << "\n";
    }
    return ok ? kOk : kVerificationFailure;
}

// Inserts "--key value" pairs from the config file right after the
// subcommand so that later command-line flags take precedence.
std::vector<std::string> inject_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty() || args.size() < 2) return args;
    std::vector<std::string> injected;
    for (const auto& [key, value] : read_config(path)) {
        injected.push_back("--" + key);
        injected.push_back(value);
    }
    args.insert(args.begin() + 2, injected.begin(), injected.end());
    return args;
}

std::string help_footer(const CLI::App& app) {
    std::string text = "\nFlags by subcommand:\n";
    for (const auto* sub : app.get_subcommands({})) {
        text += "  " + sub->get_name() + ":";
        for (const auto* opt : sub->get_options()) {
            if (opt->get_name() == "--help") continue;
            text += " " + opt->get_name();
        }
        text += "\n";
    }
    return text;
}

} // namespace

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot read config file '" + path + "'");
    std::map<std::string, std::string> values;
    std::string line;
    for (int lineno = 1; std::getline(file, line); ++lineno) {
        const auto hash = line.find('#');
        const std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        const bool valid_key = !key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) {
            return std::isalnum(c) || c == '_';
        });
        if (!valid_key || value.empty())
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": malformed entry '" + body + "'");
        values[key] = value;
    }
    return values;
}

int parse_and_dispatch(const std::vector<std::string>& raw_args) {
    try {
        const auto args = inject_config(raw_args);

        Settings s;
        CLI::App app{"qsync: exact qubit dynamics and phase synchronization in a Lorentzian bath"};
        app.set_version_flag("--version", std::string("qsync ") + kVersion + " (grid hash " + kGridHashAlgorithm + ")");
        app.name("qsync");
        app.require_subcommand(1);
        app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

        auto* evolve_cmd = app.add_subcommand("evolve", "Closed-form h(t) and density matrix on a time grid (CSV)");
        add_config(evolve_cmd, s);
        add_bath(evolve_cmd, s);
        evolve_cmd->add_option("--tmax", s.tmax, "Final time gamma0*t")->required();
        evolve_cmd->add_option("--dt", s.dt, "Time step")->capture_default_str();
        add_initial(evolve_cmd, s);
        evolve_cmd->add_option("--out", s.out, "Output file, - for stdout")->capture_default_str();

        auto* qfunc_cmd = app.add_subcommand("qfunc", "Husimi Q-function on a theta x phi grid (CSV theta,phi,q)");
        add_config(qfunc_cmd, s);
        add_bath(qfunc_cmd, s);
        qfunc_cmd->add_option("--t", s.t, "Time gamma0*t")->required();
        qfunc_cmd->add_option("--ntheta", s.ntheta, "Polar nodes on [0, pi]")->capture_default_str();
        qfunc_cmd->add_option("--nphi", s.nphi, "Azimuth nodes on [-pi, pi)")->capture_default_str();
        add_initial(qfunc_cmd, s);
        add_jobs(qfunc_cmd, s);
        qfunc_cmd->add_option("--out", s.out, "Output file, - for stdout")->capture_default_str();

        auto* sphase_cmd = app.add_subcommand("sphase", "Shifted phase distribution S(phi) (CSV phi,s)");
        add_config(sphase_cmd, s);
        add_bath(sphase_cmd, s);
        sphase_cmd->add_option("--t", s.t, "Time gamma0*t")->required();
        sphase_cmd->add_option("--nphi", s.nphi, "Azimuth nodes on [-pi, pi)")->capture_default_str();
        add_initial(sphase_cmd, s);
        add_jobs(sphase_cmd, s);
        sphase_cmd->add_option("--out", s.out, "Output file, - for stdout")->capture_default_str();

        auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate an observable over a parameter grid");
        add_config(sweep_cmd, s);
        sweep_cmd->add_option("--axis", s.axes, "name:min:max:count[:log], repeatable")
            ->required()
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
        sweep_cmd->add_option("--fixed", s.fixed, "name=value, repeatable")
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
        sweep_cmd->add_option("--observable", s.observable, "abs_rho10|q|s|s_max|phi_star|revivals")->required();
        add_initial(sweep_cmd, s);
        add_jobs(sweep_cmd, s);
        sweep_cmd->add_option("--format", s.format, "long|matrix")->capture_default_str();
        sweep_cmd->add_option("--out", s.out, "Output file, - for stdout")->capture_default_str();

        auto* figure_cmd = app.add_subcommand("figure", "Regenerate a figure preset as <id>.csv + <id>.meta.json");
        add_config(figure_cmd, s);
        figure_cmd->add_option("--id", s.id, "Preset id")->required()->check(CLI::IsMember(preset_ids()));
        figure_cmd->add_option("--out", s.out, "Output directory")->required();
        add_jobs(figure_cmd, s);

        auto* verify_cmd = app.add_subcommand("verify", "Closed form vs Volterra solver on the reference parameter set");
        add_config(verify_cmd, s);
        verify_cmd->add_option("--tmax", s.verify_tmax, "Horizon gamma0*t")->capture_default_str();
        verify_cmd->add_option("--dt", s.verify_dt, "Volterra step")->capture_default_str();

        app.footer(help_footer(app));

        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        try {
            app.parse(std::move(reversed));
        } catch (const CLI::ParseError& e) {
            return app.exit(e) == 0 ? kOk : kValidationError;
        }

        if (evolve_cmd->parsed()) return run_evolve(s);
        if (qfunc_cmd->parsed()) return run_qfunc(s);
        if (sphase_cmd->parsed()) return run_sphase(s);
        if (sweep_cmd->parsed()) return run_sweep_command(s);
        if (figure_cmd->parsed()) return run_figure(s);
        if (verify_cmd->parsed()) return run_verify(s);
        return kValidationError;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationError;
    }
}

int parse_and_dispatch(int argc, const char* const* argv) {
    return parse_and_dispatch(std::vector<std::string>(argv, argv + argc));
}

} // namespace qsync::cli
