// dynamics.cpp — closed-form h(t), Volterra reference solver and state evolution

#include "qsync/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsync {

namespace {

// Past this |Re(Omega t/2)| the subdominant exponential is below double
// precision and the two-exponential form avoids overflowing cosh/sinh.
constexpr double kSplitExponentialThreshold = 20.0;

complex omega_squared(const BathParams& p) noexcept {
    const complex a = p.memory_rate();
    return a * a - 2.0 * p.gamma * p.lambda;
}

// Omega and -Omega give the same h; pick the representative with Re >= 0
// (Im >= 0 on the imaginary axis) so both signs take identical arithmetic.
complex canonical_omega(complex w) noexcept {
    if (w.real() < 0.0 || (w.real() == 0.0 && w.imag() < 0.0)) return -w;
    return w;
}

complex series_bracket(complex a, complex x2, double t) noexcept {
    const complex at2 = 0.5 * a * t;  // a t / 2
    // cosh(x) + (a t/2) sinh(x)/x through x^4
    return 1.0 + at2 + x2 * (0.5 + at2 / 6.0) + x2 * x2 * (1.0 / 24.0 + at2 / 120.0);
}

complex generic_h(complex a, complex w, double t) noexcept {
    const complex x = 0.5 * w * t;
    const complex b = a / w;
    const complex decay = -0.5 * a * t;
    if (x.real() > kSplitExponentialThreshold) {
        return 0.5 * (std::exp(decay + x) * (1.0 + b) + std::exp(decay - x) * (1.0 - b));
    }
    return std::exp(decay) * (std::cosh(x) + b * std::sinh(x));
}

void require_time(double t) {
    if (!std::isfinite(t) || t < 0.0)
        throw std::invalid_argument("time must be finite and >= 0, got " + std::to_string(t));
}

} // namespace

complex omega(const BathParams& params) noexcept { return std::sqrt(omega_squared(params)); }

complex h_with_omega(const BathParams& params, complex omega_value, double t) {
    require_time(t);
    const complex a = params.memory_rate();
    const complex w = canonical_omega(omega_value);
    if (std::abs(0.5 * w * t) < kDegenerateThreshold) {
        const complex x = 0.5 * w * t;
        return std::exp(-0.5 * a * t) * series_bracket(a, x * x, t);
    }
    return generic_h(a, w, t);
}

EvolutionAmplitude h_closed_form(const BathParams& params, double t) {
    params.validate();
    require_time(t);

    EvolutionAmplitude out;
    out.t = t;
    const complex w2 = omega_squared(params);
    out.omega = std::sqrt(w2);
    const complex a = params.memory_rate();

    if (std::abs(0.5 * out.omega * t) < kDegenerateThreshold) {
        out.branch = AmplitudeBranch::DegenerateSeries;
        out.value = std::exp(-0.5 * a * t) * series_bracket(a, 0.25 * w2 * t * t, t);
    } else {
        out.branch = AmplitudeBranch::Generic;
        out.value = generic_h(a, canonical_omega(out.omega), t);
    }
    return out;
}

VolterraSolution volterra_solve(const BathParams& params, double t_max, double dt, VolterraMode mode) {
    if (!std::isfinite(params.gamma) || params.gamma < 0.0)
        throw std::invalid_argument("gamma must be finite and >= 0");
    if (!std::isfinite(params.lambda) || !(params.lambda > 0.0))
        throw std::invalid_argument("lambda must be a finite positive rate");
    if (!std::isfinite(params.delta)) throw std::invalid_argument("delta must be finite");
    if (!std::isfinite(dt) || !std::isfinite(t_max) || !(dt > 0.0) || dt > t_max)
        throw std::invalid_argument("volterra_solve requires 0 < dt <= t_max");

    const double ratio = t_max / dt;
    if (ratio > kMaxVolterraSteps)
        throw std::length_error("volterra_solve: step budget of 1e8 exceeded");
    const auto steps = static_cast<std::size_t>(std::floor(ratio + 1e-9));

    VolterraSolution sol;
    sol.dt = dt;
    sol.h.resize(steps + 1);
    sol.h[0] = complex{1.0, 0.0};

    const complex a = params.memory_rate();
    const double half_dt = 0.5 * dt;
    complex memory_prev{0.0, 0.0};  // I_{n-1} = int_0^{t_{n-1}} f(t_{n-1} - s) h(s) ds

    if (mode == VolterraMode::Recursive) {
        const double c = 0.5 * params.gamma * params.lambda;
        const complex step_decay = std::exp(-a * dt);
        const double implicit = 1.0 + 0.25 * c * dt * dt;
        complex history = sol.h[0];  // Z_{n-1} = sum_j e^{-a (n-1-j) dt} h_j
        for (std::size_t n = 1; n <= steps; ++n) {
            const complex carried = step_decay * history;
            const complex origin = std::exp(-a * (static_cast<double>(n) * dt));
            const complex known = carried - 0.5 * origin;
            const complex hn = (sol.h[n - 1] - half_dt * memory_prev - 0.5 * c * dt * dt * known) / implicit;
            if (!std::isfinite(hn.real()) || !std::isfinite(hn.imag()))
                throw std::runtime_error("volterra_solve: non-finite amplitude at step " + std::to_string(n));
            sol.h[n] = hn;
            history = carried + hn;
            memory_prev = c * dt * (known + 0.5 * hn);
        }
    } else {
        const complex f0 = correlation_kernel(params, 0.0);
        const complex implicit = 1.0 + 0.25 * dt * dt * f0;
        for (std::size_t n = 1; n <= steps; ++n) {
            complex partial = 0.5 * correlation_kernel(params, static_cast<double>(n) * dt) * sol.h[0];
            for (std::size_t j = 1; j < n; ++j)
                partial += correlation_kernel(params, static_cast<double>(n - j) * dt) * sol.h[j];
            const complex hn = (sol.h[n - 1] - half_dt * (memory_prev + dt * partial)) / implicit;
            if (!std::isfinite(hn.real()) || !std::isfinite(hn.imag()))
                throw std::runtime_error("volterra_solve: non-finite amplitude at step " + std::to_string(n));
            sol.h[n] = hn;
            memory_prev = dt * (partial + 0.5 * f0 * hn);
        }
    }
    return sol;
}

InitialState InitialState::make(double rho11, complex rho10) {
    InitialState s{rho11, rho10};
    s.validate();
    return s;
}

void InitialState::validate() const {
    if (!std::isfinite(rho11) || rho11 < 0.0 || rho11 > 1.0)
        throw std::invalid_argument("initial rho11 must lie in [0, 1]");
    if (!std::isfinite(rho10.real()) || !std::isfinite(rho10.imag()))
        throw std::invalid_argument("initial rho10 must be finite");
    if (std::norm(rho10) > rho11 * (1.0 - rho11) + kPositivityTolerance)
        throw std::invalid_argument("initial state violates positivity |rho10|^2 <= rho11 (1 - rho11)");
}

QubitDensityMatrix evolve(const InitialState& initial, complex h) {
    QubitDensityMatrix rho;
    rho.rho11 = initial.rho11 * std::norm(h);
    rho.rho10 = initial.rho10 * h;
    if (!(rho.positivity_margin() >= -kPositivityTolerance))
        throw std::domain_error("evolved state violates positivity; |h| = " + std::to_string(std::abs(h)));
    return rho;
}

QubitDensityMatrix evolve(const InitialState& initial, const EvolutionAmplitude& amp) {
    return evolve(initial, amp.value);
}

std::vector<CoherenceSample> coherence_trajectory(const InitialState& initial, const BathParams& params,
                                                  std::span<const double> times) {
    params.validate();
    std::vector<CoherenceSample> out;
    out.reserve(times.size());
    double previous = 0.0;
    for (double t : times) {
        if (!(t >= previous)) throw std::invalid_argument("coherence_trajectory: times must be sorted and >= 0");
        previous = t;
        const auto rho = evolve(initial, h_closed_form(params, t));
        out.push_back({t, std::abs(rho.rho10)});
    }
    return out;
}

std::vector<double> uniform_times(double t_max, double dt) {
    if (!(dt > 0.0) || !(t_max >= 0.0) || !std::isfinite(t_max))
        throw std::invalid_argument("uniform_times requires dt > 0 and finite t_max >= 0");
    const double ratio = t_max / dt;
    if (ratio > kMaxVolterraSteps) throw std::length_error("uniform_times: more than 1e8 samples requested");
    const auto steps = static_cast<std::size_t>(std::floor(ratio + 1e-9));
    std::vector<double> times(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) times[k] = static_cast<double>(k) * dt;
    return times;
}

BackflowReport detect_backflow(std::span<const CoherenceSample> trajectory) {
    if (trajectory.size() < kMinTrajectoryPoints)
        throw std::invalid_argument("detect_backflow: trajectory needs at least 10 samples");

    BackflowReport report;
    bool rising = false;
    for (std::size_t i = 0; i + 1 < trajectory.size(); ++i) {
        const auto& p = trajectory[i];
        const auto& q = trajectory[i + 1];
        const double span = q.t - p.t;
        const bool up = span > 0.0 && (q.abs_rho10 - p.abs_rho10) / span > kRevivalSlopeThreshold;
        if (up && !rising) report.intervals.push_back({p.t, q.t});
        if (up) report.intervals.back().end = q.t;
        rising = up;
    }
    report.revivals = report.intervals.size();
    return report;
}

} // namespace qsync
