// dynamics.hpp — Exact amplitude-damping dynamics of a qubit in a Lorentzian bath

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qsync/bath.hpp"

namespace qsync {

using complex = std::complex<double>;

enum class AmplitudeBranch { Generic, DegenerateSeries };

// h(t) together with the Omega value used to evaluate it.
struct EvolutionAmplitude {
    double t{0.0};
    complex value{1.0, 0.0};
    complex omega{};
    AmplitudeBranch branch{AmplitudeBranch::Generic};
};

// Below this |Omega t / 2| the closed form switches to its Taylor series.
inline constexpr double kDegenerateThreshold = 1e-6;

// Omega = sqrt((lambda - i delta)^2 - 2 gamma lambda), principal branch.
complex omega(const BathParams& params) noexcept;

// h(t) = exp(-a t/2) [cosh(Omega t/2) + (a/Omega) sinh(Omega t/2)], a = lambda - i delta.
// Throws std::invalid_argument for t < 0 or invalid params.
EvolutionAmplitude h_closed_form(const BathParams& params, double t);

// Same as h_closed_form but with an explicit choice of Omega. The result does
// not depend on the sign of Omega; exposed so that property can be tested.
complex h_with_omega(const BathParams& params, complex omega_value, double t);

enum class VolterraMode {
    Recursive,  // O(1) memory, history sum carried by the exponential kernel
    Direct      // O(n^2) summation with the kernel evaluated for every pair
};

// h on the uniform grid t_k = k * dt, k = 0 .. steps.
struct VolterraSolution {
    double dt{0.0};
    std::vector<complex> h;

    double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt; }
};

inline constexpr double kMaxVolterraSteps = 1e8;

// Solves dh/dt = -int_0^t f(t - s) h(s) ds with h(0) = 1 by trapezoidal
// product integration; the newest node is implicit and solved algebraically.
// gamma = 0 is admitted here (kernel vanishes, h stays 1).
// Throws std::invalid_argument on a bad grid, std::length_error past the step
// budget and std::runtime_error if the iteration produces non-finite values.
VolterraSolution volterra_solve(const BathParams& params, double t_max, double dt,
                                VolterraMode mode = VolterraMode::Recursive);

// Reduced density matrix of the qubit. Only rho11 and rho10 are stored, so
// trace and Hermiticity hold by construction.
struct QubitDensityMatrix {
    double rho11{0.5};
    complex rho10{0.5, 0.0};

    double rho00() const noexcept { return 1.0 - rho11; }
    complex rho01() const noexcept { return std::conj(rho10); }

    // rho11 * rho00 - |rho10|^2; nonnegative for a physical state.
    double positivity_margin() const noexcept { return rho11 * rho00() - std::norm(rho10); }
};

inline constexpr double kPositivityTolerance = 1e-12;

struct InitialState {
    double rho11{0.5};
    complex rho10{0.5, 0.0};

    // |+> = (|0> + |1>)/sqrt(2)
    static InitialState plus() noexcept { return {}; }

    // Throws std::invalid_argument if rho11 is outside [0,1] or the state is not positive.
    static InitialState make(double rho11, complex rho10);
    void validate() const;
};

// rho11 = rho11(0) |h|^2, rho10 = rho10(0) h. Throws std::domain_error if the
// evolved state violates positivity beyond kPositivityTolerance.
QubitDensityMatrix evolve(const InitialState& initial, const EvolutionAmplitude& amp);
QubitDensityMatrix evolve(const InitialState& initial, complex h);

struct CoherenceSample {
    double t{0.0};
    double abs_rho10{0.0};
};

// |rho10(t)| for each t in times (sorted, nonnegative).
std::vector<CoherenceSample> coherence_trajectory(const InitialState& initial,
                                                  const BathParams& params,
                                                  std::span<const double> times);

// Uniform grid 0, dt, 2dt, ... up to t_max (inclusive within rounding).
std::vector<double> uniform_times(double t_max, double dt);

struct Interval {
    double begin{0.0};
    double end{0.0};
};

struct BackflowReport {
    std::size_t revivals{0};
    std::vector<Interval> intervals;
};

inline constexpr double kRevivalSlopeThreshold = 1e-10;
inline constexpr std::size_t kMinTrajectoryPoints = 10;

// Counts maximal runs over which |rho10| strictly increases, i.e. the finite
// difference slope exceeds kRevivalSlopeThreshold.
// Throws std::invalid_argument for fewer than kMinTrajectoryPoints samples.
BackflowReport detect_backflow(std::span<const CoherenceSample> trajectory);

} // namespace qsync
