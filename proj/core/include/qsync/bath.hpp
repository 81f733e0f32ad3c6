// bath.hpp — Lorentzian bath parameters, spectral density and correlation kernel

#pragma once

#include <complex>
#include <string_view>

namespace qsync {

// Qubit + zero-temperature Lorentzian bath. Every rate is expressed in units
// of the reference coupling gamma0, so gamma0 is 1 and times are gamma0 * t.
struct BathParams {
    double gamma{1.0};   // coupling strength (gamma0 units)
    double lambda{1.0};  // spectral width
    double delta{0.0};   // detuning omega0 - omega_c, may be negative

    static constexpr double gamma0 = 1.0;

    // Validated construction; throws std::invalid_argument naming the field.
    static BathParams make(double gamma, double lambda, double delta);

    // Throws std::invalid_argument unless gamma > 0, lambda > 0 and delta finite.
    void validate() const;

    // lambda - i*delta, the complex decay rate of the bath memory.
    std::complex<double> memory_rate() const noexcept { return {lambda, -delta}; }

    friend bool operator==(const BathParams&, const BathParams&) = default;
};

enum class Regime { Markovian, NonMarkovian, Boundary };

std::string_view to_string(Regime regime) noexcept;

inline constexpr double kRegimeBoundaryTolerance = 1e-12;

// J as a function of u = omega0 - omega:
//   (1/2pi) * gamma * lambda^2 / ((u - delta)^2 + lambda^2)
double spectral_density(const BathParams& params, double omega_shift) noexcept;

// f(dt) = integral du J(u) exp(+i u dt) = (gamma * lambda / 2) * exp(-(lambda - i delta) dt).
// The +i sign is the one for which the memory equation reproduces the closed-form h(t).
// Throws std::invalid_argument for dt < 0.
std::complex<double> correlation_kernel(const BathParams& params, double dt);

// Markovian iff lambda > 2 gamma, NonMarkovian iff lambda < 2 gamma.
Regime classify_regime(const BathParams& params) noexcept;

} // namespace qsync
