// bath.cpp — Lorentzian bath model

#include "qsync/bath.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsync {

BathParams BathParams::make(double gamma, double lambda, double delta) {
    BathParams p{gamma, lambda, delta};
    p.validate();
    return p;
}

void BathParams::validate() const {
    if (!std::isfinite(gamma) || !(gamma > 0.0))
        throw std::invalid_argument("gamma must be a finite positive rate, got " + std::to_string(gamma));
    if (!std::isfinite(lambda) || !(lambda > 0.0))
        throw std::invalid_argument("lambda must be a finite positive rate, got " + std::to_string(lambda));
    if (!std::isfinite(delta))
        throw std::invalid_argument("delta must be finite");
}

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::Markovian: return "Markovian";
        case Regime::NonMarkovian: return "NonMarkovian";
        case Regime::Boundary: return "Boundary";
    }
    return "unknown";
}

double spectral_density(const BathParams& params, double omega_shift) noexcept {
    const double x = omega_shift - params.delta;
    const double l2 = params.lambda * params.lambda;
    return params.gamma * l2 / (2.0 * std::numbers::pi * (x * x + l2));
}

std::complex<double> correlation_kernel(const BathParams& params, double dt) {
    if (!(dt >= 0.0)) throw std::invalid_argument("correlation_kernel: dt must be >= 0");
    const double amplitude = 0.5 * params.gamma * params.lambda;
    return amplitude * std::exp(-params.memory_rate() * dt);
}

Regime classify_regime(const BathParams& params) noexcept {
    const double margin = params.lambda - 2.0 * params.gamma;
    if (std::abs(margin) <= kRegimeBoundaryTolerance) return Regime::Boundary;
    return margin > 0.0 ? Regime::Markovian : Regime::NonMarkovian;
}

} // namespace qsync
