// phasespace.hpp — Husimi Q-function and shifted phase distribution of a qubit

#pragma once

#include "qsync/dynamics.hpp"

namespace qsync {

// Spin-coherent state |theta, phi> = cos(theta/2)|1> + sin(theta/2) e^{i phi}|0>.
// theta is the polar angle in [0, pi]; phi is any real azimuth.
//
// Q(theta, phi) = <theta, phi| rho |theta, phi> / (2 pi)
// Throws std::invalid_argument for theta outside [0, pi].
double husimi_q(const QubitDensityMatrix& state, double theta, double phi);

// S(phi) = int_0^pi sin(theta) Q dtheta - 1/(2 pi) = Re(rho10 e^{i phi}) / 4
double shifted_phase_distribution(const QubitDensityMatrix& state, double phi) noexcept;

struct PhaseSummary {
    double s_max{0.0};     // max over phi of S, equal to |rho10| / 4
    double phi_star{0.0};  // argmax, -arg(rho10) wrapped to [-pi, pi); 0 when rho10 == 0
    double r{0.0};         // |rho10|
};

PhaseSummary phase_summary(const QubitDensityMatrix& state) noexcept;

// Maps an angle into [-pi, pi).
double wrap_phase(double phi) noexcept;

} // namespace qsync
