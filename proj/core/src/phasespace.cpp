// phasespace.cpp

#include "qsync/phasespace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsync {

using std::numbers::pi;

double husimi_q(const QubitDensityMatrix& state, double theta, double phi) {
    if (!(theta >= 0.0 && theta <= pi))
        throw std::invalid_argument("husimi_q: theta must lie in [0, pi]");
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const double coherence = (state.rho10 * std::polar(1.0, phi)).real();
    return (c * c * state.rho11 + s * s * state.rho00() + 2.0 * s * c * coherence) / (2.0 * pi);
}

double shifted_phase_distribution(const QubitDensityMatrix& state, double phi) noexcept {
    return 0.25 * (state.rho10 * std::polar(1.0, phi)).real();
}

double wrap_phase(double phi) noexcept {
    double w = std::fmod(phi + pi, 2.0 * pi);
    if (w < 0.0) w += 2.0 * pi;
    w -= pi;
    return w >= pi ? -pi : w;
}

PhaseSummary phase_summary(const QubitDensityMatrix& state) noexcept {
    PhaseSummary out;
    out.r = std::abs(state.rho10);
    out.s_max = 0.25 * out.r;
    out.phi_star = out.r == 0.0 ? 0.0 : wrap_phase(-std::arg(state.rho10));
    return out;
}

} // namespace qsync
