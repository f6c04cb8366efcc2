#pragma once

// Brute-force single-photon oracle. The photon is loaded into discrete
// frequency bins, each bin is propagated through the two arms (delays
// phi_1 - phi_2 = dtau) and recombined, and detector counts are summed bin by
// bin. Only one-excitation amplitudes are tracked: vacuum-port operators
// annihilate the input state and drop out of every photon-number expectation.
//
// This path shares nothing with the quadrature route in spectral_modes.hpp
// beyond evaluating f(nu) pointwise.

#include <cmath>
#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"
#include "spectral_modes.hpp"

namespace gravint::oracle {

struct FrequencyGrid {
    std::vector<double> nu;      // bin centres, strictly increasing, rad/s
    std::vector<double> width;   // bin widths
};

inline FrequencyGrid uniform_grid(double lo, double hi, std::size_t bins)
{
    detail::require(bins >= 64, "frequency grid: at least 64 bins required");
    detail::require(hi > lo, "frequency grid: empty interval");
    FrequencyGrid grid;
    grid.nu.resize(bins);
    grid.width.assign(bins, (hi - lo) / static_cast<double>(bins));
    for (std::size_t i = 0; i < bins; ++i)
        grid.nu[i] = lo + (static_cast<double>(i) + 0.5) * grid.width[i];
    return grid;
}

// Uniform bins over the effective support for analytic modes; the native
// sample grid (trapezoid weights) for tabulated ones.
inline FrequencyGrid grid_for(const SpectralMode& mode, std::size_t bins = 4096)
{
    if (const auto* t = std::get_if<TabulatedSpectrum>(&mode.kind())) {
        if (t->nu.size() == 1) return {t->nu, {1.0}};
        return {t->nu, detail::trapezoid_weights(t->nu)};
    }
    const auto [lo, hi] = mode.support();
    return uniform_grid(lo, hi, bins);
}

struct PhotonAmplitudes {
    std::vector<double> nu;
    std::vector<std::complex<double>> amplitude;
};

// Amplitudes f(nu_i) sqrt(width_i), renormalized. Rejects grids that miss
// more than 1e-8 of the mode's norm.
inline PhotonAmplitudes load_state(const SpectralMode& mode, const FrequencyGrid& grid)
{
    detail::require(!grid.nu.empty() && grid.nu.size() == grid.width.size(), "load_state: malformed grid");

    PhotonAmplitudes state;
    state.nu = grid.nu;
    state.amplitude.resize(grid.nu.size());
    quadrature::CompensatedSum coverage;
    for (std::size_t i = 0; i < grid.nu.size(); ++i) {
        state.amplitude[i] = mode.amplitude(grid.nu[i]) * std::sqrt(grid.width[i]);
        coverage.add(std::norm(state.amplitude[i]));
    }
    detail::require(coverage.value() >= 1.0 - 1e-8, "load_state: grid does not cover the mode's support");
    const double scale = 1.0 / std::sqrt(coverage.value());
    for (auto& a : state.amplitude) a *= scale;
    return state;
}

struct PortAmplitudes {
    PhotonAmplitudes plus;
    PhotonAmplitudes minus;
};

// Per bin: b_+- = (exp(-i nu phi_1) +- exp(i phi) exp(-i nu phi_2)) a / 2 with
// phi_1 = dtau, phi_2 = 0 (common propagation phases removed).
inline PortAmplitudes interferometer_transform(const PhotonAmplitudes& in, double dtau, double phi)
{
    PortAmplitudes out;
    out.plus.nu = in.nu;
    out.minus.nu = in.nu;
    out.plus.amplitude.resize(in.nu.size());
    out.minus.amplitude.resize(in.nu.size());
    const std::complex<double> shifter = std::polar(1.0, phi);
    for (std::size_t i = 0; i < in.nu.size(); ++i) {
        const std::complex<double> arm1 = std::polar(1.0, -in.nu[i] * dtau);
        const std::complex<double> arm2 = shifter;  // exp(-i nu * 0) e^{i phi}
        out.plus.amplitude[i] = 0.5 * (arm1 + arm2) * in.amplitude[i];
        out.minus.amplitude[i] = 0.5 * (arm1 - arm2) * in.amplitude[i];
    }
    return out;
}

// Broadband, time-integrated photon number at one output port.
inline double detector_expectation(const PhotonAmplitudes& port)
{
    quadrature::CompensatedSum sum;
    for (const auto& a : port.amplitude) sum.add(std::norm(a));
    return sum.value();
}

struct OracleProbabilities {
    double plus = 0.0;
    double minus = 0.0;
};

inline OracleProbabilities probabilities(const SpectralMode& mode, double dtau, double phi, std::size_t bins = 4096)
{
    const auto ports = interferometer_transform(load_state(mode, grid_for(mode, bins)), dtau, phi);
    return {detector_expectation(ports.plus), detector_expectation(ports.minus)};
}

}  // namespace gravint::oracle
