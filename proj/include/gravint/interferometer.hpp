#pragma once

// Mach-Zehnder output statistics for a single photon (or clock) whose two
// arms differ by a proper-time delay dtau. The lower arm is the delayed one;
// phi is the controllable phase-shifter setting.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <ostream>
#include <variant>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "spectral_modes.hpp"

namespace gravint {

struct DetectionProbabilities {
    double plus = 0.0;
    double minus = 0.0;
};

// P+- = (1 +- Re[e^{i phi} O]) / 2 for a complex interference term O.
inline DetectionProbabilities probabilities_from_overlap(std::complex<double> overlap, double phi)
{
    const double fringe = (std::polar(1.0, phi) * overlap).real();
    return {0.5 * (1.0 + fringe), 0.5 * (1.0 - fringe)};
}

inline DetectionProbabilities detection_probabilities(const SpectralMode& mode, double dtau, double phi)
{
    return probabilities_from_overlap(overlap_with_shift(mode, dtau), phi);
}

// Closed form for a gaussian mode:
// P+- = (1 +- exp(-(dtau / 2 sqrt(sigma))^2) cos(nu0 dtau + phi)) / 2.
inline DetectionProbabilities gaussian_probabilities(double nu0, double sigma, double dtau, double phi)
{
    detail::require(sigma > 0.0, "gaussian_probabilities: sigma must be positive");
    const double x = dtau / (2.0 * std::sqrt(sigma));
    const double fringe = std::exp(-x * x) * std::cos(nu0 * dtau + phi);
    return {0.5 * (1.0 + fringe), 0.5 * (1.0 - fringe)};
}

// Visibility laws. All satisfy V(0) = 1 and depend on dtau only through
// dtau / t_perp (except the generic overlap, which carries its own scale).
struct PhotonGaussianClock {
    double coherence_time = 0.0;
};

struct TwoLevelClock {
    double orthogonalization_time = 0.0;
};

struct GenericOverlapClock {
    SpectralMode mode;
};

using ClockModel = std::variant<PhotonGaussianClock, TwoLevelClock, GenericOverlapClock>;

inline double visibility(const ClockModel& clock, double dtau)
{
    detail::require(dtau >= 0.0, "visibility: dtau must be non-negative");
    struct Visitor {
        double dtau;
        double operator()(const PhotonGaussianClock& c) const
        {
            detail::require(c.coherence_time > 0.0, "visibility: t_perp must be positive");
            const double x = dtau / c.coherence_time;
            return std::exp(-x * x);
        }
        double operator()(const TwoLevelClock& c) const
        {
            detail::require(c.orthogonalization_time > 0.0, "visibility: t_perp must be positive");
            const double x = dtau / c.orthogonalization_time;
            // cos(pi x / 2) with exact zeros and ones at integer x.
            const double r = std::remainder(x, 2.0);  // in [-1, 1]
            return std::abs(std::sin(constants::pi / 2.0 * (1.0 - std::abs(r))));
        }
        double operator()(const GenericOverlapClock& c) const { return std::abs(overlap_with_shift(c.mode, dtau)); }
    };
    return std::visit(Visitor{dtau}, clock);
}

// Which-path distinguishability D = sqrt(1 - V^2).
inline double distinguishability(double visibility)
{
    detail::require(visibility >= 0.0 && visibility <= 1.0, "distinguishability: visibility outside [0, 1]");
    return std::sqrt((1.0 - visibility) * (1.0 + visibility));
}

inline double phase_shift(double nu0, double dtau) { return nu0 * dtau; }

inline double wrap_phase(double phase)
{
    double w = std::remainder(phase, constants::two_pi);
    if (w <= -constants::pi) w += constants::two_pi;
    return w;
}

struct FringeRow {
    double phi = 0.0;
    double p_plus = 0.0;
    double p_minus = 0.0;
};

struct FringeScan {
    std::vector<FringeRow> rows;
    double visibility = 0.0;     // (max - min) / (max + min) of P+ over the grid
    double phase_offset = 0.0;   // alpha in P+ = (1 + V cos(phi + alpha)) / 2, wrapped
};

// n samples spanning [start, start + 2 pi].
inline std::vector<double> phase_grid(std::size_t n, double start = 0.0)
{
    detail::require(n >= 2, "phase_grid: need at least two samples");
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = start + constants::two_pi * static_cast<double>(i) / static_cast<double>(n - 1);
    return grid;
}

struct FringeFit {
    double amplitude = 0.0;
    double phase = 0.0;
};

// Least-squares fit of P+ = a + b cos(phi) + c sin(phi). Exact for ideal
// fringes on any grid, so it recovers amplitude and phase without the
// grid-resolution error of max/min extraction.
inline FringeFit fit_fringe(const std::vector<FringeRow>& rows)
{
    std::array<std::array<double, 4>, 3> m{};  // augmented normal equations
    for (const auto& r : rows) {
        const std::array<double, 3> basis{1.0, std::cos(r.phi), std::sin(r.phi)};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += basis[i] * basis[j];
            m[i][3] += basis[i] * r.p_plus;
        }
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int i = col + 1; i < 3; ++i)
            if (std::abs(m[i][col]) > std::abs(m[pivot][col])) pivot = i;
        std::swap(m[col], m[pivot]);
        detail::require(m[col][col] != 0.0, "fit_fringe: degenerate phase grid");
        for (int i = 0; i < 3; ++i) {
            if (i == col) continue;
            const double f = m[i][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[i][j] -= f * m[col][j];
        }
    }
    const double b = m[1][3] / m[1][1];
    const double c = m[2][3] / m[2][2];
    return {2.0 * std::hypot(b, c), wrap_phase(std::atan2(-c, b))};
}

inline FringeScan fringe_scan_from_overlap(std::complex<double> overlap, const std::vector<double>& phi_grid)
{
    detail::require(phi_grid.size() >= 32, "fringe_scan: phase grid needs at least 32 samples");
    const auto [lo, hi] = std::minmax_element(phi_grid.begin(), phi_grid.end());
    detail::require(*hi - *lo >= constants::two_pi * (1.0 - 1e-12), "fringe_scan: phase grid must span 2 pi");

    FringeScan scan;
    scan.rows.resize(phi_grid.size());
    std::transform(phi_grid.begin(), phi_grid.end(), scan.rows.begin(), [&](double phi) {
        const auto p = probabilities_from_overlap(overlap, phi);
        return FringeRow{phi, p.plus, p.minus};
    });

    const auto [pmin, pmax] = std::minmax_element(scan.rows.begin(), scan.rows.end(),
                                                  [](const auto& a, const auto& b) { return a.p_plus < b.p_plus; });
    scan.visibility = (pmax->p_plus - pmin->p_plus) / (pmax->p_plus + pmin->p_plus);
    scan.phase_offset = fit_fringe(scan.rows).phase;
    return scan;
}

inline FringeScan fringe_scan(const SpectralMode& mode, double dtau, const std::vector<double>& phi_grid)
{
    return fringe_scan_from_overlap(overlap_with_shift(mode, dtau), phi_grid);
}

}  // namespace gravint
