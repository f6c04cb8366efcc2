#pragma once

// Built-in consistency checks: single-photon oracle vs the overlap route,
// toy-model contract table, and the CHSH bound.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "constants.hpp"
#include "fock_oracle.hpp"
#include "franson_bell.hpp"
#include "interferometer.hpp"
#include "spectral_modes.hpp"
#include "toy_models.hpp"

namespace gravint {

struct SelfCheckOptions {
    std::size_t bins = 4096;
    std::size_t draws = 200;
    std::uint64_t seed = 20121;
    // Test hook: the oracle is fed dtau * dtau_sign. Anything but +1 must fail.
    double dtau_sign = 1.0;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double max_error = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct SelfCheckReport {
    std::vector<CheckResult> checks;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }

    const CheckResult* first_failure() const
    {
        for (const auto& c : checks)
            if (!c.passed) return &c;
        return nullptr;
    }
};

// Oracle tolerance by grid size: 1e-6 at 4096 bins, 1e-4 at coarser grids.
inline double oracle_tolerance(std::size_t bins) { return bins >= 4096 ? 1e-6 : 1e-4; }

struct OracleDraw {
    double nu0 = 0.0;
    double t_perp = 0.0;
    double dtau = 0.0;
    double phi = 0.0;
};

// Gaussian modes with nu0 in [1e15, 5e15] rad/s and t_perp in
// [20/nu0, 20/nu0 + 10 fs] (support stays at positive frequencies),
// dtau in [0, 10 t_perp], phi in [0, 2 pi).
inline std::vector<OracleDraw> oracle_draws(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<OracleDraw> draws(count);
    for (auto& d : draws) {
        d.nu0 = 1e15 + 4e15 * unit(rng);
        d.t_perp = 20.0 / d.nu0 + 10e-15 * unit(rng);
        d.dtau = 10.0 * d.t_perp * unit(rng);
        d.phi = constants::two_pi * unit(rng);
    }
    return draws;
}

inline CheckResult check_oracle_equivalence(const SelfCheckOptions& options)
{
    CheckResult r{"oracle_vs_closed_form", true, 0.0, oracle_tolerance(options.bins), ""};
    std::size_t worst = 0, index = 0;
    for (const auto& d : oracle_draws(options.draws, options.seed)) {
        const double sigma = d.t_perp * d.t_perp / 4.0;
        const auto mode = SpectralMode::gaussian(d.nu0, sigma);
        const auto oracle = oracle::probabilities(mode, options.dtau_sign * d.dtau, d.phi, options.bins);
        const auto closed = gaussian_probabilities(d.nu0, sigma, d.dtau, d.phi);
        const double err = std::max(std::abs(oracle.plus - closed.plus), std::abs(oracle.minus - closed.minus));
        if (err > r.max_error) {
            r.max_error = err;
            worst = index;
        }
        ++index;
    }
    r.passed = r.max_error < r.tolerance;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu draws, %zu bins, worst draw #%zu", options.draws, options.bins, worst);
    r.detail = buf;
    return r;
}

inline CheckResult check_oracle_vs_quadrature(const SelfCheckOptions& options)
{
    CheckResult r{"oracle_vs_quadrature", true, 0.0, oracle_tolerance(options.bins), ""};
    for (const auto& d : oracle_draws(std::min<std::size_t>(options.draws, 20), options.seed + 1)) {
        const auto mode = SpectralMode::gaussian(d.nu0, d.t_perp * d.t_perp / 4.0);
        const auto oracle = oracle::probabilities(mode, options.dtau_sign * d.dtau, d.phi, options.bins);
        const auto quad = detection_probabilities(mode, d.dtau, d.phi);
        r.max_error = std::max(r.max_error, std::abs(oracle.plus - quad.plus));
    }
    r.passed = r.max_error < r.tolerance;
    r.detail = "oracle against adaptive quadrature of the overlap";
    return r;
}

// Photon (m = 0) in a Delta tau = t_perp configuration: expected (phase,
// visibility) per model.
inline CheckResult check_toy_contract()
{
    CheckResult r{"toy_model_contract", true, 0.0, 1e-9, ""};
    constexpr double c2 = constants::speed_of_light * constants::speed_of_light;
    const double nu0 = 4e15, t_perp = 5e-15, t = 1e-3;
    const double dtau = t_perp;
    const double lower = -6.25e7;
    const double upper = lower + c2 * dtau / t;
    const auto spec = photon_system(SpectralMode::gaussian(nu0, t_perp * t_perp / 4.0), 4096);

    const double phase = wrap_phase(nu0 * dtau);
    struct Expect {
        CouplingModel model;
        double phase;
        double visibility;
    };
    const Expect table[] = {
        {CouplingModel::NewtonianMass, 0.0, 1.0},
        {CouplingModel::SemiClassicalMeanEnergy, phase, 1.0},
        {CouplingModel::QuantumEnergyOperator, phase, std::exp(-1.0)},
        {CouplingModel::SmearedPotential, 0.0, 1.0},
    };
    for (const auto& e : table) {
        const auto p = predict_with_potentials(e.model, spec, upper, lower, t);
        // Phases are compared on the circle; the visibility scale sets the
        // phase tolerance.
        const double dphase = std::abs(wrap_phase(p.phase - e.phase));
        r.max_error = std::max({r.max_error, std::abs(p.visibility - e.visibility), dphase * 1e-3});
        if (std::abs(p.visibility - e.visibility) > r.tolerance || dphase > 1e-6) {
            r.passed = false;
            r.detail = std::string(to_string(e.model)) + " off contract";
        }
    }
    if (r.passed) r.detail = "newtonian, semiclassical, quantum, smeared";
    return r;
}

inline CheckResult check_chsh()
{
    CheckResult r{"chsh_bound", true, 0.0, 1e-12, ""};
    const double optimal = franson::chsh(0.0, constants::pi / 2.0, -constants::pi / 4.0, constants::pi / 4.0);
    r.max_error = std::abs(optimal - franson::tsirelson_bound);
    double largest = 0.0;
    // 5 degree grid with a = 0 (the correlation depends on phase sums only).
    const double step = constants::pi / 36.0;
    for (int i = 0; i < 72; ++i)
        for (int j = 0; j < 72; ++j)
            for (int k = 0; k < 72; ++k)
                largest = std::max(largest, franson::chsh(0.0, i * step, j * step, k * step));
    r.passed = r.max_error < r.tolerance && largest <= franson::tsirelson_bound + r.tolerance;
    char buf[96];
    std::snprintf(buf, sizeof buf, "optimal S = %.15f, grid max = %.15f", optimal, largest);
    r.detail = buf;
    return r;
}

inline SelfCheckReport self_check(const SelfCheckOptions& options = {})
{
    SelfCheckReport report;
    report.checks.push_back(check_oracle_equivalence(options));
    report.checks.push_back(check_oracle_vs_quadrature(options));
    report.checks.push_back(check_toy_contract());
    report.checks.push_back(check_chsh());
    return report;
}

}  // namespace gravint
