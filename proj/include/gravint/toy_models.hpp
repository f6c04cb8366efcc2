#pragma once

// Gravity-coupling models for a system in a two-arm superposition:
//
//   NewtonianMass            H = H_s + m V(r)
//   SemiClassicalMeanEnergy  H = H_s + <H_s> V(r)/c^2      (phase only)
//   QuantumEnergyOperator    H = H_s (1 + V(r)/c^2)         (phase + which-path clock)
//   SmearedPotential         H = H_s (1 + <V>/c^2)          (no relative phase)
//   Interpolating            H_i = H_s (1 + <V>/c^2)
//                                  + lambda (<H_s> V(r)/c^2 - H_s <V>/c^2)
//
// lambda is the localization parameter dN/<N> of the mode occupation. All
// couplings are diagonal in (arm, energy level), so evolution is a phase per
// amplitude and preserves the norm exactly.

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "interferometer.hpp"
#include "quadrature.hpp"
#include "spacetime.hpp"
#include "spectral_modes.hpp"

namespace gravint {

enum class CouplingModel {
    NewtonianMass,
    SemiClassicalMeanEnergy,
    QuantumEnergyOperator,
    SmearedPotential,
    Interpolating,
};

inline constexpr std::array<CouplingModel, 5> all_coupling_models{
    CouplingModel::NewtonianMass, CouplingModel::SemiClassicalMeanEnergy, CouplingModel::QuantumEnergyOperator,
    CouplingModel::SmearedPotential, CouplingModel::Interpolating};

inline std::string_view to_string(CouplingModel model)
{
    switch (model) {
    case CouplingModel::NewtonianMass: return "newtonian_mass";
    case CouplingModel::SemiClassicalMeanEnergy: return "semiclassical_mean_energy";
    case CouplingModel::QuantumEnergyOperator: return "quantum_energy_operator";
    case CouplingModel::SmearedPotential: return "smeared_potential";
    case CouplingModel::Interpolating: return "interpolating";
    }
    return "unknown";
}

inline CouplingModel parse_coupling_model(std::string_view name)
{
    for (auto m : all_coupling_models)
        if (to_string(m) == name) return m;
    throw ConfigError("unknown coupling model: " + std::string(name));
}

struct Fock {
    int photons = 1;
};
struct Coherent {
    std::complex<double> alpha{1.0, 0.0};
};
struct SingleParticleTwoMode {};

using Occupation = std::variant<Fock, Coherent, SingleParticleTwoMode>;

// dN / <N>: 0 for Fock states, 1/|alpha| for coherent states, 1 for one
// particle shared between two modes.
inline double localization_parameter(const Occupation& occupation)
{
    struct Visitor {
        double operator()(const Fock& f) const
        {
            detail::require(f.photons >= 1, "localization_parameter: undefined for the vacuum (<N> = 0)");
            return 0.0;
        }
        double operator()(const Coherent& c) const
        {
            detail::require(std::abs(c.alpha) > 0.0, "localization_parameter: undefined for alpha = 0");
            return 1.0 / std::abs(c.alpha);
        }
        double operator()(const SingleParticleTwoMode&) const { return 1.0; }
    };
    return std::visit(Visitor{}, occupation);
}

struct EnergyLevel {
    double energy = 0.0;                 // internal energy E_k, J (excluding m c^2)
    std::complex<double> amplitude{};    // clock amplitude on this level
};

struct SystemSpec {
    double rest_mass = 0.0;              // kg; 0 for a photon
    std::vector<EnergyLevel> levels;     // H_s = m c^2 + E_k on level k
    Occupation occupation = SingleParticleTwoMode{};
};

inline void validate(const SystemSpec& spec)
{
    detail::require(spec.rest_mass >= 0.0, "system: rest mass must be non-negative");
    detail::require(!spec.levels.empty(), "system: no energy levels");
    quadrature::CompensatedSum norm;
    for (const auto& l : spec.levels) norm.add(std::norm(l.amplitude));
    detail::require(std::abs(norm.value() - 1.0) < 1e-10, "system: level amplitudes not normalized");
}

// Discretizes a photon spectral mode into at most `levels` energy levels,
// E_k = hbar nu_k, over the mode's support.
inline SystemSpec photon_system(const SpectralMode& mode, std::size_t levels = 4096,
                                Occupation occupation = SingleParticleTwoMode{})
{
    detail::require(levels >= 1 && levels <= 4096, "photon_system: level count must lie in [1, 4096]");
    SystemSpec spec;
    spec.occupation = occupation;

    if (const auto* t = std::get_if<TabulatedSpectrum>(&mode.kind())) {
        detail::require(t->nu.size() <= 4096, "photon_system: tabulated grid exceeds 4096 levels");
        const auto w = t->nu.size() == 1 ? std::vector<double>{1.0} : detail::trapezoid_weights(t->nu);
        for (std::size_t i = 0; i < t->nu.size(); ++i)
            spec.levels.push_back({constants::hbar * t->nu[i], t->amplitude[i] * std::sqrt(w[i])});
    } else {
        const auto [lo, hi] = mode.support();
        const double width = (hi - lo) / static_cast<double>(levels);
        for (std::size_t i = 0; i < levels; ++i) {
            const double nu = lo + (static_cast<double>(i) + 0.5) * width;
            spec.levels.push_back({constants::hbar * nu, mode.amplitude(nu) * std::sqrt(width)});
        }
    }
    quadrature::CompensatedSum norm;
    for (const auto& l : spec.levels) norm.add(std::norm(l.amplitude));
    const double scale = 1.0 / std::sqrt(norm.value());
    for (auto& l : spec.levels) l.amplitude *= scale;
    return spec;
}

// Joint state sum_{arm,k} arm[a] clock[a][k] |r_a>|k>. Arm 0 is the upper
// path (r + h), arm 1 the lower path (r).
struct TwoArmState {
    std::array<std::complex<double>, 2> arm{};
    std::array<std::vector<std::complex<double>>, 2> clock;
    std::array<double, 2> potential{};  // J/kg

    double norm() const
    {
        quadrature::CompensatedSum sum;
        for (int a = 0; a < 2; ++a)
            for (const auto& c : clock[a]) sum.add(std::norm(arm[a] * c));
        return sum.value();
    }

    // <upper|lower> interference term, 2 sum_k conj(psi_0k) psi_1k.
    std::complex<double> interference() const
    {
        quadrature::CompensatedComplexSum sum;
        for (std::size_t k = 0; k < clock[0].size(); ++k) sum.add(std::conj(arm[0] * clock[0][k]) * arm[1] * clock[1][k]);
        return 2.0 * sum.value();
    }

    // Fringe term normalized by the arm weights, 2 <psi_0|psi_1> / (|psi_0|^2 +
    // |psi_1|^2), so P+- = (1 +- Re[e^{i phi} O]) / 2. Bit-identical arms give
    // exactly 1.
    std::complex<double> fringe_overlap() const
    {
        quadrature::CompensatedComplexSum cross;
        quadrature::CompensatedSum n0, n1;
        for (std::size_t k = 0; k < clock[0].size(); ++k) {
            const std::complex<double> p0 = arm[0] * clock[0][k];
            const std::complex<double> p1 = arm[1] * clock[1][k];
            cross.add(std::conj(p0) * p1);
            n0.add(std::norm(p0));
            n1.add(std::norm(p1));
        }
        return 2.0 * cross.value() / (n0.value() + n1.value());
    }

    // Overlap of the normalized clock states of the two arms.
    std::complex<double> clock_overlap() const
    {
        quadrature::CompensatedComplexSum sum, n0, n1;
        for (std::size_t k = 0; k < clock[0].size(); ++k) {
            sum.add(std::conj(clock[0][k]) * clock[1][k]);
            n0.add(std::norm(clock[0][k]));
            n1.add(std::norm(clock[1][k]));
        }
        return sum.value() / std::sqrt(n0.value().real() * n1.value().real());
    }
};

// Equal-weight superposition of the two arms with a common clock state.
inline TwoArmState split_state(const SystemSpec& spec, double upper_potential, double lower_potential)
{
    validate(spec);
    TwoArmState state;
    const double a = 1.0 / std::sqrt(2.0);
    state.arm = {a, a};
    for (auto& c : state.clock) {
        c.reserve(spec.levels.size());
        for (const auto& l : spec.levels) c.push_back(l.amplitude);
    }
    state.potential = {upper_potential, lower_potential};
    return state;
}

namespace detail {

// exp(-i theta) for large theta, reduced modulo 2 pi first.
inline std::complex<double> phase_factor(double theta)
{
    return std::polar(1.0, -std::fmod(theta, constants::two_pi));
}

}  // namespace detail

inline TwoArmState evolve(CouplingModel model, const SystemSpec& spec, TwoArmState state, double t)
{
    detail::require(t >= 0.0, "evolve: time must be non-negative");
    validate(spec);
    detail::require(state.clock[0].size() == spec.levels.size() && state.clock[1].size() == spec.levels.size(),
                    "evolve: clock dimension does not match the system");

    constexpr double c2 = constants::speed_of_light * constants::speed_of_light;
    const double rest = spec.rest_mass * c2;
    const double rate = t / constants::hbar;

    // <H_s> on the initial clock state; conserved because H_s commutes with
    // every coupling here.
    quadrature::CompensatedSum mean;
    for (const auto& l : spec.levels) mean.add(std::norm(l.amplitude) * l.energy);
    const double mean_energy = rest + mean.value();

    // <V> with the arm weights.
    const double w0 = std::norm(state.arm[0]), w1 = std::norm(state.arm[1]);
    const double smeared = (w0 * state.potential[0] + w1 * state.potential[1]) / (w0 + w1);

    const double lambda = model == CouplingModel::Interpolating ? localization_parameter(spec.occupation) : 0.0;

    // Every phase is linear in the arm potential: arm_coeff * V on the arm
    // amplitude and level_coeff(E) * V on each level, plus an arm-independent
    // level_common(E). Phases are split at V_ref = V(lower arm): the V_ref
    // part is one factor shared by both arms (so it cancels exactly between
    // them) and the arm part uses V - V_ref, which is exact in floating point
    // for nearby potentials.
    double arm_coeff = 0.0;
    switch (model) {
    case CouplingModel::NewtonianMass: arm_coeff = rate * spec.rest_mass; break;
    case CouplingModel::SemiClassicalMeanEnergy: arm_coeff = rate * mean_energy / c2; break;
    case CouplingModel::Interpolating: arm_coeff = rate * lambda * mean_energy / c2; break;
    default: break;
    }
    auto level_coeff = [&](double e) {
        return model == CouplingModel::QuantumEnergyOperator ? rate * e / c2 : 0.0;
    };
    auto level_common = [&](double e) {
        switch (model) {
        case CouplingModel::SmearedPotential: return rate * e * smeared / c2;
        case CouplingModel::Interpolating: return rate * (1.0 - lambda) * e * smeared / c2;
        default: return 0.0;
        }
    };

    const double v_ref = state.potential[1];
    const std::complex<double> arm_shared = detail::phase_factor(arm_coeff * v_ref);
    for (int a = 0; a < 2; ++a) state.arm[a] *= arm_shared * detail::phase_factor(arm_coeff * (state.potential[a] - v_ref));

    // Rest energy and level energy get separate factors: summing m c^2 with
    // a level energy would round away the level splitting.
    auto energy_factors = [&](double e, int arm) {
        const double b = level_coeff(e);
        return detail::phase_factor(rate * e) * detail::phase_factor(level_common(e)) *
               detail::phase_factor(b * v_ref) * detail::phase_factor(b * (state.potential[arm] - v_ref));
    };
    for (int a = 0; a < 2; ++a) {
        const std::complex<double> rest_factor = energy_factors(rest, a);
        for (std::size_t k = 0; k < spec.levels.size(); ++k)
            state.clock[a][k] *= rest_factor * energy_factors(spec.levels[k].energy, a);
    }
    return state;
}

struct Prediction {
    CouplingModel model = CouplingModel::QuantumEnergyOperator;
    double phase = 0.0;        // fringe phase, rad, wrapped to (-pi, pi]
    double visibility = 0.0;
};

// Evolves the split state for time t with fixed arm potentials. The fringe
// P+ = (1 + V cos(phi + alpha)) / 2 has V = |O| and alpha = arg O.
inline Prediction predict_with_potentials(CouplingModel model, const SystemSpec& spec, double upper_potential,
                                          double lower_potential, double t)
{
    const TwoArmState out = evolve(model, spec, split_state(spec, upper_potential, lower_potential), t);
    const std::complex<double> o = out.fringe_overlap();
    return {model, wrap_phase(std::arg(o)), std::abs(o)};
}

// Phase-shifter scan of an evolved state through the interferometer.
inline FringeScan fringe_scan(const TwoArmState& state, const std::vector<double>& phi_grid)
{
    return fringe_scan_from_overlap(state.fringe_overlap(), phi_grid);
}

// Same, over the arm transit time l/v of a geometry.
inline Prediction predict(CouplingModel model, const SystemSpec& spec, const Geometry& geometry, const Body& body,
                          FieldModel field = FieldModel::homogeneous)
{
    const auto [upper, lower] = arm_potentials(geometry, body, field);
    return predict_with_potentials(model, spec, upper, lower, geometry.transit_time());
}

inline std::vector<Prediction> compare_models(const SystemSpec& spec, const Geometry& geometry, const Body& body,
                                              FieldModel field = FieldModel::homogeneous)
{
    std::vector<Prediction> out;
    for (auto m : all_coupling_models) out.push_back(predict(m, spec, geometry, body, field));
    return out;
}

}  // namespace gravint
