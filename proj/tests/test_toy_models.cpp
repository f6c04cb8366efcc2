#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "gravint/interferometer.hpp"
#include "gravint/toy_models.hpp"

using namespace gravint;

namespace {

constexpr double c2 = constants::speed_of_light * constants::speed_of_light;

double sigma_for(double t_perp) { return t_perp * t_perp / 4.0; }

// Photon at nu0 = 4e15 with t_perp = 5 fs, and a vertical geometry whose
// homogeneous-field delay is exactly `dtau`.
struct Rig {
    double nu0 = 4e15;
    double t_perp = 5e-15;
    SystemSpec photon;
    Geometry geometry;
    Body body = body_with_gravity(9.81);

    explicit Rig(double dtau_over_tperp, std::size_t levels = 4096, Occupation occ = SingleParticleTwoMode{})
    {
        photon = photon_system(SpectralMode::gaussian(nu0, sigma_for(t_perp)), levels, occ);
        geometry.arm_length = 1e6;
        const double dtau = dtau_over_tperp * t_perp;
        geometry.separation = dtau * c2 * geometry.signal_speed / (geometry.arm_length * 9.81);
    }

    double dtau() const { return dilation(geometry, body, FieldModel::homogeneous); }
};

}  // namespace

TEST(ToyModels, LocalizationParameter)
{
    EXPECT_EQ(localization_parameter(Fock{1}), 0.0);
    EXPECT_EQ(localization_parameter(Fock{7}), 0.0);
    EXPECT_DOUBLE_EQ(localization_parameter(Coherent{{10.0, 0.0}}), 0.1);
    EXPECT_DOUBLE_EQ(localization_parameter(Coherent{{0.0, -4.0}}), 0.25);
    EXPECT_EQ(localization_parameter(SingleParticleTwoMode{}), 1.0);
    EXPECT_THROW(localization_parameter(Fock{0}), DomainError);
    EXPECT_THROW(localization_parameter(Coherent{{0.0, 0.0}}), DomainError);
}

TEST(ToyModels, ModelNamesRoundTrip)
{
    for (auto m : all_coupling_models) EXPECT_EQ(parse_coupling_model(to_string(m)), m);
    EXPECT_THROW(parse_coupling_model("bogus"), ConfigError);
}

TEST(ToyModels, PhotonSystemIsNormalizedAndCentred)
{
    const auto spec = photon_system(SpectralMode::gaussian(4e15, sigma_for(5e-15)), 1024);
    EXPECT_NO_THROW(validate(spec));
    EXPECT_EQ(spec.levels.size(), 1024u);
    double mean = 0.0;
    for (const auto& l : spec.levels) mean += std::norm(l.amplitude) * l.energy;
    EXPECT_NEAR(mean / (constants::hbar * 4e15), 1.0, 1e-14);
    EXPECT_THROW(photon_system(SpectralMode::gaussian(4e15, sigma_for(5e-15)), 5000), DomainError);
    EXPECT_THROW(photon_system(SpectralMode::gaussian(4e15, sigma_for(5e-15)), 0), DomainError);
}

TEST(ToyModels, EvolutionPreservesNorm)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto spec = photon_system(SpectralMode::gaussian(3e15, sigma_for(8e-15)), 512, Coherent{{3.0, 0.0}});
    for (int i = 0; i < 20; ++i) {
        const double lower = -6.3e7 * (0.9 + 0.2 * u(rng));
        const double upper = lower + 1e3 * u(rng);
        const double t = 1e-2 * u(rng);
        for (auto m : all_coupling_models) {
            const auto out = evolve(m, spec, split_state(spec, upper, lower), t);
            EXPECT_NEAR(out.norm(), 1.0, 1e-12) << to_string(m);
        }
    }
}

TEST(ToyModels, EvolveRejectsNegativeTime)
{
    const auto spec = photon_system(SpectralMode::gaussian(4e15, sigma_for(5e-15)), 64);
    EXPECT_THROW(evolve(CouplingModel::QuantumEnergyOperator, spec, split_state(spec, -1.0, -2.0), -1e-3), DomainError);
}

TEST(ToyModels, EqualArmsGiveNoRelativeEffect)
{
    const auto spec = photon_system(SpectralMode::gaussian(4e15, sigma_for(5e-15)), 256);
    const auto initial = split_state(spec, -6.2e7, -6.2e7);
    for (auto m : all_coupling_models) {
        const auto out = evolve(m, spec, initial, 3e-3);
        // same global phase per level on both arms
        const auto o = out.fringe_overlap();
        EXPECT_NEAR(std::abs(o), 1.0, 1e-12) << to_string(m);
        EXPECT_NEAR(std::arg(o), 0.0, 1e-9) << to_string(m);
    }
    const auto semi = evolve(CouplingModel::SemiClassicalMeanEnergy, spec, initial, 3e-3);
    // clock state stays common and factorized: |<clock_0|clock_1>| = 1
    EXPECT_NEAR(std::abs(semi.clock_overlap()), 1.0, 1e-12);
}

TEST(ToyModels, QuantumCouplingEntanglesClockWithPath)
{
    const Rig s(1.0);
    const auto [upper, lower] = arm_potentials(s.geometry, s.body, FieldModel::homogeneous);
    const auto out = evolve(CouplingModel::QuantumEnergyOperator, s.photon, split_state(s.photon, upper, lower),
                            s.geometry.transit_time());
    EXPECT_NEAR(std::abs(out.clock_overlap()), std::exp(-1.0), 1e-9);
    const auto semi = evolve(CouplingModel::SemiClassicalMeanEnergy, s.photon, split_state(s.photon, upper, lower),
                             s.geometry.transit_time());
    EXPECT_NEAR(std::abs(semi.clock_overlap()), 1.0, 1e-12);
}

TEST(ToyModels, ContractTableAtOneCoherenceTime)
{
    const Rig s(1.0);
    ASSERT_NEAR(s.dtau() / s.t_perp, 1.0, 1e-12);
    const double expected_phase = wrap_phase(s.nu0 * s.dtau());

    const auto newton = predict(CouplingModel::NewtonianMass, s.photon, s.geometry, s.body);
    EXPECT_EQ(newton.phase, 0.0);
    EXPECT_EQ(newton.visibility, 1.0);

    const auto semi = predict(CouplingModel::SemiClassicalMeanEnergy, s.photon, s.geometry, s.body);
    const auto quantum = predict(CouplingModel::QuantumEnergyOperator, s.photon, s.geometry, s.body);
    EXPECT_NEAR(wrap_phase(semi.phase - quantum.phase), 0.0, 1e-10);
    EXPECT_NEAR(wrap_phase(semi.phase - expected_phase), 0.0, 1e-9);
    EXPECT_NEAR(semi.visibility, 1.0, 1e-9);
    EXPECT_NEAR(quantum.visibility, std::exp(-1.0), 1e-9);

    const auto smeared = predict(CouplingModel::SmearedPotential, s.photon, s.geometry, s.body);
    EXPECT_EQ(smeared.phase, 0.0);
    EXPECT_EQ(smeared.visibility, 1.0);
}

TEST(ToyModels, QuantumModelMatchesInterferometerPipeline)
{
    for (double ratio : {0.0, 0.3, 1.0, 1.7, 2.5}) {
        const Rig s(ratio);
        const auto q = predict(CouplingModel::QuantumEnergyOperator, s.photon, s.geometry, s.body);
        const auto mode = SpectralMode::gaussian(s.nu0, sigma_for(s.t_perp));
        const auto o = overlap_with_shift(mode, s.dtau());
        EXPECT_NEAR(q.visibility, std::abs(o), 1e-9) << "ratio " << ratio;
        for (double phi : {0.0, 1.1, 4.0}) {
            const auto p = detection_probabilities(mode, s.dtau(), phi);
            const double toy_plus = 0.5 * (1.0 + q.visibility * std::cos(phi + q.phase));
            EXPECT_NEAR(toy_plus, p.plus, 1e-9) << "ratio " << ratio << " phi " << phi;
        }
    }
}

TEST(ToyModels, ZeroDelayConfiguration)
{
    const Rig s(0.0);
    const auto q = predict(CouplingModel::QuantumEnergyOperator, s.photon, s.geometry, s.body);
    EXPECT_EQ(q.phase, 0.0);
    EXPECT_NEAR(q.visibility, 1.0, 1e-15);
}

TEST(ToyModels, InterpolatingEndpoints)
{
    // lambda = 1 (one particle in two modes): semiclassical evolution
    const Rig single(1.0, 4096, SingleParticleTwoMode{});
    const auto a = predict(CouplingModel::Interpolating, single.photon, single.geometry, single.body);
    const auto semi = predict(CouplingModel::SemiClassicalMeanEnergy, single.photon, single.geometry, single.body);
    EXPECT_NEAR(wrap_phase(a.phase - semi.phase), 0.0, 1e-9);
    EXPECT_NEAR(a.visibility, semi.visibility, 1e-9);

    // lambda = 0 (Fock): smeared potential
    const Rig fock(1.0, 4096, Fock{1});
    const auto b = predict(CouplingModel::Interpolating, fock.photon, fock.geometry, fock.body);
    const auto smeared = predict(CouplingModel::SmearedPotential, fock.photon, fock.geometry, fock.body);
    EXPECT_NEAR(wrap_phase(b.phase - smeared.phase), 0.0, 1e-9);
    EXPECT_NEAR(b.visibility, smeared.visibility, 1e-9);

    // coherent state with |alpha| = 1e6: lambda = 1e-6, relative phase -> 0
    const Rig coherent(1.0, 4096, Coherent{{1e6, 0.0}});
    const auto c = predict(CouplingModel::Interpolating, coherent.photon, coherent.geometry, coherent.body);
    EXPECT_NEAR(c.visibility, 1.0, 1e-9);
    EXPECT_NEAR(c.phase, 1e-6 * single.nu0 * single.dtau(), 1e-9);
}

TEST(ToyModels, InterpolatingPhaseScalesWithLambda)
{
    for (double alpha : {2.0, 5.0, 50.0}) {
        const Rig s(0.1, 1024, Coherent{{alpha, 0.0}});
        const auto p = predict(CouplingModel::Interpolating, s.photon, s.geometry, s.body);
        const auto semi = predict(CouplingModel::SemiClassicalMeanEnergy, s.photon, s.geometry, s.body);
        EXPECT_NEAR(p.phase, semi.phase / alpha, 1e-9);
        EXPECT_NEAR(p.visibility, 1.0, 1e-12);
    }
}

TEST(ToyModels, MassiveParticleNewtonianPhase)
{
    // m V t / hbar with V difference g h
    SystemSpec atom;
    atom.rest_mass = 1.443e-25;
    atom.levels = {{0.0, {1.0, 0.0}}};
    const double t = 1e-3, lower = -6.2e7, upper = lower + 0.1;
    // each arm alone accumulates ~1e14 rad; only the difference is observable
    const auto p = predict_with_potentials(CouplingModel::NewtonianMass, atom, upper, lower, t);
    EXPECT_NEAR(wrap_phase(p.phase - atom.rest_mass * (upper - lower) * t / constants::hbar), 0.0, 1e-9);
    EXPECT_NEAR(p.visibility, 1.0, 1e-15);
}

TEST(ToyModels, TwoLevelClockRevival)
{
    // Two internal levels split by dE: quantum coupling makes the clock
    // overlap |cos(dE dtau / 2 hbar)|, which revives at dtau = 2 t_perp.
    SystemSpec clock;
    clock.rest_mass = 1e-25;
    const double de = 1e-19;
    const double a = 1.0 / std::sqrt(2.0);
    clock.levels = {{0.0, {a, 0.0}}, {de, {a, 0.0}}};
    const double t_perp = constants::pi * constants::hbar / de;   // orthogonalization time
    const double t = 1e-3, lower = -6.2e7;
    for (double ratio : {0.0, 0.5, 1.0, 2.0}) {
        const double upper = lower + c2 * ratio * t_perp / t;
        const auto p = predict_with_potentials(CouplingModel::QuantumEnergyOperator, clock, upper, lower, t);
        EXPECT_NEAR(p.visibility, visibility(TwoLevelClock{t_perp}, ratio * t_perp), 1e-6) << ratio;
    }
}

TEST(ToyModels, ScanAgreesWithDirectReadout)
{
    const Rig s(0.8);
    const auto [upper, lower] = arm_potentials(s.geometry, s.body, FieldModel::homogeneous);
    const auto out = evolve(CouplingModel::QuantumEnergyOperator, s.photon, split_state(s.photon, upper, lower),
                            s.geometry.transit_time());
    const auto fit = fit_fringe(fringe_scan(out, phase_grid(64)).rows);
    const auto direct = predict(CouplingModel::QuantumEnergyOperator, s.photon, s.geometry, s.body);
    EXPECT_NEAR(fit.amplitude, direct.visibility, 1e-12);
    EXPECT_NEAR(wrap_phase(fit.phase - direct.phase), 0.0, 1e-11);
}

TEST(ToyModels, CompareModelsCoversAll)
{
    const Rig s(1.0, 512);
    const auto all = compare_models(s.photon, s.geometry, s.body);
    ASSERT_EQ(all.size(), all_coupling_models.size());
    for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].model, all_coupling_models[i]);
}

TEST(ToyModels, RejectsUnnormalizedSystem)
{
    SystemSpec bad;
    bad.levels = {{0.0, {0.5, 0.0}}};
    EXPECT_THROW(validate(bad), DomainError);
    SystemSpec empty;
    EXPECT_THROW(validate(empty), DomainError);
    SystemSpec negative;
    negative.rest_mass = -1.0;
    negative.levels = {{0.0, {1.0, 0.0}}};
    EXPECT_THROW(validate(negative), DomainError);
}
