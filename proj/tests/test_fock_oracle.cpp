#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "gravint/fock_oracle.hpp"
#include "gravint/self_check.hpp"

using namespace gravint;

namespace {

double sigma_for(double t_perp) { return t_perp * t_perp / 4.0; }

double closed_minus(double nu0, double sigma, double dtau, double phi)
{
    return 0.5 * (1.0 - std::exp(-dtau * dtau / (4.0 * sigma)) * std::cos(nu0 * dtau + phi));
}

double oracle_error(const OracleDraw& d, std::size_t bins)
{
    const double sigma = sigma_for(d.t_perp);
    const auto mode = SpectralMode::gaussian(d.nu0, sigma);
    return std::abs(oracle::probabilities(mode, d.dtau, d.phi, bins).minus - closed_minus(d.nu0, sigma, d.dtau, d.phi));
}

}  // namespace

TEST(FockOracle, UniformGridLayout)
{
    const auto grid = oracle::uniform_grid(1.0, 2.0, 100);
    ASSERT_EQ(grid.nu.size(), 100u);
    EXPECT_DOUBLE_EQ(grid.nu.front(), 1.005);
    EXPECT_DOUBLE_EQ(grid.nu.back(), 1.995);
    for (double w : grid.width) EXPECT_DOUBLE_EQ(w, 0.01);
    EXPECT_THROW(oracle::uniform_grid(1.0, 2.0, 63), DomainError);
    EXPECT_THROW(oracle::uniform_grid(2.0, 1.0, 128), DomainError);
}

TEST(FockOracle, GridMustCoverSupport)
{
    const auto mode = SpectralMode::gaussian(4e15, sigma_for(10e-15));
    // Only the upper half of the spectrum: half the norm is missing.
    EXPECT_THROW(oracle::load_state(mode, oracle::uniform_grid(4e15, 6e15, 256)), DomainError);
    const auto state = oracle::load_state(mode, oracle::grid_for(mode, 256));
    double n = 0.0;
    for (const auto& a : state.amplitude) n += std::norm(a);
    EXPECT_NEAR(n, 1.0, 1e-14);
}

TEST(FockOracle, PerBinDetectorIdentity)
{
    // |1 - e^{i x}|^2 / 4 = (1 - cos x) / 2 for each bin with phi = 0.
    const auto mode = SpectralMode::gaussian(4e15, sigma_for(5e-15));
    const auto in = oracle::load_state(mode, oracle::grid_for(mode, 512));
    const double dtau = 2.3e-15;
    const auto out = oracle::interferometer_transform(in, dtau, 0.0);
    for (std::size_t i = 0; i < in.nu.size(); ++i) {
        const double p = std::norm(in.amplitude[i]);
        EXPECT_NEAR(std::norm(out.minus.amplitude[i]), p * 0.5 * (1.0 - std::cos(in.nu[i] * dtau)), 1e-15);
        EXPECT_NEAR(std::norm(out.plus.amplitude[i]) + std::norm(out.minus.amplitude[i]), p, 1e-15);
    }
}

TEST(FockOracle, MatchesClosedFormOverRandomDraws)
{
    double worst = 0.0;
    for (const auto& d : oracle_draws(200, 20121)) worst = std::max(worst, oracle_error(d, 4096));
    EXPECT_LT(worst, 1e-6);
}

TEST(FockOracle, CoarseGridStaysAccurate)
{
    double worst = 0.0;
    for (const auto& d : oracle_draws(200, 20121)) worst = std::max(worst, oracle_error(d, 256));
    EXPECT_LT(worst, 1e-4);
}

TEST(FockOracle, ErrorShrinksWithBinsWhenUnderResolved)
{
    // At 64 bins the phase step per bin reaches several radians for the
    // longest delays, so the error is visible; doubling the bins removes it.
    double e64 = 0.0, e128 = 0.0, e256 = 0.0;
    for (const auto& d : oracle_draws(200, 20121)) {
        e64 = std::max(e64, oracle_error(d, 64));
        e128 = std::max(e128, oracle_error(d, 128));
        e256 = std::max(e256, oracle_error(d, 256));
    }
    EXPECT_GT(e64, 1e-6);
    EXPECT_LT(e128, e64 * 1e-6);
    EXPECT_LT(e256, 1e-13);
}

TEST(FockOracle, ProbabilitiesSumToOne)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const auto mode = SpectralMode::gaussian(4e15, sigma_for(5e-15));
        const auto p = oracle::probabilities(mode, 20e-15 * u(rng), 6.0 * u(rng), 1024);
        EXPECT_NEAR(p.plus + p.minus, 1.0, 1e-14);
    }
}

TEST(FockOracle, MonochromaticLine)
{
    const auto line = SpectralMode::tabulated({4e15}, {{1.0, 0.0}});
    for (double dtau : {0.0, 1e-15, 3.3e-13}) {
        const auto p = oracle::probabilities(line, dtau, 0.4);
        EXPECT_NEAR(p.minus, 0.5 * (1.0 - std::cos(4e15 * dtau + 0.4)), 1e-12);
    }
}

TEST(FockOracle, TabulatedMatchesQuadratureRoute)
{
    std::vector<double> nu;
    std::vector<std::complex<double>> amp;
    for (int i = 0; i <= 400; ++i) {
        const double x = 3.5e15 + 1e15 * i / 400.0;
        nu.push_back(x);
        amp.emplace_back(1.0 + 0.3 * std::sin(x / 1e14), 0.2 * std::cos(x / 7e13));
    }
    const auto mode = SpectralMode::tabulated(nu, amp);
    for (double dtau : {0.0, 5e-16, 4e-15}) {
        const auto o = oracle::probabilities(mode, dtau, 1.1);
        const auto q = detection_probabilities(mode, dtau, 1.1);
        EXPECT_NEAR(o.minus, q.minus, 1e-6) << dtau;
    }
}

TEST(FockOracle, SignMutationIsCaught)
{
    SelfCheckOptions options;
    options.draws = 50;
    EXPECT_TRUE(check_oracle_equivalence(options).passed);
    options.dtau_sign = -1.0;
    const auto flipped = check_oracle_equivalence(options);
    EXPECT_FALSE(flipped.passed);
    EXPECT_GT(flipped.max_error, 0.1);
}

TEST(FockOracle, RefinementNeverIncreasesErrorAboveRoundingFloor)
{
    // Once the grid resolves the mode the error is rounding noise (~1e-15)
    // and fluctuates; refinement is checked down to that floor.
    const double floor = 1e-13;
    double previous = 1.0;
    for (std::size_t bins : {64u, 96u, 128u, 256u, 1024u, 4096u}) {
        double worst = 0.0;
        for (const auto& d : oracle_draws(200, 20121)) worst = std::max(worst, oracle_error(d, bins));
        EXPECT_LE(worst, std::max(previous, floor)) << bins << " bins";
        previous = worst;
    }
    EXPECT_LT(previous, floor);
}
