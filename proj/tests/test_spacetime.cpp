#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gravint/spacetime.hpp"

using namespace gravint;

namespace {

constexpr double c = constants::speed_of_light;

}  // namespace

// Reference values below were computed with mpmath at 50 digits.

TEST(Spacetime, PotentialAtEarthRadius)
{
    const Body body{3.986e14, 6.371e6};
    EXPECT_NEAR(potential(body, 6.371e6), -62564746.5076, 1e-4);
}

TEST(Spacetime, PotentialRejectsNonPositiveRadius)
{
    EXPECT_THROW(potential(earth(), 0.0), DomainError);
    EXPECT_THROW(potential(earth(), -1.0), DomainError);
}

TEST(Spacetime, CoordinateTimeFlatSpace)
{
    Geometry g;
    g.arm_length = 1.0;
    const Body flat{0.0, 1.0};
    EXPECT_NEAR(coordinate_time(g, flat, 1.0), 3.33564095198e-9, 1e-20);
}

TEST(Spacetime, CoordinateTimeRatioAtEarth)
{
    Geometry g;
    const double ratio = coordinate_time(g, earth(), constants::earth_radius) / g.transit_time() - 1.0;
    // double rounding of the ratio itself limits this to ~1e-16
    EXPECT_NEAR(ratio, 6.961274594e-10, 3e-16);
    EXPECT_NEAR(ratio / (-potential(earth(), constants::earth_radius) / (c * c)), 1.0, 1e-6);
}

TEST(Spacetime, WeakFieldDilationTextbookNumbers)
{
    Geometry g;
    g.arm_length = 1e5;
    g.separation = 2.752e4;
    const Body body = body_with_gravity(9.81);
    const Dilation d = proper_time_dilation(g, body);
    EXPECT_NEAR(d.weak_field / 1.00197140654e-15, 1.0, 1e-11);  // reference has 12 digits
}

TEST(Spacetime, ExactAgreesWithFirstOrderWithinPotentialScale)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        Geometry g;
        g.arm_length = 1.0 + 1e6 * u(rng);
        g.base_radius = 6.0e6 + 4e6 * u(rng);
        g.separation = g.base_radius * 9.9e-3 * u(rng);
        g.orientation = constants::pi / 2.0 * u(rng);
        const Body body = earth();
        const Dilation d = proper_time_dilation(g, body);
        const double v_over_c2 = std::abs(potential(body, g.base_radius)) / (c * c);
        if (d.exact == 0.0) continue;
        EXPECT_LT(std::abs(d.exact - d.first_order) / d.exact, 3.0 * v_over_c2);
        const double h_over_r = g.effective_separation() / g.base_radius;
        EXPECT_LE(std::abs(d.exact - d.weak_field) / d.exact, 2.0 * h_over_r + 3.0 * v_over_c2);
        EXPECT_GE(d.exact, 0.0);
    }
}

TEST(Spacetime, DilationScalings)
{
    Geometry g;
    g.separation = 1000.0;
    const Body body = earth();
    const double base = proper_time_dilation(g, body).exact;

    Geometry longer = g;
    longer.arm_length *= 3.0;
    EXPECT_NEAR(proper_time_dilation(longer, body).exact / base, 3.0, 1e-13);

    Geometry slower = g;
    slower.signal_speed = c / 4.0;
    EXPECT_NEAR(proper_time_dilation(slower, body).exact / base, 4.0, 1e-13);

    Geometry higher = g;
    higher.separation = 2000.0;
    EXPECT_GT(proper_time_dilation(higher, body).exact, base);
}

TEST(Spacetime, HorizontalSeparationGivesNoDilation)
{
    Geometry g;
    g.separation = 1000.0;
    g.orientation = constants::pi / 2.0;
    const Dilation d = proper_time_dilation(g, earth());
    EXPECT_EQ(d.exact, 0.0);
    EXPECT_EQ(d.first_order, 0.0);
    EXPECT_EQ(d.weak_field, 0.0);
}

TEST(Spacetime, ZeroSeparationGivesNoDilation)
{
    Geometry g;
    EXPECT_EQ(proper_time_dilation(g, earth()).exact, 0.0);
}

TEST(Spacetime, GeometryValidation)
{
    Geometry g;
    g.separation = 0.01 * g.base_radius;
    EXPECT_THROW(validate(g), DomainError);

    Geometry fast;
    fast.signal_speed = 1.0001 * c;
    EXPECT_THROW(validate(fast), DomainError);

    Geometry tilted;
    tilted.orientation = 2.0;
    EXPECT_THROW(validate(tilted), DomainError);

    Geometry negative;
    negative.separation = -1.0;
    EXPECT_THROW(validate(negative), DomainError);

    Geometry no_arm;
    no_arm.arm_length = 0.0;
    EXPECT_THROW(proper_time_dilation(no_arm, earth()), DomainError);
}

TEST(Spacetime, BodyValidation)
{
    EXPECT_NO_THROW(validate(earth()));
    EXPECT_THROW(validate(Body{0.0, 1.0}), DomainError);
    EXPECT_THROW(validate(Body{-1.0, 1.0}), DomainError);
    // radius inside its own Schwarzschild radius
    EXPECT_THROW(validate(Body{constants::earth_gm, 1e-3}), DomainError);
}

TEST(Spacetime, HomogeneousArmPotentials)
{
    Geometry g;
    g.separation = 500.0;
    const Body body = body_with_gravity(9.81);
    const auto [upper, lower] = arm_potentials(g, body, FieldModel::homogeneous);
    EXPECT_DOUBLE_EQ(lower, potential(body, g.base_radius));
    EXPECT_NEAR(upper - lower, 9.81 * 500.0, 1e-7);

    const auto [su, sl] = arm_potentials(g, body, FieldModel::schwarzschild);
    EXPECT_DOUBLE_EQ(su, potential(body, g.base_radius + 500.0));
    EXPECT_DOUBLE_EQ(sl, lower);
}

TEST(Spacetime, ProperRadialDistanceExcess)
{
    const double r = 6.371e6, h = 1000.0;
    const double excess = proper_radial_distance(earth(), r, h) - h;
    EXPECT_NEAR(excess, 6.960728326e-7, 3e-13);  // L - h cancels ~13 digits of L
    // first-order series GM h / (r (r + h) c^2) ~ 6.9613e-7 differs only at O(h/r)
    EXPECT_NEAR(excess / 6.961274587e-7, 1.0, 2.0 * h / r);
}

TEST(Spacetime, ProperRadialDistanceFlatAndDegenerate)
{
    EXPECT_EQ(proper_radial_distance(Body{0.0, 1.0}, 6.371e6, 1000.0), 1000.0);
    EXPECT_EQ(proper_radial_distance(earth(), 6.371e6, 0.0), 0.0);
    EXPECT_THROW(proper_radial_distance(earth(), 6.371e6, -1.0), DomainError);
    EXPECT_THROW(proper_radial_distance(earth(), 0.0, 1.0), DomainError);
    EXPECT_GT(proper_radial_distance(earth(), 6.371e6, 1000.0), 1000.0);
}
