#pragma once

// Weak-field Schwarzschild geometry around a spherical body: potentials,
// coordinate times of horizontal light paths, the proper-time dilation
// between two stacked horizontal arms, and proper radial distances.

#include <cmath>
#include <string>
#include <utility>

#include "constants.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

namespace gravint {

struct Body {
    double gm = constants::earth_gm;           // m^3/s^2
    double radius = constants::earth_radius;   // m, reference radius

    double surface_gravity() const { return gm / (radius * radius); }
};

inline Body earth() { return Body{}; }

// A body whose surface gravity at `radius` equals `g` (homogeneous-field
// replication of textbook numbers such as g = 9.81).
inline Body body_with_gravity(double g, double radius = constants::earth_radius)
{
    return Body{g * radius * radius, radius};
}

inline double schwarzschild_radius(double gm)
{
    return 2.0 * gm / (constants::speed_of_light * constants::speed_of_light);
}

inline void validate(const Body& body)
{
    detail::require(body.gm > 0.0, "body: GM must be positive");
    detail::require(body.radius > schwarzschild_radius(body.gm),
                    "body: reference radius inside the Schwarzschild radius");
}

struct Geometry {
    double arm_length = 1e5;                              // l, m
    double separation = 0.0;                              // h, m
    double base_radius = constants::earth_radius;         // r of the lower arm, m
    double orientation = 0.0;                             // rad, 0 = separation radial
    double signal_speed = constants::speed_of_light;      // v, m/s

    // h cos(theta), written via sin so that theta = pi/2 gives exactly zero.
    double effective_separation() const { return separation * std::sin(constants::pi / 2.0 - orientation); }

    double transit_time() const { return arm_length / signal_speed; }
};

inline void validate(const Geometry& g)
{
    detail::require(g.arm_length > 0.0, "geometry: arm length must be positive");
    detail::require(g.separation >= 0.0, "geometry: separation must be non-negative");
    detail::require(g.base_radius > 0.0, "geometry: base radius must be positive");
    detail::require(g.orientation >= 0.0 && g.orientation <= constants::pi / 2.0,
                    "geometry: orientation must lie in [0, pi/2]");
    detail::require(g.signal_speed > 0.0 && g.signal_speed <= constants::speed_of_light,
                    "geometry: signal speed must lie in (0, c]");
    detail::require(g.separation / g.base_radius < constants::max_separation_ratio,
                    "geometry: separation too large for the weak-field treatment (h/r >= 1e-2)");
}

// Which field the two arms see.
//   homogeneous:   V(r + h) = V(r) + g h, the paper-style lgh/c^3 regime
//   schwarzschild: V(r + h) = -GM/(r + h)
enum class FieldModel { homogeneous, schwarzschild };

inline double potential(const Body& body, double r)
{
    detail::require(r > 0.0, "potential: radius must be positive");
    return -body.gm / r;
}

inline double local_gravity(const Body& body, double r)
{
    detail::require(r > 0.0, "local_gravity: radius must be positive");
    return body.gm / (r * r);
}

// Coordinate (far-observer) time for a signal crossing a horizontal arm at
// radius `path_radius`.
inline double coordinate_time(const Geometry& geometry, const Body& body, double path_radius)
{
    constexpr double c2 = constants::speed_of_light * constants::speed_of_light;
    const double metric = 1.0 + 2.0 * potential(body, path_radius) / c2;
    detail::require(metric > 0.0, "coordinate_time: path inside horizon");
    return geometry.arm_length / (geometry.signal_speed * std::sqrt(metric));
}

struct Dilation {
    double exact = 0.0;         // sqrt(1+2V(r+h)/c^2) (t_r - t_{r+h})
    double first_order = 0.0;   // (l/v) (V(r+h) - V(r)) / c^2
    double weak_field = 0.0;    // (l/v) g h / c^2, g = GM/r^2
};

inline Dilation proper_time_dilation(const Geometry& geometry, const Body& body)
{
    validate(geometry);
    detail::require(body.gm >= 0.0, "proper_time_dilation: GM must be non-negative");
    constexpr double c2 = constants::speed_of_light * constants::speed_of_light;

    const double r = geometry.base_radius;
    const double h = geometry.effective_separation();
    const double a = 1.0 + 2.0 * potential(body, r) / c2;
    const double b = 1.0 + 2.0 * potential(body, r + h) / c2;
    detail::require(a > 0.0 && b > 0.0, "proper_time_dilation: arm inside horizon");

    // V(r+h) - V(r) without cancellation.
    const double dv = body.gm * h / (r * (r + h));
    const double t = geometry.transit_time();

    Dilation d;
    d.exact = t * (2.0 * dv / c2) / (std::sqrt(a) * (std::sqrt(a) + std::sqrt(b)));
    d.first_order = t * dv / c2;
    d.weak_field = t * local_gravity(body, r) * h / c2;
    return d;
}

inline double dilation(const Geometry& geometry, const Body& body, FieldModel field)
{
    const Dilation d = proper_time_dilation(geometry, body);
    return field == FieldModel::homogeneous ? d.weak_field : d.exact;
}

// Potentials of the (upper, lower) arms.
inline std::pair<double, double> arm_potentials(const Geometry& geometry, const Body& body, FieldModel field)
{
    validate(geometry);
    const double r = geometry.base_radius;
    const double h = geometry.effective_separation();
    const double lower = potential(body, r);
    if (field == FieldModel::homogeneous) return {lower + local_gravity(body, r) * h, lower};
    return {potential(body, r + h), lower};
}

// Locally measured radial distance between r and r + h_coord.
inline double proper_radial_distance(const Body& body, double r, double h_coord)
{
    detail::require(r > 0.0, "proper_radial_distance: radius must be positive");
    detail::require(h_coord >= 0.0, "proper_radial_distance: coordinate separation must be non-negative");
    detail::require(body.gm >= 0.0, "proper_radial_distance: GM must be non-negative");
    detail::require(r > schwarzschild_radius(body.gm),
                    "proper_radial_distance: interval touches the horizon");
    if (h_coord == 0.0 || body.gm == 0.0) return h_coord;

    // Integrate only the excess 1/sqrt(1-x) - 1 so the tolerance applies to
    // the relativistic correction rather than to h itself.
    const double rs = schwarzschild_radius(body.gm);
    auto excess = [rs](double rp) {
        const double x = rs / rp;
        const double s = std::sqrt(1.0 - x);
        return x / (s * (1.0 + s));
    };
    return h_coord + quadrature::integrate(excess, r, r + h_coord, {1e-15 * h_coord, 1e-12});
}

}  // namespace gravint
