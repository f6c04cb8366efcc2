#pragma once

// Franson-type two-photon test. Photon 1 crosses the vertical interferometer
// whose long arm is delayed by gravity; photon 2 crosses a horizontal one
// whose long arm is longer by dl. Coincident pairs post-select
//   |psi> = (e^{i(phi1+phi2)} |L>_1|L>_2 + |S>_1|S>_2) / sqrt(2)
// and each photon is then recombined on a 50/50 splitter whose two output
// ports are labelled +1 / -1.

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "constants.hpp"
#include "errors.hpp"

namespace gravint::franson {

struct PostSelectedState {
    std::complex<double> long_long{};    // |L>_1 |L>_2
    std::complex<double> short_short{};  // |S>_1 |S>_2
    double weight_long_long = 0.5;       // branch populations |amplitude|^2
    double weight_short_short = 0.5;
};

inline PostSelectedState post_selected_state(double phi1, double phi2)
{
    const double a = 1.0 / std::sqrt(2.0);
    return {std::polar(a, phi1 + phi2), {a, 0.0}, 0.5, 0.5};
}

namespace detail {

// 50/50 recombination, rows = output port (+1, -1), columns = arm (L, S).
inline std::complex<double> splitter(int outcome, int arm)
{
    const double a = 1.0 / std::sqrt(2.0);
    if (arm == 0) return a;                 // L -> (+ and -) in phase
    return outcome == +1 ? a : -a;          // S -> + in phase, - out of phase
}

inline int port_index(int outcome) { return outcome == +1 ? 0 : 1; }

inline constexpr double splitter_weight = 0.5;  // |splitter(outcome, arm)|^2

inline void require_outcome(int c)
{
    gravint::detail::require(c == 1 || c == -1, "franson: outcomes must be +1 or -1");
}

// Reduced state of either photon: tracing out the partner removes the LL/SS
// coherence (the partner's L and S are orthogonal), leaving the branch
// populations on the diagonal. Each port then takes splitter_weight of each.
inline double reduced_port_probability(const PostSelectedState& psi)
{
    return splitter_weight * psi.weight_long_long + splitter_weight * psi.weight_short_short;
}

}  // namespace detail

// P(c1, c2) after propagating both photons of the post-selected state
// through their final splitters.
inline double coincidence_probability(int c1, int c2, double phi1, double phi2)
{
    gravint::detail::require((c1 == 1 || c1 == -1) && (c2 == 1 || c2 == -1),
                             "coincidence_probability: outcomes must be +1 or -1");
    const PostSelectedState psi = post_selected_state(phi1, phi2);
    const std::complex<double> amplitude =
        psi.long_long * detail::splitter(c1, 0) * detail::splitter(c2, 0) +
        psi.short_short * detail::splitter(c1, 1) * detail::splitter(c2, 1);
    return std::norm(amplitude);
}

// E = sum c1 c2 P(c1, c2); equals cos(phi1 + phi2).
inline double correlation(double phi1, double phi2)
{
    double e = 0.0;
    for (int c1 : {+1, -1})
        for (int c2 : {+1, -1}) e += c1 * c2 * coincidence_probability(c1, c2, phi1, phi2);
    return e;
}

// Marginal P(c1) on the first photon, from its reduced density matrix.
inline double marginal_first(int c1, double phi1, double phi2)
{
    detail::require_outcome(c1);
    return detail::reduced_port_probability(post_selected_state(phi1, phi2));
}

inline double marginal_second(int c2, double phi1, double phi2)
{
    detail::require_outcome(c2);
    return detail::reduced_port_probability(post_selected_state(phi1, phi2));
}

// S = |E(a,b) + E(a,b') + E(a',b) - E(a',b')|.
inline double chsh(double a, double a_prime, double b, double b_prime)
{
    return std::abs(correlation(a, b) + correlation(a, b_prime) + correlation(a_prime, b) -
                    correlation(a_prime, b_prime));
}

inline constexpr double tsirelson_bound = 2.8284271247461900976;  // 2 sqrt(2)

struct FransonConfig {
    double dtau_gr = 0.0;          // gravitational delay of the vertical interferometer, s
    double length_difference = 0.0; // dl of the horizontal interferometer, m
    double phi1 = 0.0;
    double phi2 = 0.0;
    double coherence_time = 0.0;   // photon coherence time t_c, s
};

struct MatchingReport {
    double dtau_gr = 0.0;
    double dtau_inferred = 0.0;    // dl / c
    double mismatch = 0.0;         // |inferred - gr| / gr
    bool valid = false;            // post-selection requires t_c < dtau
};

inline MatchingReport matching_report(const FransonConfig& config)
{
    MatchingReport r;
    r.dtau_gr = config.dtau_gr;
    r.dtau_inferred = config.length_difference / constants::speed_of_light;
    if (config.dtau_gr > 0.0)
        r.mismatch = std::abs(r.dtau_inferred - r.dtau_gr) / r.dtau_gr;
    else
        r.mismatch = r.dtau_inferred == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    r.valid = config.coherence_time < config.dtau_gr;
    return r;
}

}  // namespace gravint::franson
