#pragma once

// Normalized single-photon spectral mode functions f(nu) and the delayed
// self-overlap  O(dtau) = \int dnu |f(nu)|^2 exp(i nu dtau)  that sets the
// interference contrast. Frequencies are angular (rad/s) throughout.

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

namespace gravint {

struct GaussianSpectrum {
    double center = 0.0;   // nu_0, rad/s
    double sigma = 0.0;    // s^2; |f|^2 has variance 1/(2 sigma)
};

struct GaussianPeak {
    double weight = 1.0;   // real amplitude weight
    double center = 0.0;
    double sigma = 0.0;
};

// f = N * sum_i w_i g_i with g_i unit-norm gaussians; N fixed by normalization.
struct MultiGaussianSpectrum {
    std::vector<GaussianPeak> peaks;
    double normalization = 1.0;
};

// Sampled amplitudes, linearly interpolated between grid points. A single
// sample represents a monochromatic line.
struct TabulatedSpectrum {
    std::vector<double> nu;
    std::vector<std::complex<double>> amplitude;
};

// Gaussian support handling.
//   positive  the truncated support nu0 +- 8/sqrt(sigma) must stay above 0
//   formal    whole-line gaussian as in the closed-form overlap; needed for
//             broadband pulses (t_perp ~ 1 fs at optical carriers) whose
//             spectra extend to nu <= 0
enum class Support { positive, formal };

class SpectralMode {
public:
    using Kind = std::variant<GaussianSpectrum, MultiGaussianSpectrum, TabulatedSpectrum>;

    static SpectralMode gaussian(double center, double sigma, Support support = Support::positive);
    static SpectralMode multi_gaussian(std::vector<GaussianPeak> peaks, Support support = Support::positive);
    static SpectralMode tabulated(std::vector<double> nu, std::vector<std::complex<double>> amplitude);

    const Kind& kind() const { return kind_; }
    bool is_gaussian() const { return std::holds_alternative<GaussianSpectrum>(kind_); }
    bool is_monochromatic() const;

    std::complex<double> amplitude(double nu) const;
    double intensity(double nu) const { return std::norm(amplitude(nu)); }

    // Interval outside of which |f|^2 is negligible (< 1e-28 relative).
    std::pair<double, double> support() const { return support_; }
    // Panel boundaries used for quadrature over the support.
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    double mean_frequency() const { return mean_; }
    double spectral_width() const { return width_; }

private:
    explicit SpectralMode(Kind kind) : kind_(std::move(kind)) {}
    void compute_moments();

    Kind kind_;
    std::pair<double, double> support_{0.0, 0.0};
    std::vector<double> breakpoints_;
    double mean_ = 0.0;
    double width_ = 0.0;
};

namespace detail {

inline double gaussian_amplitude(double nu, double center, double sigma)
{
    const double d = nu - center;
    return std::pow(sigma / constants::pi, 0.25) * std::exp(-0.5 * sigma * d * d);
}

inline double gaussian_halfwidth(double sigma)
{
    return constants::gaussian_support_halfwidth / std::sqrt(sigma);
}

inline void require_gaussian_parameters(double center, double sigma, Support support)
{
    require(std::isfinite(center) && std::isfinite(sigma) && sigma > 0.0,
            "gaussian mode: sigma must be positive and finite");
    require(center > 0.0, "non-physical spectrum: gaussian centre at nu <= 0");
    if (support == Support::positive)
        require(center - gaussian_halfwidth(sigma) > 0.0, "non-physical spectrum: gaussian support reaches nu <= 0");
}

// \int g_i g_j dnu for unit-norm gaussian amplitudes.
inline double gaussian_cross_overlap(const GaussianPeak& a, const GaussianPeak& b)
{
    const double s = a.sigma + b.sigma;
    const double d = a.center - b.center;
    return std::pow(a.sigma * b.sigma, 0.25) * std::sqrt(2.0 / s) *
           std::exp(-a.sigma * b.sigma * d * d / (2.0 * s));
}

// Trapezoid weights for a strictly increasing grid.
inline std::vector<double> trapezoid_weights(const std::vector<double>& x)
{
    std::vector<double> w(x.size(), 0.0);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double h = x[i + 1] - x[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

}  // namespace detail

inline SpectralMode SpectralMode::gaussian(double center, double sigma, Support support)
{
    detail::require_gaussian_parameters(center, sigma, support);
    SpectralMode mode{GaussianSpectrum{center, sigma}};
    mode.compute_moments();
    return mode;
}

inline SpectralMode SpectralMode::multi_gaussian(std::vector<GaussianPeak> peaks, Support support)
{
    detail::require(!peaks.empty(), "multi-gaussian mode: no peaks");
    for (const auto& p : peaks) {
        detail::require(std::isfinite(p.weight), "multi-gaussian mode: non-finite weight");
        detail::require_gaussian_parameters(p.center, p.sigma, support);
    }
    double norm2 = 0.0;
    for (const auto& a : peaks)
        for (const auto& b : peaks) norm2 += a.weight * b.weight * detail::gaussian_cross_overlap(a, b);
    detail::require(norm2 > 0.0, "multi-gaussian mode: weights cancel to zero norm");

    SpectralMode mode{MultiGaussianSpectrum{std::move(peaks), 1.0 / std::sqrt(norm2)}};
    mode.compute_moments();
    return mode;
}

inline SpectralMode SpectralMode::tabulated(std::vector<double> nu, std::vector<std::complex<double>> amplitude)
{
    detail::require(!nu.empty(), "tabulated mode: empty grid");
    detail::require(nu.size() == amplitude.size(), "tabulated mode: grid and amplitude sizes differ");
    for (std::size_t i = 0; i < nu.size(); ++i) {
        detail::require(std::isfinite(nu[i]) && std::isfinite(amplitude[i].real()) &&
                            std::isfinite(amplitude[i].imag()),
                        "tabulated mode: non-finite entry");
        detail::require(nu[i] > 0.0, "non-physical spectrum: tabulated grid reaches nu <= 0");
        if (i > 0) detail::require(nu[i] > nu[i - 1], "tabulated mode: grid must be strictly increasing");
    }

    if (nu.size() == 1) {
        detail::require(std::abs(amplitude[0]) > 0.0, "tabulated mode: zero amplitude");
        amplitude[0] /= std::abs(amplitude[0]);
    } else {
        const auto w = detail::trapezoid_weights(nu);
        quadrature::CompensatedSum norm;
        for (std::size_t i = 0; i < nu.size(); ++i) norm.add(w[i] * std::norm(amplitude[i]));
        detail::require(norm.value() > 0.0, "tabulated mode: zero norm");
        const double scale = 1.0 / std::sqrt(norm.value());
        for (auto& a : amplitude) a *= scale;
    }

    SpectralMode mode{TabulatedSpectrum{std::move(nu), std::move(amplitude)}};
    mode.compute_moments();
    return mode;
}

inline bool SpectralMode::is_monochromatic() const
{
    const auto* t = std::get_if<TabulatedSpectrum>(&kind_);
    return t != nullptr && t->nu.size() == 1;
}

inline std::complex<double> SpectralMode::amplitude(double nu) const
{
    struct Visitor {
        double nu;
        std::complex<double> operator()(const GaussianSpectrum& g) const
        {
            return detail::gaussian_amplitude(nu, g.center, g.sigma);
        }
        std::complex<double> operator()(const MultiGaussianSpectrum& m) const
        {
            double sum = 0.0;
            for (const auto& p : m.peaks) sum += p.weight * detail::gaussian_amplitude(nu, p.center, p.sigma);
            return m.normalization * sum;
        }
        std::complex<double> operator()(const TabulatedSpectrum& t) const
        {
            if (t.nu.size() == 1) return nu == t.nu[0] ? t.amplitude[0] : 0.0;
            if (nu < t.nu.front() || nu > t.nu.back()) return 0.0;
            const auto it = std::upper_bound(t.nu.begin(), t.nu.end(), nu);
            if (it == t.nu.end()) return t.amplitude.back();
            const std::size_t i = static_cast<std::size_t>(it - t.nu.begin()) - 1;
            const double s = (nu - t.nu[i]) / (t.nu[i + 1] - t.nu[i]);
            return (1.0 - s) * t.amplitude[i] + s * t.amplitude[i + 1];
        }
    };
    return std::visit(Visitor{nu}, kind_);
}

inline void SpectralMode::compute_moments()
{
    if (const auto* g = std::get_if<GaussianSpectrum>(&kind_)) {
        const double hw = detail::gaussian_halfwidth(g->sigma);
        support_ = {g->center - hw, g->center + hw};
        breakpoints_ = {support_.first, support_.second};
        mean_ = g->center;
        width_ = std::sqrt(0.5 / g->sigma);
        return;
    }
    if (const auto* t = std::get_if<TabulatedSpectrum>(&kind_)) {
        support_ = {t->nu.front(), t->nu.back()};
        breakpoints_ = t->nu;
        if (t->nu.size() == 1) {
            mean_ = t->nu[0];
            width_ = 0.0;
            return;
        }
        const auto w = detail::trapezoid_weights(t->nu);
        quadrature::CompensatedSum m1;
        for (std::size_t i = 0; i < w.size(); ++i) m1.add(w[i] * std::norm(t->amplitude[i]) * t->nu[i]);
        mean_ = m1.value();
        quadrature::CompensatedSum m2;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double d = t->nu[i] - mean_;
            m2.add(w[i] * std::norm(t->amplitude[i]) * d * d);
        }
        width_ = std::sqrt(std::max(0.0, m2.value()));
        return;
    }

    const auto& m = std::get<MultiGaussianSpectrum>(kind_);
    double lo = m.peaks.front().center, hi = lo;
    breakpoints_.clear();
    for (const auto& p : m.peaks) {
        const double hw = detail::gaussian_halfwidth(p.sigma);
        lo = std::min(lo, p.center - hw);
        hi = std::max(hi, p.center + hw);
        breakpoints_.insert(breakpoints_.end(), {p.center - hw, p.center, p.center + hw});
    }
    std::sort(breakpoints_.begin(), breakpoints_.end());
    support_ = {lo, hi};

    // Moments relative to the first peak keep the integrands O(width).
    const double ref = m.peaks.front().center;
    const auto first = quadrature::integrate_complex_panels(
        [&](double nu) { return std::complex<double>(intensity(nu) * (nu - ref), 0.0); }, breakpoints_);
    mean_ = ref + first.real();
    const auto second = quadrature::integrate_complex_panels(
        [&](double nu) {
            const double d = nu - mean_;
            return std::complex<double>(intensity(nu) * d * d, 0.0);
        },
        breakpoints_);
    width_ = std::sqrt(std::max(0.0, second.real()));
}

// \int dnu |f|^2 exp(i nu dtau): adaptive quadrature for analytic modes,
// trapezoid on the native grid for tabulated ones.
inline std::complex<double> overlap_with_shift(const SpectralMode& mode, double dtau)
{
    const double ref = mode.mean_frequency();
    const std::complex<double> carrier = std::polar(1.0, ref * dtau);
    if (dtau == 0.0) return {1.0, 0.0};

    if (const auto* t = std::get_if<TabulatedSpectrum>(&mode.kind())) {
        if (t->nu.size() == 1) return std::polar(1.0, t->nu[0] * dtau);
        const auto w = detail::trapezoid_weights(t->nu);
        quadrature::CompensatedComplexSum sum;
        for (std::size_t i = 0; i < w.size(); ++i)
            sum.add(w[i] * std::norm(t->amplitude[i]) * std::polar(1.0, (t->nu[i] - ref) * dtau));
        return carrier * sum.value();
    }

    const auto envelope = quadrature::integrate_complex_panels(
        [&](double nu) { return mode.intensity(nu) * std::polar(1.0, (nu - ref) * dtau); }, mode.breakpoints());
    return carrier * envelope;
}

// \int dnu |f|^2, by the same route as the overlap.
inline double norm(const SpectralMode& mode)
{
    if (const auto* t = std::get_if<TabulatedSpectrum>(&mode.kind())) {
        if (t->nu.size() == 1) return std::norm(t->amplitude[0]);
        const auto w = detail::trapezoid_weights(t->nu);
        quadrature::CompensatedSum sum;
        for (std::size_t i = 0; i < w.size(); ++i) sum.add(w[i] * std::norm(t->amplitude[i]));
        return sum.value();
    }
    return quadrature::integrate_complex_panels(
               [&](double nu) { return std::complex<double>(mode.intensity(nu), 0.0); }, mode.breakpoints())
        .real();
}

struct CoherenceSearch {
    double step_in_widths = 0.05;      // scan step, in units of 1/spectral_width
    double window_in_widths = 400.0;   // give up beyond this delay
};

// Smallest dtau > 0 with |O(dtau)| = 1/e. Empty when the overlap never decays
// that far inside the search window (monochromatic and near-monochromatic modes).
inline std::optional<double> coherence_time(const SpectralMode& mode, CoherenceSearch search = {})
{
    if (const auto* g = std::get_if<GaussianSpectrum>(&mode.kind())) return 2.0 * std::sqrt(g->sigma);

    const double width = mode.spectral_width();
    if (mode.is_monochromatic() || !(width > 0.0)) return std::nullopt;

    const double threshold = std::exp(-1.0);
    const double step = search.step_in_widths / width;
    const double limit = search.window_in_widths / width;
    auto magnitude = [&](double dtau) { return std::abs(overlap_with_shift(mode, dtau)); };

    double lo = 0.0;
    double hi = step;
    while (magnitude(hi) > threshold) {
        lo = hi;
        hi += step;
        if (hi > limit) return std::nullopt;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (magnitude(mid) > threshold ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Delay at which a gaussian overlap magnitude drops to 1/n: 2 sqrt(sigma ln n).
inline double generalized_threshold(double sigma, double n)
{
    detail::require(sigma > 0.0, "generalized_threshold: sigma must be positive");
    detail::require(n > 1.0, "generalized_threshold: n must exceed 1");
    return 2.0 * std::sqrt(sigma * std::log(n));
}

// Tabulated text format: `nu amplitude_re [amplitude_im]` per line,
// whitespace separated, '#' starts a comment line.
inline SpectralMode read_tabulated(std::istream& in)
{
    std::vector<double> nu;
    std::vector<std::complex<double>> amp;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        double f = 0.0, re = 0.0, im = 0.0;
        if (!(fields >> f >> re)) throw ConfigError("tabulated mode: malformed line " + std::to_string(line_no));
        if (!(fields >> im)) {
            if (!fields.eof()) throw ConfigError("tabulated mode: malformed line " + std::to_string(line_no));
            im = 0.0;
        }
        std::string extra;
        if (fields >> extra) throw ConfigError("tabulated mode: too many columns on line " + std::to_string(line_no));
        nu.push_back(f);
        amp.emplace_back(re, im);
    }
    return SpectralMode::tabulated(std::move(nu), std::move(amp));
}

inline SpectralMode load_tabulated(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spectrum file: " + path);
    return read_tabulated(in);
}

}  // namespace gravint
