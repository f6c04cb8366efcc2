#pragma once

// Parameter sweeps over the spacetime -> mode -> interferometer pipeline,
// interferometer-size planning, and the config readers shared by the CLI.

#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "constants.hpp"
#include "errors.hpp"
#include "franson_bell.hpp"
#include "interferometer.hpp"
#include "spacetime.hpp"
#include "spectral_modes.hpp"
#include "toy_models.hpp"

namespace gravint {

// Area enclosed by an interferometer whose arms differ by one coherence time:
// A = t_perp c^2 v / g.
inline double required_area(double t_perp, double speed, double g)
{
    detail::require(t_perp > 0.0 && speed > 0.0 && g > 0.0, "required_area: arguments must be positive");
    detail::require(speed <= constants::speed_of_light, "required_area: speed exceeds c");
    constexpr double c2 = constants::speed_of_light * constants::speed_of_light;
    return t_perp * c2 * speed / g;
}

// Area for a phase shift of dphi_min at carrier nu0: dphi c^3 / (nu0 g).
inline double required_area_for_phase(double nu0, double dphi_min, double g)
{
    detail::require(nu0 > 0.0 && g > 0.0, "required_area_for_phase: nu0 and g must be positive");
    detail::require(dphi_min >= 0.0, "required_area_for_phase: phase resolution must be non-negative");
    constexpr double c = constants::speed_of_light;
    return dphi_min * c * c * c / (nu0 * g);
}

enum class SweepVariable { area, dtau, phase, sigma, theta };

inline std::string_view to_string(SweepVariable v)
{
    switch (v) {
    case SweepVariable::area: return "area";
    case SweepVariable::dtau: return "dtau";
    case SweepVariable::phase: return "phase";
    case SweepVariable::sigma: return "sigma";
    case SweepVariable::theta: return "theta";
    }
    return "unknown";
}

inline SweepVariable parse_sweep_variable(std::string_view name)
{
    for (auto v : {SweepVariable::area, SweepVariable::dtau, SweepVariable::phase, SweepVariable::sigma,
                   SweepVariable::theta})
        if (to_string(v) == name) return v;
    throw ConfigError("unknown sweep variable: " + std::string(name));
}

inline FieldModel parse_field_model(std::string_view name)
{
    if (name == "homogeneous") return FieldModel::homogeneous;
    if (name == "schwarzschild") return FieldModel::schwarzschild;
    throw ConfigError("unknown field model: " + std::string(name));
}

// What the interferometer uses as its clock.
//   photon        the spectral mode itself (overlap of the delayed mode)
//   gaussian_law  exp(-(dtau/t_perp)^2) envelope on the carrier
//   two_level     cos(pi dtau / 2 t_perp) on the carrier (signed)
enum class ClockLaw { photon, gaussian_law, two_level };

inline std::string_view to_string(ClockLaw law)
{
    switch (law) {
    case ClockLaw::photon: return "photon";
    case ClockLaw::gaussian_law: return "gaussian_law";
    case ClockLaw::two_level: return "two_level";
    }
    return "unknown";
}

inline ClockLaw parse_clock_law(std::string_view name)
{
    for (auto l : {ClockLaw::photon, ClockLaw::gaussian_law, ClockLaw::two_level})
        if (to_string(l) == name) return l;
    throw ConfigError("unknown clock law: " + std::string(name));
}

// Spectral mode description. `infinite` is the infinitely long pulse: a
// single line at nu0, pure phase, no envelope.
struct ModeSpec {
    enum class Kind { gaussian, multi_gaussian, tabulated, infinite };
    Kind kind = Kind::gaussian;
    double center = 4e15;
    double sigma = 2.5e-31;                 // t_perp = 1 fs
    Support support = Support::positive;
    std::vector<GaussianPeak> peaks;
    std::string file;

    SpectralMode build() const
    {
        switch (kind) {
        case Kind::gaussian: return SpectralMode::gaussian(center, sigma, support);
        case Kind::multi_gaussian: return SpectralMode::multi_gaussian(peaks, support);
        case Kind::tabulated: return load_tabulated(file);
        case Kind::infinite: return SpectralMode::tabulated({center}, {1.0});
        }
        throw DomainError("mode: unknown kind");
    }
};

struct ModelSet {
    std::vector<CouplingModel> models;
    std::size_t levels = 1024;
    Occupation occupation = SingleParticleTwoMode{};
    double rest_mass = 0.0;
};

struct SweepConfig {
    SweepVariable variable = SweepVariable::area;
    double start = 0.0;
    double stop = 1.0;
    std::size_t samples = 2;
    double phi = 0.0;                       // phase-shifter setting
    std::string label;                      // series name of the baseline rows

    ModeSpec mode;
    ClockLaw clock = ClockLaw::photon;
    std::optional<double> clock_tperp;      // defaults to the mode's coherence time
    Geometry geometry;
    FieldModel field = FieldModel::homogeneous;
    Body body;
    ModelSet models;
};

inline void validate(const SweepConfig& config)
{
    detail::require(config.samples >= 2, "sweep: at least two samples required");
    detail::require(config.start < config.stop, "sweep: start must be below stop");
    validate(config.body);
    switch (config.variable) {
    case SweepVariable::area:
    case SweepVariable::dtau:
        detail::require(config.start >= 0.0, "sweep: range must be non-negative");
        break;
    case SweepVariable::sigma:
        detail::require(config.start > 0.0, "sweep: sigma must be positive");
        detail::require(config.mode.kind == ModeSpec::Kind::gaussian, "sweep: sigma sweeps need a gaussian mode");
        break;
    case SweepVariable::theta:
        detail::require(config.start >= 0.0 && config.stop <= constants::pi / 2.0,
                        "sweep: orientation range must lie in [0, pi/2]");
        break;
    case SweepVariable::phase: break;
    }
    if (config.clock_tperp) detail::require(*config.clock_tperp > 0.0, "sweep: clock t_perp must be positive");
    if (config.clock != ClockLaw::photon && !config.clock_tperp)
        detail::require(config.mode.kind == ModeSpec::Kind::gaussian,
                        "sweep: clock t_perp required unless the mode is gaussian");
    detail::require(config.models.levels >= 1 && config.models.levels <= 4096, "sweep: levels must lie in [1, 4096]");
}

struct SweepRow {
    std::string series;
    double x = 0.0;
    double p_plus = 0.0;
    double p_minus = 0.0;
    double visibility = 0.0;
    double phase = 0.0;     // rad; nu_mean dtau for the baseline, unwrapped fringe phase for models
};

struct SweepResult {
    SweepVariable variable = SweepVariable::area;
    std::vector<SweepRow> rows;
};

inline std::vector<double> sweep_points(double start, double stop, std::size_t samples)
{
    std::vector<double> x(samples);
    const double step = (stop - start) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) x[i] = start + step * static_cast<double>(i);
    x.back() = stop;
    return x;
}

namespace detail {

// Delayed self-overlap, closed form for gaussians.
inline std::complex<double> mode_overlap(const SpectralMode& mode, double dtau)
{
    if (const auto* g = std::get_if<GaussianSpectrum>(&mode.kind())) {
        const double x = dtau / (2.0 * std::sqrt(g->sigma));
        return std::polar(std::exp(-x * x), std::fmod(g->center * dtau, constants::two_pi));
    }
    return overlap_with_shift(mode, dtau);
}

inline std::complex<double> clock_overlap(ClockLaw law, double t_perp, const SpectralMode& mode, double dtau)
{
    const double carrier = std::fmod(mode.mean_frequency() * dtau, constants::two_pi);
    switch (law) {
    case ClockLaw::photon: return mode_overlap(mode, dtau);
    case ClockLaw::gaussian_law: return std::polar(visibility(PhotonGaussianClock{t_perp}, dtau), carrier);
    case ClockLaw::two_level: {
        // Signed amplitude cos(pi x / 2): the sign flips between revivals.
        const double r = std::remainder(dtau / t_perp, 4.0);  // in [-2, 2]
        const double amplitude = std::sin(constants::pi / 2.0 * (1.0 - std::abs(r)));
        return std::polar(1.0, carrier) * amplitude;
    }
    }
    return {};
}

inline double unwrap_near(double phase, double previous)
{
    return phase + constants::two_pi * std::round((previous - phase) / constants::two_pi);
}

}  // namespace detail

// Geometry and delay of one sweep sample.
struct SamplePoint {
    Geometry geometry;
    double dtau = 0.0;
    double phi = 0.0;
    double sigma = 0.0;
};

inline SamplePoint sample_point(const SweepConfig& config, double x)
{
    SamplePoint p{config.geometry, 0.0, config.phi, config.mode.sigma};
    switch (config.variable) {
    case SweepVariable::area: p.geometry.separation = x / config.geometry.arm_length; break;
    case SweepVariable::theta: p.geometry.orientation = x; break;
    case SweepVariable::dtau: p.dtau = x; break;
    case SweepVariable::phase: p.phi = x; break;
    case SweepVariable::sigma: p.sigma = x; break;
    }
    if (config.variable != SweepVariable::dtau) p.dtau = dilation(p.geometry, config.body, config.field);
    return p;
}

inline SweepResult run_sweep(const SweepConfig& config)
{
    validate(config);
    SweepResult result;
    result.variable = config.variable;

    const std::string baseline = config.label.empty() ? std::string(to_string(config.clock)) : config.label;
    const bool per_sample_mode = config.variable == SweepVariable::sigma;
    std::optional<SpectralMode> fixed_mode;
    std::optional<SystemSpec> fixed_system;
    if (!per_sample_mode) {
        fixed_mode = config.mode.build();
        if (!config.models.models.empty()) {
            fixed_system = photon_system(*fixed_mode, config.models.levels, config.models.occupation);
            fixed_system->rest_mass = config.models.rest_mass;
        }
    }

    const auto xs = sweep_points(config.start, config.stop, config.samples);
    std::vector<SweepRow> base_rows;
    std::vector<std::vector<SweepRow>> model_rows(config.models.models.size());

    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        try {
            const SamplePoint p = sample_point(config, x);
            ModeSpec mode_spec = config.mode;
            mode_spec.sigma = p.sigma;
            const SpectralMode mode = per_sample_mode ? mode_spec.build() : *fixed_mode;

            double t_perp = 0.0;
            if (config.clock != ClockLaw::photon)
                t_perp = config.clock_tperp ? *config.clock_tperp : 2.0 * std::sqrt(p.sigma);

            const auto overlap = detail::clock_overlap(config.clock, t_perp, mode, p.dtau);
            const auto probs = probabilities_from_overlap(overlap, p.phi);
            base_rows.push_back({baseline, x, probs.plus, probs.minus, std::abs(overlap),
                                 phase_shift(mode.mean_frequency(), p.dtau)});

            if (config.models.models.empty()) continue;
            SystemSpec system;
            if (fixed_system) {
                system = *fixed_system;
            } else {
                system = photon_system(mode, config.models.levels, config.models.occupation);
                system.rest_mass = config.models.rest_mass;
            }
            double upper = 0.0, lower = 0.0;
            const double t = p.geometry.transit_time();
            if (config.variable == SweepVariable::dtau) {
                Geometry flat = p.geometry;
                flat.separation = 0.0;
                lower = arm_potentials(flat, config.body, config.field).second;
                upper = lower + constants::speed_of_light * constants::speed_of_light * p.dtau / t;
            } else {
                std::tie(upper, lower) = arm_potentials(p.geometry, config.body, config.field);
            }
            for (std::size_t m = 0; m < config.models.models.size(); ++m) {
                const Prediction pred = predict_with_potentials(config.models.models[m], system, upper, lower, t);
                auto& rows = model_rows[m];
                const double phase = rows.empty() ? pred.phase : detail::unwrap_near(pred.phase, rows.back().phase);
                const double fringe = pred.visibility * std::cos(pred.phase + p.phi);
                rows.push_back({std::string(to_string(config.models.models[m])), x, 0.5 * (1.0 + fringe),
                                0.5 * (1.0 - fringe), pred.visibility, phase});
            }
        } catch (const DomainError& e) {
            char where[96];
            std::snprintf(where, sizeof where, "sample %zu (%s = %.11e): ", i, to_string(config.variable).data(), x);
            throw DomainError(where + std::string(e.what()));
        }
    }

    result.rows = std::move(base_rows);
    for (auto& rows : model_rows) result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    return result;
}

// ---- config readers ---------------------------------------------------------

inline Body read_body(const Config& cfg)
{
    cfg.expect_keys("body", {"gm", "radius", "g"});
    Body body;
    body.radius = cfg.number("body", "radius", constants::earth_radius);
    body.gm = cfg.number("body", "gm", constants::earth_gm);
    if (cfg.has("body", "g")) {
        if (cfg.has("body", "gm")) throw ConfigError(cfg.source() + ": [body] gm and g are mutually exclusive");
        body = body_with_gravity(cfg.number("body", "g"), body.radius);
    }
    return body;
}

inline Geometry read_geometry(const Config& cfg, const Body& body)
{
    cfg.expect_keys("geometry", {"arm_length", "separation", "base_radius", "orientation", "speed", "field"});
    Geometry g;
    g.arm_length = cfg.number("geometry", "arm_length", g.arm_length);
    g.separation = cfg.number("geometry", "separation", 0.0);
    g.base_radius = cfg.number("geometry", "base_radius", body.radius);
    g.orientation = cfg.number("geometry", "orientation", 0.0);
    g.signal_speed = cfg.number("geometry", "speed", constants::speed_of_light);
    return g;
}

inline FieldModel read_field(const Config& cfg)
{
    return parse_field_model(cfg.text("geometry", "field", "homogeneous"));
}

// peaks = weight:center:sigma; weight:center:sigma; ...
inline std::vector<GaussianPeak> parse_peaks(const std::string& text)
{
    std::vector<GaussianPeak> peaks;
    for (const auto& item : Config::split(text, ';')) {
        const auto fields = Config::split(item, ':');
        if (fields.size() != 3) throw ConfigError("peak '" + item + "': expected weight:center:sigma");
        peaks.push_back({Config::parse_number(fields[0], "peak weight"), Config::parse_number(fields[1], "peak center"),
                         Config::parse_number(fields[2], "peak sigma")});
    }
    if (peaks.empty()) throw ConfigError("multi_gaussian mode: no peaks given");
    return peaks;
}

inline ModeSpec read_mode(const Config& cfg)
{
    cfg.expect_keys("mode", {"kind", "nu0", "sigma", "tperp", "peaks", "file", "support"});
    ModeSpec m;
    const std::string kind = cfg.text("mode", "kind", "gaussian");
    m.center = cfg.number("mode", "nu0", m.center);
    const std::string support = cfg.text("mode", "support", "positive");
    if (support == "formal")
        m.support = Support::formal;
    else if (support != "positive")
        throw ConfigError(cfg.source() + ": [mode] support must be positive or formal");
    if (kind == "gaussian") {
        m.kind = ModeSpec::Kind::gaussian;
        if (cfg.has("mode", "sigma") && cfg.has("mode", "tperp"))
            throw ConfigError(cfg.source() + ": [mode] sigma and tperp are mutually exclusive");
        if (cfg.has("mode", "tperp")) {
            const double t = cfg.number("mode", "tperp");
            m.sigma = t * t / 4.0;
        } else {
            m.sigma = cfg.number("mode", "sigma", m.sigma);
        }
    } else if (kind == "multi_gaussian") {
        m.kind = ModeSpec::Kind::multi_gaussian;
        m.peaks = parse_peaks(cfg.text("mode", "peaks"));
    } else if (kind == "tabulated") {
        m.kind = ModeSpec::Kind::tabulated;
        m.file = cfg.resolve(cfg.text("mode", "file"));
    } else if (kind == "infinite") {
        m.kind = ModeSpec::Kind::infinite;
    } else {
        throw ConfigError(cfg.source() + ": unknown [mode] kind '" + kind + "'");
    }
    return m;
}

// occupation = single | fock:<n> | coherent:<alpha>
inline Occupation parse_occupation(const std::string& text)
{
    if (text == "single") return SingleParticleTwoMode{};
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    if (colon != std::string::npos && head == "fock") {
        const double n = Config::parse_number(text.substr(colon + 1), "fock photon number");
        if (n < 1.0 || n != std::floor(n)) throw ConfigError("fock photon number must be a positive integer");
        return Fock{static_cast<int>(n)};
    }
    if (colon != std::string::npos && head == "coherent") {
        const double alpha = Config::parse_number(text.substr(colon + 1), "coherent amplitude");
        if (!(alpha > 0.0)) throw ConfigError("coherent amplitude must be positive");
        return Coherent{{alpha, 0.0}};
    }
    throw ConfigError("unknown occupation '" + text + "'");
}

inline ModelSet read_models(const Config& cfg, bool default_all)
{
    cfg.expect_keys("models", {"list", "levels", "occupation", "rest_mass"});
    ModelSet set;
    if (cfg.has("models", "list")) {
        for (const auto& name : Config::split(cfg.text("models", "list"), ','))
            set.models.push_back(parse_coupling_model(name));
    } else if (default_all) {
        set.models.assign(all_coupling_models.begin(), all_coupling_models.end());
    }
    const double levels = cfg.number("models", "levels", 1024.0);
    if (levels < 1.0 || levels > 4096.0 || levels != std::floor(levels))
        throw ConfigError(cfg.source() + ": [models] levels must be an integer in [1, 4096]");
    set.levels = static_cast<std::size_t>(levels);
    set.occupation = parse_occupation(cfg.text("models", "occupation", "single"));
    set.rest_mass = cfg.number("models", "rest_mass", 0.0);
    return set;
}

inline SweepConfig read_sweep_config(const Config& cfg)
{
    cfg.expect_sections({"sweep", "mode", "clock", "geometry", "body", "models"});
    cfg.expect_keys("sweep", {"variable", "start", "stop", "samples", "phi", "label"});
    cfg.expect_keys("clock", {"law", "tperp"});

    SweepConfig s;
    s.variable = parse_sweep_variable(cfg.text("sweep", "variable"));
    s.start = cfg.number("sweep", "start");
    s.stop = cfg.number("sweep", "stop");
    const double samples = cfg.number("sweep", "samples");
    if (samples < 2.0 || samples != std::floor(samples) || samples > 1e7)
        throw ConfigError(cfg.source() + ": [sweep] samples must be an integer >= 2");
    s.samples = static_cast<std::size_t>(samples);
    s.phi = cfg.number("sweep", "phi", 0.0);
    s.label = cfg.text("sweep", "label", "");

    s.mode = read_mode(cfg);
    s.clock = parse_clock_law(cfg.text("clock", "law", "photon"));
    if (cfg.has("clock", "tperp")) s.clock_tperp = cfg.number("clock", "tperp");
    s.body = read_body(cfg);
    s.geometry = read_geometry(cfg, s.body);
    s.field = read_field(cfg);
    s.models = read_models(cfg, false);

    try {
        validate(s);
        if (s.variable != SweepVariable::area && s.variable != SweepVariable::dtau) validate(s.geometry);
    } catch (const DomainError& e) {
        throw ConfigError(cfg.source() + ": " + e.what());
    }
    return s;
}

struct FransonSetup {
    franson::FransonConfig franson;
    Geometry geometry;
    Body body;
    FieldModel field = FieldModel::homogeneous;
};

// [franson] length_difference may be "match" to set dl = c dtau_gr.
inline FransonSetup read_franson_setup(const Config& cfg)
{
    cfg.expect_sections({"franson", "geometry", "body"});
    cfg.expect_keys("franson", {"length_difference", "phi1", "phi2", "coherence_time"});
    FransonSetup s;
    s.body = read_body(cfg);
    s.geometry = read_geometry(cfg, s.body);
    s.field = read_field(cfg);
    try {
        validate(s.body);
        s.franson.dtau_gr = dilation(s.geometry, s.body, s.field);
    } catch (const DomainError& e) {
        throw ConfigError(cfg.source() + ": " + e.what());
    }
    const std::string dl = cfg.text("franson", "length_difference", "match");
    s.franson.length_difference = dl == "match" ? constants::speed_of_light * s.franson.dtau_gr
                                                : Config::parse_number(dl, "[franson] length_difference");
    s.franson.phi1 = cfg.number("franson", "phi1", 0.0);
    s.franson.phi2 = cfg.number("franson", "phi2", 0.0);
    s.franson.coherence_time = cfg.number("franson", "coherence_time", 0.0);
    return s;
}

struct ComparisonSetup {
    ModeSpec mode;
    Geometry geometry;
    Body body;
    FieldModel field = FieldModel::homogeneous;
    ModelSet models;
};

inline ComparisonSetup read_comparison_setup(const Config& cfg)
{
    cfg.expect_sections({"mode", "geometry", "body", "models"});
    ComparisonSetup s;
    s.mode = read_mode(cfg);
    s.body = read_body(cfg);
    s.geometry = read_geometry(cfg, s.body);
    s.field = read_field(cfg);
    s.models = read_models(cfg, true);
    return s;
}

inline std::vector<Prediction> run_comparison(const ComparisonSetup& setup)
{
    SystemSpec system = photon_system(setup.mode.build(), setup.models.levels, setup.models.occupation);
    system.rest_mass = setup.models.rest_mass;
    std::vector<Prediction> out;
    for (auto m : setup.models.models) out.push_back(predict(m, system, setup.geometry, setup.body, setup.field));
    return out;
}

// ---- output -----------------------------------------------------------------

// Scientific notation, 12 significant digits.
inline std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return buf;
}

inline void write_csv(std::ostream& out, const SweepResult& result)
{
    out << "series,x,p_plus,p_minus,visibility,phase\n";
    for (const auto& r : result.rows)
        out << r.series << ',' << format_number(r.x) << ',' << format_number(r.p_plus) << ','
            << format_number(r.p_minus) << ',' << format_number(r.visibility) << ',' << format_number(r.phase)
            << '\n';
}

inline nlohmann::json to_json(const SweepResult& result)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.rows)
        rows.push_back({{"series", r.series},
                        {"x", r.x},
                        {"p_plus", r.p_plus},
                        {"p_minus", r.p_minus},
                        {"visibility", r.visibility},
                        {"phase", r.phase}});
    return {{"variable", std::string(to_string(result.variable))}, {"rows", rows}};
}

inline void write_fringe_csv(std::ostream& out, const FringeScan& scan)
{
    out << "phi,p_plus,p_minus\n";
    for (const auto& r : scan.rows)
        out << format_number(r.phi) << ',' << format_number(r.p_plus) << ',' << format_number(r.p_minus) << '\n';
}

inline nlohmann::json to_json(const std::vector<Prediction>& predictions)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : predictions)
        out.push_back({{"model", std::string(to_string(p.model))}, {"phase_rad", p.phase}, {"visibility", p.visibility}});
    return out;
}

inline nlohmann::json to_json(const franson::MatchingReport& r)
{
    nlohmann::json j = {{"dtau_gr", r.dtau_gr}, {"dtau_inferred", r.dtau_inferred}, {"valid", r.valid}};
    // JSON has no infinity; an unmatched zero delay reports null.
    if (std::isfinite(r.mismatch))
        j["mismatch"] = r.mismatch;
    else
        j["mismatch"] = nullptr;
    return j;
}

}  // namespace gravint
