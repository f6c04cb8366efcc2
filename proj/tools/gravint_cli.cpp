// gravint: command-line front end for sweeps, planning tables, Franson
// matching, coupling-model comparison and the built-in self-check.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gravint/config.hpp"
#include "gravint/errors.hpp"
#include "gravint/franson_bell.hpp"
#include "gravint/self_check.hpp"
#include "gravint/spacetime.hpp"
#include "gravint/sweeps.hpp"

namespace {

using gravint::format_number;

enum class Format { csv, json, text };

struct OutputOptions {
    std::string path;
    std::string format;
};

void add_output_options(CLI::App* cmd, OutputOptions& out)
{
    cmd->add_option("--out", out.path, "Write to this file (format from extension: .csv or .json)");
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

Format resolve_format(const OutputOptions& out, Format fallback)
{
    if (out.format == "csv") return Format::csv;
    if (out.format == "json") return Format::json;
    const auto dot = out.path.rfind('.');
    if (dot != std::string::npos) {
        const std::string ext = out.path.substr(dot);
        if (ext == ".json") return Format::json;
        if (ext == ".csv") return Format::csv;
    }
    return fallback;
}

void emit(const OutputOptions& out, const std::string& content)
{
    if (out.path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream file(out.path, std::ios::binary);
    if (!file) throw gravint::ConfigError("cannot write output file: " + out.path);
    file << content;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

double default_g(double override_g)
{
    return override_g > 0.0 ? override_g : gravint::earth().surface_gravity();
}

// ---- sweep ------------------------------------------------------------------

std::string render(const gravint::SweepResult& result, Format format)
{
    if (format == Format::json) return dump(gravint::to_json(result));
    std::ostringstream s;
    gravint::write_csv(s, result);
    return s.str();
}

int run_sweep_command(const std::string& config_path, const OutputOptions& out)
{
    const auto config = gravint::read_sweep_config(gravint::Config::load(config_path));
    emit(out, render(gravint::run_sweep(config), resolve_format(out, Format::csv)));
    return 0;
}

// ---- fig2 -------------------------------------------------------------------

struct Fig2Options {
    std::vector<std::string> tperp_fs{"0.05", "1", "5", "inf"};
    double nu0 = 4e15;
    double stop = 6e9;
    std::size_t samples = 1201;
    double arm_length = 1e6;
    double g = 0.0;
};

int run_fig2(const Fig2Options& o, const OutputOptions& out)
{
    gravint::SweepResult all;
    all.variable = gravint::SweepVariable::area;
    for (const auto& label : o.tperp_fs) {
        gravint::SweepConfig c;
        c.variable = gravint::SweepVariable::area;
        c.start = 0.0;
        c.stop = o.stop;
        c.samples = o.samples;
        c.body = gravint::body_with_gravity(default_g(o.g));
        c.geometry.arm_length = o.arm_length;
        c.geometry.base_radius = c.body.radius;
        c.mode.center = o.nu0;
        c.mode.support = gravint::Support::formal;
        if (label == "inf") {
            c.mode.kind = gravint::ModeSpec::Kind::infinite;
        } else {
            const double t = gravint::Config::parse_number(label, "--tperp") * 1e-15;
            if (!(t > 0.0)) throw gravint::ConfigError("--tperp must be positive");
            c.mode.sigma = t * t / 4.0;
        }
        c.label = "tperp_fs=" + label;
        const auto r = gravint::run_sweep(c);
        all.rows.insert(all.rows.end(), r.rows.begin(), r.rows.end());
    }
    emit(out, render(all, resolve_format(out, Format::csv)));
    return 0;
}

// ---- plan / table1 -----------------------------------------------------------

int run_plan(double t_perp, double speed, double g_override, const OutputOptions& out)
{
    const double g = default_g(g_override);
    const double area = gravint::required_area(t_perp, speed, g);
    if (resolve_format(out, Format::csv) == Format::json) {
        emit(out, dump({{"tperp_s", t_perp}, {"speed_m_s", speed}, {"g_m_s2", g}, {"area_m2", area},
                        {"area_km2", area * 1e-6}}));
    } else {
        emit(out, "tperp_s,speed_m_s,g_m_s2,area_m2,area_km2\n" + format_number(t_perp) + ',' +
                      format_number(speed) + ',' + format_number(g) + ',' + format_number(area) + ',' +
                      format_number(area * 1e-6) + '\n');
    }
    return 0;
}

struct Table1Options {
    double g = 0.0;
    double atom_speed = 1.09e-2;   // back-solved clock speed for the atom row
    double t_perp = 1e-15;
    double nu0 = 1e15;
    double phase_resolution = 1e-6;
};

int run_table1(const Table1Options& o, const OutputOptions& out)
{
    const double g = default_g(o.g);
    struct Row {
        std::string name;
        double reference_km2;
        double area_m2;
    };
    const Row rows[] = {
        {"photon_time_dilation", 1e3, gravint::required_area(o.t_perp, gravint::constants::speed_of_light, g)},
        {"atom_time_dilation", 1e-7, gravint::required_area(o.t_perp, o.atom_speed, g)},
        {"photon_phase_shift", 1e-3, gravint::required_area_for_phase(o.nu0, o.phase_resolution, g)},
    };
    if (resolve_format(out, Format::csv) == Format::json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : rows)
            j.push_back({{"row", r.name}, {"reference_km2", r.reference_km2}, {"area_m2", r.area_m2},
                         {"area_km2", r.area_m2 * 1e-6}, {"ratio", r.area_m2 * 1e-6 / r.reference_km2}});
        emit(out, dump(j));
    } else {
        std::string s = "row,reference_km2,area_m2,area_km2,ratio\n";
        for (const auto& r : rows)
            s += r.name + ',' + format_number(r.reference_km2) + ',' + format_number(r.area_m2) + ',' +
                 format_number(r.area_m2 * 1e-6) + ',' + format_number(r.area_m2 * 1e-6 / r.reference_km2) + '\n';
        emit(out, s);
    }
    return 0;
}

// ---- franson / compare-models -------------------------------------------------

int run_franson(const std::string& config_path, const OutputOptions& out)
{
    const auto setup = gravint::read_franson_setup(gravint::Config::load(config_path));
    const auto report = gravint::franson::matching_report(setup.franson);
    const double e = gravint::franson::correlation(setup.franson.phi1, setup.franson.phi2);
    if (resolve_format(out, Format::json) == Format::csv) {
        emit(out, "dtau_gr,dtau_inferred,mismatch,valid,correlation\n" + format_number(report.dtau_gr) + ',' +
                      format_number(report.dtau_inferred) + ',' + format_number(report.mismatch) + ',' +
                      (report.valid ? "true" : "false") + ',' + format_number(e) + '\n');
    } else {
        auto j = gravint::to_json(report);
        j["correlation"] = e;
        emit(out, dump(j));
    }
    return 0;
}

int run_compare(const std::string& config_path, const OutputOptions& out)
{
    const auto predictions = gravint::run_comparison(gravint::read_comparison_setup(gravint::Config::load(config_path)));
    if (resolve_format(out, Format::json) == Format::csv) {
        std::string s = "model,phase_rad,visibility\n";
        for (const auto& p : predictions)
            s += std::string(gravint::to_string(p.model)) + ',' + format_number(p.phase) + ',' +
                 format_number(p.visibility) + '\n';
        emit(out, s);
    } else {
        emit(out, dump(gravint::to_json(predictions)));
    }
    return 0;
}

// ---- self-check ------------------------------------------------------------------

int run_self_check(const gravint::SelfCheckOptions& options, const OutputOptions& out)
{
    const auto report = gravint::self_check(options);
    const Format format = resolve_format(out, Format::text);
    if (format == Format::json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& c : report.checks)
            j.push_back({{"check", c.name}, {"passed", c.passed}, {"max_error", c.max_error},
                         {"tolerance", c.tolerance}, {"detail", c.detail}});
        emit(out, dump({{"passed", report.passed()}, {"checks", j}}));
    } else if (format == Format::csv) {
        std::string s = "check,passed,max_error,tolerance\n";
        for (const auto& c : report.checks)
            s += c.name + ',' + (c.passed ? "true" : "false") + ',' + format_number(c.max_error) + ',' +
                 format_number(c.tolerance) + '\n';
        emit(out, s);
    } else {
        std::string s;
        for (const auto& c : report.checks)
            s += std::string(c.passed ? "ok   " : "FAIL ") + c.name + "  max_error=" + format_number(c.max_error) +
                 " tolerance=" + format_number(c.tolerance) + "  " + c.detail + '\n';
        emit(out, s);
    }
    if (const auto* failure = report.first_failure()) {
        std::cerr << "self-check failed: " << failure->name << " (" << failure->detail << ")\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Gravitational time dilation in single-photon and clock interferometry"};
    app.require_subcommand(1);

    OutputOptions out;
    std::string config_path;

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a config file");
    sweep->add_option("config", config_path, "Config file")->required();
    add_output_options(sweep, out);

    Table1Options t1;
    auto* table1 = app.add_subcommand("table1", "Required interferometer areas (time dilation and phase shift)");
    table1->add_option("--g", t1.g, "Gravitational acceleration, m/s^2 (default: derived from Earth GM and radius)");
    table1->add_option("--atom-speed", t1.atom_speed, "Clock speed for the atom row, m/s");
    add_output_options(table1, out);

    Fig2Options f2;
    auto* fig2 = app.add_subcommand("fig2", "Detection probability vs enclosed area for several coherence times");
    fig2->add_option("--tperp", f2.tperp_fs, "Coherence times in fs ('inf' for the pure-phase curve)");
    fig2->add_option("--nu0", f2.nu0, "Carrier angular frequency, rad/s");
    fig2->add_option("--stop", f2.stop, "Largest area, m^2");
    fig2->add_option("--samples", f2.samples, "Samples per curve")->check(CLI::Range(2, 10000000));
    fig2->add_option("--arm-length", f2.arm_length, "Horizontal arm length, m");
    fig2->add_option("--g", f2.g, "Gravitational acceleration, m/s^2");
    add_output_options(fig2, out);

    double plan_tperp = 0.0;
    double plan_speed = gravint::constants::speed_of_light;
    double plan_g = 0.0;
    auto* plan = app.add_subcommand("plan", "Area needed to lose visibility for a given clock precision");
    plan->add_option("--tperp", plan_tperp, "Clock precision t_perp, s")->required();
    plan->add_option("--speed", plan_speed, "Clock speed, m/s (default c)");
    plan->add_option("--g", plan_g, "Gravitational acceleration, m/s^2");
    add_output_options(plan, out);

    auto* franson = app.add_subcommand("franson", "Franson matching report from a config file");
    franson->add_option("config", config_path, "Config file")->required();
    add_output_options(franson, out);

    auto* compare = app.add_subcommand("compare-models", "Phase and visibility under each coupling model");
    compare->add_option("config", config_path, "Config file")->required();
    add_output_options(compare, out);

    gravint::SelfCheckOptions check;
    auto* self_check = app.add_subcommand("self-check", "Run the built-in consistency checks");
    self_check->add_option("--bins", check.bins, "Frequency bins for the oracle")->check(CLI::Range(64, 1 << 20));
    self_check->add_option("--draws", check.draws, "Randomized oracle draws");
    self_check->add_option("--seed", check.seed, "Random seed");
    add_output_options(self_check, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sweep) return run_sweep_command(config_path, out);
        if (*table1) return run_table1(t1, out);
        if (*fig2) return run_fig2(f2, out);
        if (*plan) return run_plan(plan_tperp, plan_speed, plan_g, out);
        if (*franson) return run_franson(config_path, out);
        if (*compare) return run_compare(config_path, out);
        if (*self_check) return run_self_check(check, out);
    } catch (const gravint::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const gravint::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
