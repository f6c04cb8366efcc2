#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace gravint::quadrature {

// Global tolerance: stop once the summed error estimate falls below
// max(absolute, relative * |result|), or the panel budget is spent.
struct Tolerance {
    double absolute = 1e-14;
    double relative = 1e-12;
    std::size_t max_panels = 4000;
};

namespace detail {

template <class T>
struct Panel {
    double a = 0.0;
    double b = 0.0;
    T value{};
    double error = 0.0;
};

// 31-point Kronrod rule with the embedded 15-point Gauss rule on [a, b].
template <class T, class F>
Panel<T> kronrod_panel(F& f, double a, double b)
{
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
    using gauss = boost::math::quadrature::gauss<double, 15>;
    const auto& x = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T f0 = f(mid);
    T k = f0 * wk[0];
    T g = f0 * wg[0];  // gauss order 15 is odd: the centre is a Gauss node
    for (std::size_t i = 1; i < x.size(); ++i) {
        const T pair = f(mid + half * x[i]) + f(mid - half * x[i]);
        k += pair * wk[i];
        if (i % 2 == 0) g += pair * wg[i / 2];
    }
    return {a, b, half * k, std::abs(half * (k - g))};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod over [a, b]; T is double or complex<double>.
template <class T, class F>
T integrate_adaptive(F&& f, double a, double b, Tolerance tol = {})
{
    if (a == b) return T{};
    std::vector<detail::Panel<T>> panels{detail::kronrod_panel<T>(f, a, b)};
    while (panels.size() < tol.max_panels) {
        T total{};
        double error = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            error += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        if (error <= std::max(tol.absolute, tol.relative * std::abs(total))) break;
        const auto p = panels[worst];
        const double m = 0.5 * (p.a + p.b);
        panels[worst] = detail::kronrod_panel<T>(f, p.a, m);
        panels.push_back(detail::kronrod_panel<T>(f, m, p.b));
    }
    T total{};
    for (const auto& p : panels) total += p.value;
    return total;
}

template <class F>
double integrate(F&& f, double a, double b, Tolerance tol = {})
{
    return integrate_adaptive<double>(f, a, b, tol);
}

template <class F>
std::complex<double> integrate_complex(F&& f, double a, double b, Tolerance tol = {})
{
    return integrate_adaptive<std::complex<double>>(f, a, b, tol);
}

// Sums over consecutive panels of a sorted breakpoint list. Used when the
// integrand has isolated narrow features (multi-peak spectra).
template <class F>
std::complex<double> integrate_complex_panels(F&& f, std::vector<double> breakpoints, Tolerance tol = {})
{
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    std::complex<double> total{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        total += integrate_complex(f, breakpoints[i], breakpoints[i + 1], tol);
    return total;
}

// Neumaier-compensated accumulator for long reductions.
class CompensatedSum {
public:
    void add(double value)
    {
        const double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            carry_ += (sum_ - t) + value;
        else
            carry_ += (value - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(std::complex<double> value)
    {
        re_.add(value.real());
        im_.add(value.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

}  // namespace gravint::quadrature
