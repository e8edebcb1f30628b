#include "freshmarket/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace freshmarket {

void ToleranceConfig::validate() const {
    if (!(abs_tol > 0)) throw std::invalid_argument("ToleranceConfig: abs_tol must be positive");
    if (!(rel_tol > 0)) throw std::invalid_argument("ToleranceConfig: rel_tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("ToleranceConfig: max_iter must be >= 1");
}

namespace detail {

// gamma(s,x) = x^s e^{-x} sum_{n>=0} x^n / (s (s+1) ... (s+n)), convergent for
// all x but efficient only below the switchover.
double lower_gamma_series(double s, double x, const ToleranceConfig& tol) {
    if (x == 0) return 0;
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n <= tol.max_iter; ++n) {
        term *= x / (s + static_cast<double>(n));
        sum += term;
        if (std::abs(term) < std::abs(sum) * tol.rel_tol)
            return sum * std::exp(-x + s * std::log(x));
    }
    throw NumericalError("lower_incomplete_gamma: series not converged, s=" +
                         std::to_string(s) + " x=" + std::to_string(x));
}

// Modified Lentz continued fraction for the upper complement Gamma(s,x);
// the lower value is recovered as Gamma(s) - Gamma(s,x).
double lower_gamma_continued_fraction(double s, double x, const ToleranceConfig& tol) {
    constexpr double floor_val = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / floor_val;
    double d = 1.0 / b;
    double h = d;
    for (int n = 1; n <= tol.max_iter; ++n) {
        const double an = -static_cast<double>(n) * (static_cast<double>(n) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < floor_val) d = floor_val;
        c = b + an / c;
        if (std::abs(c) < floor_val) c = floor_val;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < tol.rel_tol) {
            const double upper = std::exp(-x + s * std::log(x)) * h;
            return std::tgamma(s) - upper;
        }
    }
    throw NumericalError("lower_incomplete_gamma: continued fraction not converged, s=" +
                         std::to_string(s) + " x=" + std::to_string(x));
}

}  // namespace detail

double lower_incomplete_gamma(double s, double x, const ToleranceConfig& tol) {
    tol.validate();
    if (!(s > 0)) throw std::invalid_argument("lower_incomplete_gamma: s must be positive");
    if (x < 0) throw std::invalid_argument("lower_incomplete_gamma: x must be non-negative");
    if (x == 0) return 0;
    return x < s + 1.0 ? detail::lower_gamma_series(s, x, tol)
                       : detail::lower_gamma_continued_fraction(s, x, tol);
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const ToleranceConfig& tol) {
    tol.validate();
    double a = lo, b = hi;
    if (a > b) std::swap(a, b);
    double fa = f(a);
    double fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0))
        throw std::invalid_argument("find_root: invalid bracket, f(" + std::to_string(a) +
                                    ")=" + std::to_string(fa) + " f(" + std::to_string(b) +
                                    ")=" + std::to_string(fb));
    double x = a;
    for (int it = 0; it < tol.max_iter; ++it) {
        // Bisection every other iteration guarantees the bracket halves; the
        // secant proposal in between accelerates smooth residuals.
        x = 0.5 * (a + b);
        if (it % 2 == 1 && fb != fa) {
            const double sec = (a * fb - b * fa) / (fb - fa);
            if (sec > a && sec < b) x = sec;
        }
        const double fx = f(x);
        if (std::abs(fx) <= tol.abs_tol || (b - a) <= tol.abs_tol + tol.rel_tol * std::abs(x))
            return x;
        if ((fx > 0) == (fa > 0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    return x;
}

double central_difference(const std::function<double(double)>& f, double x0, double step) {
    if (!(step > 0)) throw std::invalid_argument("central_difference: step must be positive");
    return (f(x0 + step) - f(x0 - step)) / (2.0 * step);
}

double richardson_derivative(const std::function<double(double)>& f, double x0, double step) {
    const double coarse = central_difference(f, x0, step);
    const double fine = central_difference(f, x0, 0.5 * step);
    return (4.0 * fine - coarse) / 3.0;
}

}  // namespace freshmarket
