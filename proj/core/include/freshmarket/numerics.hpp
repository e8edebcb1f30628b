#pragma once

#include <functional>

#include "freshmarket/errors.hpp"

namespace freshmarket {

struct ToleranceConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_iter = 200;

    void validate() const;
};

/// Lower incomplete gamma gamma(s,x) = int_0^x e^{-y} y^{s-1} dy for s > 0,
/// x >= 0. Power series below the switchover x = s+1, continued fraction of
/// the upper complement above it. Throws NumericalError carrying (s, x) on
/// non-convergence.
double lower_incomplete_gamma(double s, double x, const ToleranceConfig& tol = {});

/// Root of f on [lo, hi] with f(lo)*f(hi) <= 0. Bisection with secant
/// acceleration on alternating iterations; deterministic. Stops when
/// |f(r)| <= abs_tol or the bracket width drops below abs_tol + rel_tol*|r|.
/// Throws std::invalid_argument (with endpoint values) on an invalid bracket.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const ToleranceConfig& tol = {});

/// Central difference (f(x0+step) - f(x0-step)) / (2 step).
double central_difference(const std::function<double(double)>& f, double x0, double step);

/// One Richardson refinement of the central difference:
/// (4 D(step/2) - D(step)) / 3, accurate to O(step^4).
double richardson_derivative(const std::function<double(double)>& f, double x0, double step);

namespace detail {
// Both gamma branches, exposed so they can be cross-checked around x = s+1.
double lower_gamma_series(double s, double x, const ToleranceConfig& tol);
double lower_gamma_continued_fraction(double s, double x, const ToleranceConfig& tol);
}  // namespace detail

}  // namespace freshmarket
