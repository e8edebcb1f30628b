#pragma once

#include <vector>

#include "freshmarket/model.hpp"
#include "freshmarket/numerics.hpp"
#include "freshmarket/time_series.hpp"

namespace freshmarket {

/// Discretized product-age density on a uniform grid. density[k] is the bin
/// average over [k*dtau, (k+1)*dtau), so grid_step * sum(density) + tail_mass
/// stays 1; tail_mass lumps everything beyond the grid.
struct AgeDistribution {
    double grid_step = 0.05;
    std::vector<double> density;
    double tail_mass = 0;

    double total_mass() const;
    double tau_max() const { return grid_step * static_cast<double>(density.size()); }

    /// Exponential profile with the given depletion rate, discretized by exact
    /// bin integrals (a fixed point of the transport step up to rounding).
    static AgeDistribution stationary(double rate, double grid_step, double tau_max);
};

/// The single average buyer plus one age density per seller.
struct MeanFieldState {
    std::vector<double> s;
    std::vector<AgeDistribution> phi;
    double clock = 0;
};

/// Stationary mean shelf freshness at choice probability p: 1/(1 + 1/(R p)).
/// Continuously extended to 0 at p = 0.
double stationary_avg_freshness(double p, double R);

/// Stationary mean price at choice probability p:
/// 1 - p R h_c^{p R} gamma(p R, 1/h_c). Continuously extended to 1 at p = 0.
double stationary_avg_price(double p, double R, double h_c, const ToleranceConfig& tol = {});

/// Satisfaction source offered by a shelf whose whole stock has age tau:
/// g exp(-exp(-tau/tau1)/h_c) + (1-g) exp(-tau/tau1).
double q_of_age(double tau, double greed, double h_c, double tau1);

/// Q_0: the source sustained by a seller serving the entire market (p = 1).
double q_zero(double greed, double R, double h_c, const ToleranceConfig& tol = {});

/// Symmetric stationary state on a dt age grid with tau_max = tau_max_factor *
/// tau1. Satisfactions are set from the grid quadrature of the discretized
/// profile, making the state an exact fixed point of integrate's update map.
MeanFieldState symmetric_stationary_state(const ModelParams& params, double dt,
                                          double tau_max_factor = 10.0);

/// Adds +delta/2 to s[0] and -delta/2 to s[1] to probe linear stability.
void bias_satisfaction(MeanFieldState& state, double delta);

struct IntegrateOptions {
    double record_interval = 0.5;
    double normalization_tolerance = 1e-6;  ///< abort threshold on mass drift
};

/// Advances the coupled satisfaction/age-transport system with explicit Euler
/// steps of size dt (which must equal the age grid step and not exceed tau0).
/// Emits the same row schema as the agent simulation.
TimeSeries integrate(const ModelParams& params, MeanFieldState state, double t_end,
                     double dt, const IntegrateOptions& opts = {});

}  // namespace freshmarket
