#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "freshmarket/agent_sim.hpp"
#include "freshmarket/model.hpp"
#include "freshmarket/numerics.hpp"
#include "freshmarket/time_series.hpp"

namespace freshmarket {

/// Time-averaged order parameters of a two-seller trajectory.
/// m_a = |<p1-p2>|, m_o = <|p1-p2|> - |<p1-p2>|, m = m_a - m_o.
struct OrderParams {
    double m_a = 0;
    double m_o = 0;
    double m = 0;
};

enum class PhaseLabel { Symmetric, Asymmetric, Oscillatory, AsymmetricOscillation };

/// "S", "A", "O", "A'" — the labels used in the sweep CSV.
std::string to_string(PhaseLabel label);

struct BoundaryCurve {
    std::vector<double> greed;                     // sample grid
    std::vector<double> t_c;                       // critical temperature per g
    std::vector<std::optional<double>> tau_star;   // crossing age per g
    double g_c = 0;
};

/// dQ-sensitivity of the price term around the symmetric state: the
/// derivative, at p = p0, of p -> p0 * p R h_c^{pR} gamma(pR, 1/h_c),
/// evaluated by a Richardson-refined central difference with step 1e-5.
double price_term_derivative(double R, double p0, double h_c, const ToleranceConfig& tol = {});

/// g*F + (1-g)*R p0/(1+R p0)^2 - T: negative means the symmetric state is
/// linearly stable. Analytics specialized to two sellers (p0 = 1/2).
double stability_prefactor(const ModelParams& params, double p0);

/// Critical temperature T_c(g) = g*F + (1-g)*R p0/(1+R p0)^2. May be negative,
/// meaning the symmetric phase is stable at every T >= 0.
double critical_temperature(double greed, double R, double p0, double h_c);

/// Greed above which an abandoned seller's aged, discounted stock eventually
/// re-crosses Q_0. Closed form g_c = hbar(1) / (1 - (1-xbar(1)) + hbar(1)).
double critical_greed(double R, double h_c);

/// Largest-age solution of q_of_age(tau) = Q_0; the analytic estimate of the
/// oscillation half-period. nullopt when g <= g_c (no second crossing).
std::optional<double> crossing_age(double greed, double R, double h_c, double tau1,
                                   const ToleranceConfig& tol = {});

/// Uniform time averages over rows with t >= burn_in. Throws
/// std::invalid_argument if no row lies past burn_in.
OrderParams order_parameters(const TimeSeries& ts, double burn_in);

/// Quadrant thresholding of the order parameters.
PhaseLabel classify(const OrderParams& op, double threshold = 0.1);

/// Mean spacing between sign changes of the mean-centered, moving-average
/// smoothed (window 5) gap p1 - p2 past burn_in; nullopt when fewer than 4
/// sign changes occur.
std::optional<double> half_period(const TimeSeries& ts, double burn_in);

/// T_c(g), tau*(g) and g_c over a greed grid (two-seller analytics, p0 = 1/2).
BoundaryCurve compute_boundary(double R, double p0, double h_c, double tau1,
                               const std::vector<double>& greed_grid);

struct SweepGrid {
    std::vector<double> temperatures;
    std::vector<double> greeds;
};

struct SweepCell {
    double temperature = 0;
    double greed = 0;
    OrderParams order;
    PhaseLabel phase = PhaseLabel::Symmetric;
    std::optional<double> half_period;
    std::string error;  ///< non-empty when this cell failed

    bool failed() const { return !error.empty(); }
};

using RunFunction = std::function<TimeSeries(const ModelParams&, const SimConfig&)>;

/// One seeded run per (T, g) cell; cell seeds derive from base_cfg.seed mixed
/// with the row-major cell index, so results are identical for any thread
/// count. Cell failures are recorded per cell, not fatal.
std::vector<SweepCell> sweep(const SweepGrid& grid, const ModelParams& params,
                             const SimConfig& base_cfg, const RunFunction& runner,
                             double threshold = 0.1, int threads = 1);

/// CSV with header T,g,m_a,m_o,m,phase,half_period (half_period empty when
/// none, phase one of S|A|O|A').
std::string sweep_to_csv(const std::vector<SweepCell>& cells);

}  // namespace freshmarket
