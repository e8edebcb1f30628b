#pragma once

#include <span>
#include <vector>

namespace freshmarket {

/// Model constants shared by the agent simulation, the mean-field reduction
/// and the phase analysis. The defaults are the parameter set used for all
/// quantitative experiments; greed and temperature are the two axes that get
/// swept.
struct ModelParams {
    int n_products = 5000;      ///< products held by each seller (N_p)
    int n_buyers = 100;         ///< number of buyers (N_a)
    double tau0 = 0.1;          ///< mean time between purchases per buyer
    double tau1 = 20.0;         ///< freshness decay time scale
    double h_c = 0.05;          ///< markdown threshold freshness
    double alpha = 0.99;        ///< satisfaction memory factor, in [0,1)
    double greed = 0.5;         ///< price sensitivity g, in [0,1]
    double temperature = 0.1;   ///< choice temperature T, >= 0 (0 = argmax)
    int n_sellers = 2;

    /// Turnover ratio R = N_a tau1 / (N_p tau0): buying rate vs spoilage rate.
    double turnover_ratio() const;

    /// Throws std::invalid_argument naming the first offending field.
    void validate() const;
};

/// Freshness h(tau) = exp(-tau/tau1). Rejects negative tau.
double freshness(double tau, double tau1);

/// Price x(tau) = 1 - exp(-h(tau)/h_c), decreasing in tau and bounded by
/// 1 - exp(-1/h_c). Rejects non-positive h_c.
double price(double tau, double tau1, double h_c);

/// Logit choice probabilities p_i = exp(s_i/T) / sum_j exp(s_j/T), evaluated
/// max-shifted so any finite s/T is overflow-safe. Requires temperature > 0;
/// the T = 0 limit is argmax_distribution. Probabilities are never clamped:
/// entries only reach exact zero by floating-point underflow (roughly below
/// 1e-308).
void choice_probabilities(std::span<const double> satisfaction, double temperature,
                          std::span<double> out);
std::vector<double> choice_probabilities(std::span<const double> satisfaction,
                                         double temperature);

/// Deterministic T = 0 limit of the logit rule: uniform weight on the maximal
/// entries, zero elsewhere.
void argmax_distribution(std::span<const double> satisfaction, std::span<double> out);
std::vector<double> argmax_distribution(std::span<const double> satisfaction);

/// Dispatches between the logit rule (T > 0) and its argmax limit (T = 0).
void choice_distribution(std::span<const double> satisfaction, double temperature,
                         std::span<double> out);

/// One satisfaction update after experiencing a product of freshness h at
/// price x: alpha*s_old + (1-alpha)*(g*(1-x) + (1-g)*h). The result stays in
/// [0,1] whenever s_old does.
double update_satisfaction(double s_old, double h, double x, double alpha, double greed);

}  // namespace freshmarket
