#include "freshmarket/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace freshmarket {

double ModelParams::turnover_ratio() const {
    return static_cast<double>(n_buyers) * tau1 / (static_cast<double>(n_products) * tau0);
}

void ModelParams::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("ModelParams: " + msg); };
    if (n_products <= 0) fail("n_products must be positive");
    if (n_buyers <= 0) fail("n_buyers must be positive");
    if (!(tau0 > 0) || !std::isfinite(tau0)) fail("tau0 must be positive");
    if (!(tau1 > 0) || !std::isfinite(tau1)) fail("tau1 must be positive");
    if (!(h_c > 0) || !std::isfinite(h_c)) fail("h_c must be positive");
    if (!(alpha >= 0 && alpha < 1)) fail("alpha must lie in [0,1)");
    if (!(greed >= 0 && greed <= 1)) fail("greed must lie in [0,1]");
    if (!(temperature >= 0) || !std::isfinite(temperature)) fail("temperature must be non-negative");
    if (n_sellers < 2) fail("n_sellers must be at least 2");
    const double r = turnover_ratio();
    if (!(r > 0) || !std::isfinite(r)) fail("turnover ratio R must be finite and positive");
}

double freshness(double tau, double tau1) {
    if (tau < 0) throw std::invalid_argument("freshness: negative age");
    return std::exp(-tau / tau1);
}

double price(double tau, double tau1, double h_c) {
    if (h_c <= 0) throw std::invalid_argument("price: h_c must be positive");
    return 1.0 - std::exp(-freshness(tau, tau1) / h_c);
}

void choice_probabilities(std::span<const double> satisfaction, double temperature,
                          std::span<double> out) {
    if (!(temperature > 0))
        throw std::invalid_argument("choice_probabilities: temperature must be positive");
    const double s_max = *std::max_element(satisfaction.begin(), satisfaction.end());
    double z = 0;
    for (std::size_t i = 0; i < satisfaction.size(); ++i) {
        out[i] = std::exp((satisfaction[i] - s_max) / temperature);
        z += out[i];
    }
    for (std::size_t i = 0; i < satisfaction.size(); ++i) out[i] /= z;
}

std::vector<double> choice_probabilities(std::span<const double> satisfaction,
                                         double temperature) {
    std::vector<double> out(satisfaction.size());
    choice_probabilities(satisfaction, temperature, out);
    return out;
}

void argmax_distribution(std::span<const double> satisfaction, std::span<double> out) {
    const double s_max = *std::max_element(satisfaction.begin(), satisfaction.end());
    std::size_t ties = 0;
    for (double s : satisfaction)
        if (s == s_max) ++ties;
    for (std::size_t i = 0; i < satisfaction.size(); ++i)
        out[i] = satisfaction[i] == s_max ? 1.0 / static_cast<double>(ties) : 0.0;
}

std::vector<double> argmax_distribution(std::span<const double> satisfaction) {
    std::vector<double> out(satisfaction.size());
    argmax_distribution(satisfaction, out);
    return out;
}

void choice_distribution(std::span<const double> satisfaction, double temperature,
                         std::span<double> out) {
    if (temperature > 0)
        choice_probabilities(satisfaction, temperature, out);
    else
        argmax_distribution(satisfaction, out);
}

double update_satisfaction(double s_old, double h, double x, double alpha, double greed) {
    return alpha * s_old + (1.0 - alpha) * (greed * (1.0 - x) + (1.0 - greed) * h);
}

}  // namespace freshmarket
