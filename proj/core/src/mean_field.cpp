#include "freshmarket/mean_field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace freshmarket {

double AgeDistribution::total_mass() const {
    double sum = 0;
    for (double d : density) sum += d;
    return grid_step * sum + tail_mass;
}

AgeDistribution AgeDistribution::stationary(double rate, double grid_step, double tau_max) {
    if (!(rate > 0)) throw std::invalid_argument("AgeDistribution: rate must be positive");
    if (!(grid_step > 0) || !(tau_max > grid_step))
        throw std::invalid_argument("AgeDistribution: bad grid");
    const auto bins = static_cast<std::size_t>(std::llround(tau_max / grid_step));
    AgeDistribution dist;
    dist.grid_step = grid_step;
    dist.density.resize(bins);
    // Exact bin masses of rate*exp(-rate*tau): the survival factor per step
    // then maps bin k to bin k+1 without discretization error.
    const double decay = std::exp(-rate * grid_step);
    double left = 1.0;  // survival at the left bin edge
    for (std::size_t k = 0; k < bins; ++k) {
        const double right = left * decay;
        dist.density[k] = (left - right) / grid_step;
        left = right;
    }
    dist.tail_mass = left;
    return dist;
}

double stationary_avg_freshness(double p, double R) {
    if (p < 0) throw std::invalid_argument("stationary_avg_freshness: p must be non-negative");
    if (p == 0) return 0;  // ancient stock limit
    return 1.0 / (1.0 + 1.0 / (R * p));
}

double stationary_avg_price(double p, double R, double h_c, const ToleranceConfig& tol) {
    if (!(p > 0)) throw std::invalid_argument("stationary_avg_price: p must be positive");
    const double s = p * R;
    return 1.0 - s * std::pow(h_c, s) * lower_incomplete_gamma(s, 1.0 / h_c, tol);
}

double q_of_age(double tau, double greed, double h_c, double tau1) {
    const double h = std::exp(-tau / tau1);
    return greed * std::exp(-h / h_c) + (1.0 - greed) * h;
}

double q_zero(double greed, double R, double h_c, const ToleranceConfig& tol) {
    return greed * (1.0 - stationary_avg_price(1.0, R, h_c, tol)) +
           (1.0 - greed) * stationary_avg_freshness(1.0, R);
}

namespace {

struct GridTables {
    std::vector<double> h;  // freshness at bin centers
    std::vector<double> x;  // price at bin centers
    double h_tail = 0;
    double x_tail = 0;
};

GridTables make_tables(const AgeDistribution& phi, const ModelParams& mp) {
    GridTables t;
    const std::size_t bins = phi.density.size();
    t.h.resize(bins);
    t.x.resize(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        const double tau = (static_cast<double>(k) + 0.5) * phi.grid_step;
        t.h[k] = std::exp(-tau / mp.tau1);
        t.x[k] = 1.0 - std::exp(-t.h[k] / mp.h_c);
    }
    t.h_tail = std::exp(-phi.tau_max() / mp.tau1);
    t.x_tail = 1.0 - std::exp(-t.h_tail / mp.h_c);
    return t;
}

// Midpoint-rule quadrature of a bin-center table against the density, with
// the tail lumped at tau_max.
double quadrature(const AgeDistribution& phi, const std::vector<double>& table, double tail_value) {
    double sum = 0;
    for (std::size_t k = 0; k < phi.density.size(); ++k) sum += phi.density[k] * table[k];
    return phi.grid_step * sum + phi.tail_mass * tail_value;
}

// Unit-speed transport by one bin with uniform depletion and fresh injection.
void transport_step(AgeDistribution& phi, double lambda, double dt) {
    const double survive = std::exp(-lambda * dt);
    const std::size_t bins = phi.density.size();
    phi.tail_mass = (phi.tail_mass + phi.density[bins - 1] * phi.grid_step) * survive;
    for (std::size_t k = bins - 1; k > 0; --k) phi.density[k] = phi.density[k - 1] * survive;
    phi.density[0] = 0;
    const double surviving = phi.total_mass();
    phi.density[0] = (1.0 - surviving) / phi.grid_step;
}

}  // namespace

MeanFieldState symmetric_stationary_state(const ModelParams& params, double dt,
                                          double tau_max_factor) {
    params.validate();
    if (!(dt > 0) || dt > params.tau0 + 1e-12)
        throw std::invalid_argument("symmetric_stationary_state: need 0 < dt <= tau0");
    const double p0 = 1.0 / static_cast<double>(params.n_sellers);
    const double lambda0 = static_cast<double>(params.n_buyers) * p0 /
                           (static_cast<double>(params.n_products) * params.tau0);
    MeanFieldState state;
    state.phi.assign(params.n_sellers,
                     AgeDistribution::stationary(lambda0, dt, tau_max_factor * params.tau1));
    // Satisfaction from the grid quadrature (not the continuum formulas) so
    // the state is a fixed point of the discrete update map, not just close.
    const GridTables tables = make_tables(state.phi[0], params);
    const double hbar = quadrature(state.phi[0], tables.h, tables.h_tail);
    const double xbar = quadrature(state.phi[0], tables.x, tables.x_tail);
    const double q = params.greed * (1.0 - xbar) + (1.0 - params.greed) * hbar;
    state.s.assign(params.n_sellers, q);
    state.clock = 0;
    return state;
}

void bias_satisfaction(MeanFieldState& state, double delta) {
    if (state.s.size() < 2)
        throw std::invalid_argument("bias_satisfaction: need at least two sellers");
    state.s[0] += 0.5 * delta;
    state.s[1] -= 0.5 * delta;
}

TimeSeries integrate(const ModelParams& params, MeanFieldState state, double t_end,
                     double dt, const IntegrateOptions& opts) {
    params.validate();
    const int n = params.n_sellers;
    if (static_cast<int>(state.s.size()) != n || static_cast<int>(state.phi.size()) != n)
        throw std::invalid_argument("integrate: state does not match n_sellers");
    if (!(dt > 0) || dt > params.tau0 + 1e-12)
        throw std::invalid_argument("integrate: need 0 < dt <= tau0");
    for (const auto& phi : state.phi)
        if (std::abs(phi.grid_step - dt) > 1e-12 * std::max(1.0, dt))
            throw std::invalid_argument("integrate: dt must equal the age grid step");

    const GridTables tables = make_tables(state.phi[0], params);
    const double gain = (1.0 - params.alpha) / params.tau0;

    std::vector<double> p(n), hbar(n), xbar(n);
    auto observe_row = [&](TimeSeriesRow& row) {
        row.t = state.clock;
        row.p.assign(n, 0.0);
        choice_distribution(state.s, params.temperature, row.p);
        row.s = state.s;
        row.h.resize(n);
        row.x.resize(n);
        for (int i = 0; i < n; ++i) {
            row.h[i] = quadrature(state.phi[i], tables.h, tables.h_tail);
            row.x[i] = quadrature(state.phi[i], tables.x, tables.x_tail);
        }
    };

    TimeSeries ts;
    ts.n_sellers = n;
    ts.rows.emplace_back();
    observe_row(ts.rows.back());

    const double eps = 1e-9;
    const double clock0 = state.clock;
    double next_record = clock0 + opts.record_interval;
    std::int64_t step = 0;
    while (state.clock < t_end - eps) {
        ++step;
        choice_distribution(state.s, params.temperature, p);
        for (int i = 0; i < n; ++i) {
            const double lambda = static_cast<double>(params.n_buyers) * p[i] /
                                  (static_cast<double>(params.n_products) * params.tau0);
            transport_step(state.phi[i], lambda, dt);
            hbar[i] = quadrature(state.phi[i], tables.h, tables.h_tail);
            xbar[i] = quadrature(state.phi[i], tables.x, tables.x_tail);
            const double q = params.greed * (1.0 - xbar[i]) + (1.0 - params.greed) * hbar[i];
            state.s[i] += dt * gain * (q - state.s[i]);

            const double drift = std::abs(state.phi[i].total_mass() - 1.0);
            if (drift > opts.normalization_tolerance)
                throw NumericalError("integrate: age distribution normalization drifted by " +
                                     std::to_string(drift) + " for seller " + std::to_string(i) +
                                     " at t=" + std::to_string(state.clock));
        }
        state.clock = clock0 + static_cast<double>(step) * dt;
        if (state.clock >= next_record - eps) {
            ts.rows.emplace_back();
            observe_row(ts.rows.back());
            next_record = clock0 + opts.record_interval *
                                       (std::floor((state.clock - clock0) / opts.record_interval + eps) + 1.0);
        }
    }
    return ts;
}

}  // namespace freshmarket
