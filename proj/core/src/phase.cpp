#include "freshmarket/phase.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "freshmarket/mean_field.hpp"
#include "freshmarket/rng.hpp"

namespace freshmarket {

std::string to_string(PhaseLabel label) {
    switch (label) {
        case PhaseLabel::Symmetric: return "S";
        case PhaseLabel::Asymmetric: return "A";
        case PhaseLabel::Oscillatory: return "O";
        case PhaseLabel::AsymmetricOscillation: return "A'";
    }
    return "?";
}

double price_term_derivative(double R, double p0, double h_c, const ToleranceConfig& tol) {
    auto unsold_share = [R, h_c, &tol](double p) {
        const double s = p * R;
        return s * std::pow(h_c, s) * lower_incomplete_gamma(s, 1.0 / h_c, tol);
    };
    return p0 * richardson_derivative(unsold_share, p0, 1e-5);
}

double critical_temperature(double greed, double R, double p0, double h_c) {
    const double freshness_term = R * p0 / ((1.0 + R * p0) * (1.0 + R * p0));
    if (greed == 0) return freshness_term;  // the no-price limit, exact
    return greed * price_term_derivative(R, p0, h_c) + (1.0 - greed) * freshness_term;
}

double stability_prefactor(const ModelParams& params, double p0) {
    params.validate();
    if (!(p0 > 0 && p0 < 1))
        throw std::invalid_argument("stability_prefactor: p0 must lie in (0,1)");
    return critical_temperature(params.greed, params.turnover_ratio(), p0, params.h_c) -
           params.temperature;
}

double critical_greed(double R, double h_c) {
    const double unsold = 1.0 - stationary_avg_price(1.0, R, h_c);  // 1 - xbar(1)
    const double hbar = stationary_avg_freshness(1.0, R);
    const double denom = 1.0 - unsold + hbar;
    if (std::abs(denom) < 1e-12)
        throw NumericalError("critical_greed: degenerate denominator");
    return hbar / denom;
}

std::optional<double> crossing_age(double greed, double R, double h_c, double tau1,
                                   const ToleranceConfig& tol) {
    const double q0 = q_zero(greed, R, h_c, tol);
    // Residual in w = exp(-tau/tau1); the sought crossing is the smallest-w
    // (largest-age) root, left of the residual's minimum.
    auto residual = [greed, h_c, q0](double w) {
        return greed * std::exp(-w / h_c) + (1.0 - greed) * w - q0;
    };
    const double at_infinity = greed - q0;  // residual at w = 0
    if (at_infinity <= tol.abs_tol) return std::nullopt;  // g <= g_c: no second crossing

    double w_dip = 1.0;
    if (greed < 1.0) {
        w_dip = h_c * std::log(greed / ((1.0 - greed) * h_c));
        w_dip = std::min(w_dip, 1.0);
    }
    if (residual(w_dip) >= 0) return std::nullopt;

    const double w_star = find_root(residual, 0.0, w_dip, tol);
    return -tau1 * std::log(w_star);
}

OrderParams order_parameters(const TimeSeries& ts, double burn_in) {
    if (ts.n_sellers < 2)
        throw std::invalid_argument("order_parameters: need at least two sellers");
    double sum = 0, abs_sum = 0;
    std::size_t count = 0;
    for (const auto& row : ts.rows) {
        if (row.t < burn_in - 1e-9) continue;
        const double d = row.p[0] - row.p[1];
        sum += d;
        abs_sum += std::abs(d);
        ++count;
    }
    if (count == 0) throw std::invalid_argument("order_parameters: no rows past burn-in");
    const double mean = sum / static_cast<double>(count);
    const double abs_mean = abs_sum / static_cast<double>(count);
    OrderParams op;
    op.m_a = std::abs(mean);
    op.m_o = abs_mean - op.m_a;
    op.m = op.m_a - op.m_o;
    return op;
}

PhaseLabel classify(const OrderParams& op, double threshold) {
    const bool broken = op.m_a > threshold;
    const bool oscillating = op.m_o > threshold;
    if (broken && oscillating) return PhaseLabel::AsymmetricOscillation;
    if (broken) return PhaseLabel::Asymmetric;
    if (oscillating) return PhaseLabel::Oscillatory;
    return PhaseLabel::Symmetric;
}

std::optional<double> half_period(const TimeSeries& ts, double burn_in) {
    std::vector<double> t, d;
    for (const auto& row : ts.rows) {
        if (row.t < burn_in - 1e-9) continue;
        t.push_back(row.t);
        d.push_back(row.p[0] - row.p[1]);
    }
    if (d.size() < 2) return std::nullopt;

    double mean = 0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(d.size());
    for (double& v : d) v -= mean;

    // centered moving average, window 5, shrunk at the edges
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(d.size());
    std::vector<double> smooth(d.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - 2);
        const std::ptrdiff_t hi = std::min(n - 1, i + 2);
        double acc = 0;
        for (std::ptrdiff_t j = lo; j <= hi; ++j) acc += d[j];
        smooth[i] = acc / static_cast<double>(hi - lo + 1);
    }

    std::vector<double> crossings;
    double prev = 0;
    std::size_t prev_idx = 0;
    bool have_prev = false;
    for (std::size_t i = 0; i < smooth.size(); ++i) {
        if (smooth[i] == 0) continue;
        if (have_prev && (smooth[i] > 0) != (prev > 0)) {
            const double t0 = t[prev_idx], t1 = t[i];
            crossings.push_back(t0 + (t1 - t0) * prev / (prev - smooth[i]));
        }
        prev = smooth[i];
        prev_idx = i;
        have_prev = true;
    }
    if (crossings.size() < 4) return std::nullopt;
    return (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
}

BoundaryCurve compute_boundary(double R, double p0, double h_c, double tau1,
                               const std::vector<double>& greed_grid) {
    BoundaryCurve curve;
    curve.greed = greed_grid;
    curve.g_c = critical_greed(R, h_c);
    curve.t_c.reserve(greed_grid.size());
    curve.tau_star.reserve(greed_grid.size());
    for (double g : greed_grid) {
        curve.t_c.push_back(critical_temperature(g, R, p0, h_c));
        curve.tau_star.push_back(crossing_age(g, R, h_c, tau1));
    }
    return curve;
}

std::vector<SweepCell> sweep(const SweepGrid& grid, const ModelParams& params,
                             const SimConfig& base_cfg, const RunFunction& runner,
                             double threshold, int threads) {
    if (grid.temperatures.empty() || grid.greeds.empty())
        throw std::invalid_argument("sweep: empty grid");
    const std::size_t n_cells = grid.temperatures.size() * grid.greeds.size();
    std::vector<SweepCell> cells(n_cells);

    auto run_cell = [&](std::size_t idx) {
        SweepCell& cell = cells[idx];
        cell.temperature = grid.temperatures[idx / grid.greeds.size()];
        cell.greed = grid.greeds[idx % grid.greeds.size()];
        try {
            ModelParams mp = params;
            mp.temperature = cell.temperature;
            mp.greed = cell.greed;
            SimConfig cfg = base_cfg;
            cfg.seed = rng::mix_seed(base_cfg.seed, idx);
            const TimeSeries ts = runner(mp, cfg);
            cell.order = order_parameters(ts, cfg.effective_burn_in());
            cell.phase = classify(cell.order, threshold);
            cell.half_period = half_period(ts, cfg.effective_burn_in());
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    };

    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n_cells)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n_cells; ++i) run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < n_cells; i = next.fetch_add(1))
                    run_cell(i);
            });
        for (auto& th : pool) th.join();
    }
    return cells;
}

std::string sweep_to_csv(const std::vector<SweepCell>& cells) {
    std::string csv = "T,g,m_a,m_o,m,phase,half_period\n";
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.9g", v);
        csv += buf;
    };
    for (const auto& cell : cells) {
        num(cell.temperature);
        csv += ',';
        num(cell.greed);
        if (cell.failed()) {
            csv += ",,,,ERROR,\n";
            continue;
        }
        csv += ',';
        num(cell.order.m_a);
        csv += ',';
        num(cell.order.m_o);
        csv += ',';
        num(cell.order.m);
        csv += ',';
        csv += to_string(cell.phase);
        csv += ',';
        if (cell.half_period) num(*cell.half_period);
        csv += '\n';
    }
    return csv;
}

}  // namespace freshmarket
