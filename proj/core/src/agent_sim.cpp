#include "freshmarket/agent_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "freshmarket/mean_field.hpp"
#include "freshmarket/rng.hpp"

namespace freshmarket {

void SimConfig::validate() const {
    if (!(duration > 0)) throw std::invalid_argument("SimConfig: duration must be positive");
    if (!(record_interval > 0))
        throw std::invalid_argument("SimConfig: record_interval must be positive");
    if (record_interval > duration)
        throw std::invalid_argument("SimConfig: record_interval exceeds duration");
    if (effective_burn_in() >= duration)
        throw std::invalid_argument("SimConfig: burn_in must be below duration");
}

std::vector<double> Shelf::ages(double clock) const {
    std::vector<double> out(birth.size());
    for (std::size_t k = 0; k < birth.size(); ++k) out[k] = clock - birth[k];
    return out;
}

double Shelf::mean_age(double clock) const {
    double sum = 0;
    for (double b : birth) sum += clock - b;
    return sum / static_cast<double>(birth.size());
}

int RoundRecord::total() const {
    return std::accumulate(purchases.begin(), purchases.end(), 0);
}

MarketState init_market(const ModelParams& params, const SimConfig& cfg) {
    params.validate();
    cfg.validate();

    MarketState state;
    state.params = params;
    state.scheduler = cfg.scheduler;
    state.rng.seed(cfg.seed);

    state.shelves.resize(params.n_sellers);
    const double lambda0 = static_cast<double>(params.n_buyers) /
                           (static_cast<double>(params.n_sellers) *
                            static_cast<double>(params.n_products) * params.tau0);
    for (auto& shelf : state.shelves) {
        shelf.birth.assign(params.n_products, 0.0);
        if (cfg.init_shelves == ShelfInit::stationary)
            for (auto& b : shelf.birth) b = -rng::exponential(state.rng, lambda0);
    }

    double s0 = 0;
    if (cfg.init_satisfaction == SatisfactionInit::stationary) {
        const double p0 = 1.0 / static_cast<double>(params.n_sellers);
        const double r = params.turnover_ratio();
        s0 = params.greed * (1.0 - stationary_avg_price(p0, r, params.h_c)) +
             (1.0 - params.greed) * stationary_avg_freshness(p0, r);
    }
    state.buyers.assign(params.n_buyers, SatisfactionVector(params.n_sellers, s0));
    return state;
}

namespace {

// One purchase by one buyer at the current clock: logit (or argmax) seller
// choice, age-blind product draw, experience at the product's current age,
// replacement with a fresh product, and the buyer's satisfaction update for
// the chosen seller only.
int act(MarketState& state, std::size_t buyer_index, std::vector<double>& prob_scratch) {
    const ModelParams& mp = state.params;
    auto& satisfaction = state.buyers[buyer_index];

    int seller;
    if (mp.temperature > 0) {
        choice_probabilities(satisfaction, mp.temperature, prob_scratch);
        const double u = rng::uniform01(state.rng);
        double acc = 0;
        seller = mp.n_sellers - 1;
        for (int i = 0; i < mp.n_sellers; ++i) {
            acc += prob_scratch[i];
            if (u < acc) {
                seller = i;
                break;
            }
        }
    } else {
        const double s_max = *std::max_element(satisfaction.begin(), satisfaction.end());
        int ties = 0;
        for (double s : satisfaction)
            if (s == s_max) ++ties;
        if (ties == 1) {
            seller = static_cast<int>(std::max_element(satisfaction.begin(), satisfaction.end()) -
                                      satisfaction.begin());
        } else {
            int pick = static_cast<int>(rng::uniform_index(state.rng, ties));
            seller = 0;
            for (int i = 0; i < mp.n_sellers; ++i) {
                if (satisfaction[i] == s_max && pick-- == 0) {
                    seller = i;
                    break;
                }
            }
        }
    }

    Shelf& shelf = state.shelves[seller];
    const std::size_t k = rng::uniform_index(state.rng, shelf.birth.size());
    const double age = shelf.age(k, state.clock);
    const double h = freshness(age, mp.tau1);
    const double x = price(age, mp.tau1, mp.h_c);
    shelf.birth[k] = state.clock;  // replaced by a fresh product
    satisfaction[seller] = update_satisfaction(satisfaction[seller], h, x, mp.alpha, mp.greed);
    return seller;
}

RoundRecord step_rounds_scheduler(MarketState& state) {
    const ModelParams& mp = state.params;
    RoundRecord rec;
    rec.purchases.assign(mp.n_sellers, 0);

    std::vector<std::size_t> order(mp.n_buyers);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size() - 1; i > 0; --i)
        std::swap(order[i], order[rng::uniform_index(state.rng, i + 1)]);

    std::vector<double> prob(mp.n_sellers);
    for (std::size_t b : order) ++rec.purchases[act(state, b, prob)];

    // Clock derives from the round counter, not accumulation, so sampling
    // instants stay exact multiples of tau0.
    ++state.rounds_done;
    state.clock = mp.tau0 * static_cast<double>(state.rounds_done);
    return rec;
}

RoundRecord step_poisson_scheduler(MarketState& state) {
    const ModelParams& mp = state.params;
    RoundRecord rec;
    rec.purchases.assign(mp.n_sellers, 0);

    const double t_end = mp.tau0 * static_cast<double>(state.rounds_done + 1);
    const double rate = static_cast<double>(mp.n_buyers) / mp.tau0;
    std::vector<double> prob(mp.n_sellers);
    for (;;) {
        const double gap = rng::exponential(state.rng, rate);
        if (state.clock + gap >= t_end) break;  // memoryless: redraw next round
        state.clock += gap;
        const std::size_t buyer = rng::uniform_index(state.rng, state.buyers.size());
        ++rec.purchases[act(state, buyer, prob)];
    }
    ++state.rounds_done;
    state.clock = t_end;
    return rec;
}

}  // namespace

RoundRecord step_round(MarketState& state) {
    return state.scheduler == Scheduler::rounds ? step_rounds_scheduler(state)
                                                : step_poisson_scheduler(state);
}

TimeSeriesRow observe(const MarketState& state) {
    const ModelParams& mp = state.params;
    const int n = mp.n_sellers;
    TimeSeriesRow row;
    row.t = state.clock;
    row.p.assign(n, 0.0);
    row.s.assign(n, 0.0);
    row.h.assign(n, 0.0);
    row.x.assign(n, 0.0);

    std::vector<double> prob(n);
    for (const auto& satisfaction : state.buyers) {
        choice_distribution(satisfaction, mp.temperature, prob);
        for (int i = 0; i < n; ++i) {
            row.p[i] += prob[i];
            row.s[i] += satisfaction[i];
        }
    }
    const double inv_buyers = 1.0 / static_cast<double>(mp.n_buyers);
    for (int i = 0; i < n; ++i) {
        row.p[i] *= inv_buyers;
        row.s[i] *= inv_buyers;
    }

    for (int i = 0; i < n; ++i) {
        double hsum = 0, xsum = 0;
        for (double b : state.shelves[i].birth) {
            const double h = std::exp(-(state.clock - b) / mp.tau1);
            hsum += h;
            xsum += 1.0 - std::exp(-h / mp.h_c);
        }
        row.h[i] = hsum / static_cast<double>(mp.n_products);
        row.x[i] = xsum / static_cast<double>(mp.n_products);
    }
    return row;
}

TimeSeries run(const ModelParams& params, const SimConfig& cfg) {
    MarketState state = init_market(params, cfg);

    TimeSeries ts;
    ts.n_sellers = params.n_sellers;
    ts.rows.push_back(observe(state));

    double next_record = cfg.record_interval;
    const double eps = 1e-9;
    while (state.clock < cfg.duration - eps) {
        step_round(state);
        if (state.clock >= next_record - eps) {
            ts.rows.push_back(observe(state));
            next_record = cfg.record_interval *
                          (std::floor(state.clock / cfg.record_interval + eps) + 1.0);
        }
    }
    return ts;
}

}  // namespace freshmarket
