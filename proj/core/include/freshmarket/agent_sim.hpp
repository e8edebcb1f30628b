#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "freshmarket/model.hpp"
#include "freshmarket/time_series.hpp"

namespace freshmarket {

enum class Scheduler { rounds, poisson };
enum class ShelfInit { stationary, fresh };
enum class SatisfactionInit { stationary, zero };

/// How a buyer's satisfaction entries evolve at a purchase event.
/// observed: the buyer also browses one random product at every other seller
/// and relaxes those entries through the same update rule (the discrete
/// counterpart of the mean-field relaxation; nothing is bought there).
/// purchased_only: entries for non-visited sellers stay frozen. At low
/// temperature this freezes the market into permanent asymmetry, since
/// exploratory visits are suppressed as exp(-gap/T).
enum class SatisfactionRule { observed, purchased_only };

struct SimConfig {
    std::uint64_t seed = 1;
    double duration = 2000.0;
    double record_interval = 0.5;
    Scheduler scheduler = Scheduler::rounds;
    ShelfInit init_shelves = ShelfInit::stationary;
    SatisfactionInit init_satisfaction = SatisfactionInit::stationary;
    SatisfactionRule satisfaction_rule = SatisfactionRule::observed;
    double burn_in = -1.0;  ///< analysis burn-in; < 0 means duration/4

    double effective_burn_in() const { return burn_in < 0 ? 0.25 * duration : burn_in; }
    void validate() const;
};

/// Product ages are stored as birth times, age = clock - birth. Advancing the
/// clock then ages every product at once, which keeps per-event aging O(1)
/// under the poisson scheduler.
struct Shelf {
    std::vector<double> birth;

    double age(std::size_t k, double clock) const { return clock - birth[k]; }
    std::vector<double> ages(double clock) const;
    double mean_age(double clock) const;
};

/// Per-buyer satisfaction, one entry per seller.
using SatisfactionVector = std::vector<double>;

struct MarketState {
    ModelParams params;
    Scheduler scheduler = Scheduler::rounds;
    SatisfactionRule satisfaction_rule = SatisfactionRule::observed;
    std::vector<Shelf> shelves;              // one per seller
    std::vector<SatisfactionVector> buyers;  // n_buyers x n_sellers
    double clock = 0;
    std::int64_t rounds_done = 0;
    std::mt19937_64 rng;
};

struct RoundRecord {
    std::vector<int> purchases;  // per seller
    int total() const;
};

/// Fresh market state: identical satisfactions across sellers (choice starts
/// exactly uniform) and either stationary-exponential or all-fresh shelf ages.
MarketState init_market(const ModelParams& params, const SimConfig& cfg);

/// Advances one round (tau0 of simulated time). Under the rounds scheduler
/// every buyer acts once in a fresh random permutation and ages advance at the
/// round boundary; under the poisson scheduler purchase events arrive as a
/// merged rate-(N_a/tau0) stream with continuous aging.
RoundRecord step_round(MarketState& state);

/// init_market + rounds until clock >= duration, sampling one row per
/// record_interval (plus the initial state). Recorded p are buyer-averaged
/// choice probabilities, not empirical purchase frequencies.
TimeSeries run(const ModelParams& params, const SimConfig& cfg);

/// The observable row for the current state (used by run; exposed for tests).
TimeSeriesRow observe(const MarketState& state);

}  // namespace freshmarket
