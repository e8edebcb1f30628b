#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freshmarket {

/// One sampled instant: buyer-averaged choice probabilities, mean
/// satisfactions, and shelf means of freshness and price, per seller.
struct TimeSeriesRow {
    double t = 0;
    std::vector<double> p;
    std::vector<double> s;
    std::vector<double> h;
    std::vector<double> x;
};

struct TimeSeries {
    int n_sellers = 2;
    std::vector<TimeSeriesRow> rows;

    /// CSV with header t,p1,p2,s1,s2,h1,h2,x1,x2 (column count follows
    /// n_sellers); values carry 9 significant digits.
    void write_csv(std::ostream& os) const;
    std::string to_csv() const;
};

}  // namespace freshmarket
