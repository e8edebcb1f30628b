#include "freshmarket/time_series.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace freshmarket {

namespace {

void append_value(std::string& line, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    line += buf;
}

}  // namespace

void TimeSeries::write_csv(std::ostream& os) const {
    std::string line = "t";
    for (const char* col : {"p", "s", "h", "x"})
        for (int i = 1; i <= n_sellers; ++i) line += "," + std::string(col) + std::to_string(i);
    os << line << '\n';
    for (const auto& row : rows) {
        line.clear();
        append_value(line, row.t);
        for (const auto* v : {&row.p, &row.s, &row.h, &row.x}) {
            for (double e : *v) {
                line += ',';
                append_value(line, e);
            }
        }
        os << line << '\n';
    }
}

std::string TimeSeries::to_csv() const {
    std::ostringstream ss;
    write_csv(ss);
    return ss.str();
}

}  // namespace freshmarket
