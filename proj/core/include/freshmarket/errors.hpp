#pragma once

#include <stdexcept>
#include <string>

namespace freshmarket {

// Thrown when an iterative routine fails to converge or a state loses a
// required numerical invariant (e.g. age-distribution normalization).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace freshmarket
