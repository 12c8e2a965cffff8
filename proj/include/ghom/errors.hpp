#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ghom {

// Bad arguments, unsupported parameter domain, malformed input. CLI maps this to exit 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Non-finite values escaping a frequency integral or a matrix routine. CLI exit 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inversion refused: the matrix is (near-)singular. Carries the near-null direction,
// which for intertwined parameters is exactly the uninformative delay combination.
struct SingularMatrixError : std::runtime_error {
    std::vector<double> null_direction;
    double condition;

    SingularMatrixError(const std::string& what, std::vector<double> dir, double cond)
        : std::runtime_error(what), null_direction(std::move(dir)), condition(cond) {}
};

}  // namespace ghom
