#pragma once

#include <stdexcept>
#include <string>

namespace afmtj {

// Exit-code contract: validation -> 1, numerical -> 2, non-converged -> 3.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalError : std::runtime_error {
    double t_fail = 0.0;  // simulation time at failure [s]
    explicit NumericalError(const std::string& msg, double t = 0.0)
        : std::runtime_error(msg), t_fail(t) {}
};

struct NonConvergedError : std::runtime_error {
    explicit NonConvergedError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace afmtj
