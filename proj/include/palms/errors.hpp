#pragma once

#include <stdexcept>
#include <string>

namespace palms {

// Error taxonomy mapped to CLI exit codes: parameter/config -> 2,
// data/parse -> 3, solver -> 4.
struct parameter_error : std::runtime_error {
    explicit parameter_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : data_error {
    parse_error(const std::string& msg, long line)
        : data_error(msg + " (line " + std::to_string(line) + ")"), line_no(line) {}
    long line_no;
};

struct solver_error : std::runtime_error {
    explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace palms
