#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pcf {

// Input text could not be parsed; `line` is 1-based, 0 when not tied to a line.
struct parse_error : std::runtime_error {
    parse_error(int line_, const std::string& message) : std::runtime_error(message), line(line_) {}
    int line = 0;
};

// A degree target exceeds what the host graph can supply at `vertex`, so the
// derived matching instance does not exist and no factor can exist either.
struct infeasible_error : std::runtime_error {
    infeasible_error(std::string vertex_, const std::string& message)
        : std::runtime_error(message), vertex(std::move(vertex_)) {}
    std::string vertex;
};

struct not_perfect_error : std::runtime_error { using std::runtime_error::runtime_error; };
struct not_a_factor_error : std::runtime_error { using std::runtime_error::runtime_error; };
struct invalid_palette_error : std::runtime_error { using std::runtime_error::runtime_error; };
struct not_violating_error : std::runtime_error { using std::runtime_error::runtime_error; };
struct invalid_colouring_error : std::runtime_error { using std::runtime_error::runtime_error; };

struct not_regular_error : std::runtime_error {
    not_regular_error(int required_, const std::string& message)
        : std::runtime_error(message), required(required_) {}
    int required = 0;
};

// An exhaustive procedure was asked to run beyond its configured cap.
struct too_large_error : std::runtime_error { using std::runtime_error::runtime_error; };

// No factor exists and the certificate search space exceeds the configured cap.
struct search_cap_error : std::runtime_error { using std::runtime_error::runtime_error; };

} // namespace pcf
