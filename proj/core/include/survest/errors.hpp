#pragma once

#include <stdexcept>
#include <string>

namespace survest {

// L coincides with an x value or lies inside [min(x), max(x)].
struct DegenerateTransform : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sample size incompatible with the population (needs 2 <= n < N).
struct InvalidDesign : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// C(N, n) exceeds the enumeration cap.
struct TooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A formula denominator is zero; the message names the constant.
struct DivisionByZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A SummaryParams field needed by a formula was never populated.
struct MissingParam : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// optimal L does not exist (beta >= 0).
struct NoSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BracketFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CSV / params file syntax error; carries a 1-based line number.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_number(line) {}
    std::size_t line_number;
};

}  // namespace survest
