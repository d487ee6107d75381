// Error types shared across the library.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rydxpm {

/// Exact pole hit (e.g. undamped resonance, zero interatomic distance).
class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical routine could not reach the requested accuracy. Carries the
/// best estimate obtained so far.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, std::complex<double> best)
        : std::runtime_error(what), best_estimate(best) {}

    std::complex<double> best_estimate;
};

/// Root-find for the susceptibility amplitude failed.
class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A phase/overlap computation was asked to consume an aborted trajectory.
class IncompleteTrajectoryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration text could not be parsed; carries 1-based line/column.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line_, int column_)
        : std::runtime_error(what + " (line " + std::to_string(line_) +
                             ", column " + std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}

    int line;
    int column;
};

}  // namespace rydxpm
