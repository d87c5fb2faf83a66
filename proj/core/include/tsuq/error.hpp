#pragma once

#include <stdexcept>
#include <string>

namespace tsuq {

// Base class for all errors the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument or incompatible tensor shapes.
struct InvalidArgument : Error {
    using Error::Error;
};

// Malformed input file (unknown header, unparseable row, bad checkpoint).
struct FormatError : Error {
    using Error::Error;
};

// Inconsistent or unusable configuration.
struct ConfigError : Error {
    using Error::Error;
};

// NaN/Inf where a finite value is required.
struct NumericError : Error {
    using Error::Error;
};

// Metric has no defined value for the given inputs (e.g. constant targets).
struct UndefinedMetric : Error {
    using Error::Error;
};

// Operation applied to a model of the wrong uncertainty method.
struct WrongMethod : Error {
    using Error::Error;
};

// Filesystem failure, annotated with the offending path.
struct IoError : Error {
    using Error::Error;
};

// Loss became NaN during training; carries the epoch where it happened.
struct TrainingDiverged : Error {
    explicit TrainingDiverged(int epoch_, const std::string& what_)
        : Error(what_), epoch(epoch_) {}
    int epoch;
};

}  // namespace tsuq
