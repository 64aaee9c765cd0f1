#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace homq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class ErrorCode {
    NotSymmetric,
    NotPositiveDefinite,
    NotMonotone,
    DimensionMismatch,
    InvalidArgument,
    NoConvergence,
    ZeroVector,
    NegativeInput,
    DimensionTooSmall,
    NotOnSphere,
    InvalidSector,
    NonPositiveF1,
    NotHomogeneous,
    EmptyTrajectory,
    ParseError,
    ValidationError,
    IoError,
    UnsupportedDimension,
    UnknownSuite,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this type; code() identifies the
// failure class, what() carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace homq
