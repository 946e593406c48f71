#pragma once

#include <stdexcept>
#include <string>

namespace nsbench {

/// Bad sizes, spacings, relaxation parameters, unknown keys, malformed files.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched field shapes or otherwise unusable call arguments.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// FlowState whose backward faces disagree with the shared forward faces.
struct InconsistentState : std::logic_error {
    using std::logic_error::logic_error;
};

/// Zero pivot met during tridiagonal elimination.
struct SingularLine : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Multigrid hierarchy cannot be coarsened to the requested depth.
struct InvalidHierarchy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nsbench
