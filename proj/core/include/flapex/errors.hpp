#pragma once

#include <stdexcept>
#include <string>

namespace flapex {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched or out-of-range vector/matrix dimensions.
struct DimensionError : Error {
    using Error::Error;
};

/// Input outside the mathematical domain of an operation (e.g. dim 0, depth <= 0).
struct DomainError : Error {
    using Error::Error;
};

/// Invalid point label or label indices.
struct LabelError : Error {
    using Error::Error;
};

/// Degenerate geometry (affinely dependent simplex, vanishing normal, ...).
struct GeometryError : Error {
    using Error::Error;
};

/// Two configurations that were expected to share labels/ordering do not.
struct ConfigurationError : Error {
    using Error::Error;
};

/// A sampled motion cannot be evaluated on the requested grid.
struct SamplingError : Error {
    using Error::Error;
};

/// Malformed external input (files, schemas, argument values).
struct InputError : Error {
    using Error::Error;
};

/// An internal cross-check failed; signals numerical breakdown, not bad input.
struct ConsistencyError : Error {
    using Error::Error;
};

/// Eigensolver could not meet the requested reconstruction accuracy.
struct ConvergenceError : Error {
    double residual;
    ConvergenceError(const std::string& msg, double res) : Error(msg), residual(res) {}
};

/// A motion sample violates the rigidity the flapped pair forces on it:
/// face displacements disagree across the face, change norm, or tilt into the face.
struct RigidityError : Error {
    double residual;
    double t;
    int face;
    RigidityError(const std::string& msg, double res, double time, int face_index)
        : Error(msg), residual(res), t(time), face(face_index) {}
};

/// The base-space part of a face displacement leaves its normal line.
struct OrthogonalityError : Error {
    double residual;
    double t;
    int face;
    OrthogonalityError(const std::string& msg, double res, double time, int face_index)
        : Error(msg), residual(res), t(time), face(face_index) {}
};

/// A rigidity-check precondition failed; `which` tells the caller which one.
struct PreconditionError : Error {
    enum class Which { DistanceMismatch, NotParallelogram };
    Which which;
    PreconditionError(const std::string& msg, Which w) : Error(msg), which(w) {}
};

}  // namespace flapex
