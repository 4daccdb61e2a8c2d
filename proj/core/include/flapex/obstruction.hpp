#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "flapex/motion.hpp"

namespace flapex {

/// First non-obtuse pair found in a vector family.
struct ObtuseWitness {
    int a = 0;
    int b = 0;
    double dot = 0.0;
};

enum class CertificateKind {
    RigidityViolation,
    OrthogonalityViolation,
    ObtuseContradiction,
    MonotonicityViolation,
};

std::string certificate_kind_name(CertificateKind kind);

/// Machine-checkable record of the first pipeline step a claimed
/// low-dimensional continuous expansion fails.
struct ObstructionCertificate {
    CertificateKind kind = CertificateKind::MonotonicityViolation;
    double t0 = 0.0;
    std::vector<double> ak_values;
    std::vector<Vec> wk_vectors;
    std::vector<std::vector<double>> pairwise_dots;
    std::string narrative;
};

enum class NoObstructionReason {
    DimensionSufficient,
    InconclusiveGrid,
    NonObtuseAtT0,
};

std::string no_obstruction_reason_name(NoObstructionReason reason);

/// Complement family extracted at the scan time, kept for reporting even
/// when it does not contradict anything (the boundary family in full
/// dimension, or an inconclusive scan).
struct ComplementFamilyInfo {
    double t0 = 0.0;
    std::vector<double> ak;
    std::vector<Vec> wk;
    std::vector<std::vector<double>> dots;
    bool pairwise_obtuse = false;
};

struct PipelineResult {
    std::optional<ObstructionCertificate> certificate;
    std::optional<NoObstructionReason> reason;  // set iff no certificate
    std::optional<ComplementFamilyInfo> info;
    std::string narrative;

    bool obstructed() const { return certificate.has_value(); }
};

/// True iff the diagonals (p0,p2) and (p1,p3) bisect each other within tol.
bool is_parallelogram(const std::array<Vec, 4>& pts, double tol);

struct ParallelogramRigidityReport {
    bool is_congruent_parallelogram = false;
    double max_distance_mismatch = 0.0;
    double midpoint_gap_u = 0.0;
    double midpoint_gap_v = 0.0;
};

/// Given all six pairwise distances of u and v equal within tol and u a
/// parallelogram (both preconditions checked, violations throw
/// PreconditionError), verifies that v is again a parallelogram congruent
/// to u and returns the diagnostic gaps.
ParallelogramRigidityReport parallelogram_rigidity(const std::array<Vec, 4>& u,
                                                   const std::array<Vec, 4>& v, double tol);

/// Lexicographically first pair with nonnegative dot product, or nullopt if
/// the family is pairwise obtuse. A pairwise-obtuse family of n+2 or more
/// vectors in dimension n is impossible, so that outcome throws
/// ConsistencyError (numerical breakdown alarm).
std::optional<ObtuseWitness> find_non_obtuse_pair(const std::vector<Vec>& vectors);

/// Runs the obstruction analysis of a sampled motion of the flapped pair in
/// ambient dimension f. For f >= 2d the result is no-obstruction (dimension
/// sufficient), with the complement family attached informationally when the
/// analysis goes through. For f < 2d the steps run in order (monotonicity,
/// displacement rigidity, normal-line split, scan for the grid time
/// minimizing max_k |a_k|, pairwise complement dots) and the first failure
/// is returned as a certificate. A strict margin max_k |a_k(t0)| < s - tol
/// is required before the complement family may certify anything.
PipelineResult obstruction_pipeline(const MotionSample& sample, const FlapSpec& spec,
                                    double tol);

}  // namespace flapex
