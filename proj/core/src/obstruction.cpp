#include "flapex/obstruction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace flapex {

std::string certificate_kind_name(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::RigidityViolation: return "rigidityViolation";
        case CertificateKind::OrthogonalityViolation: return "orthogonalityViolation";
        case CertificateKind::ObtuseContradiction: return "obtuseContradiction";
        case CertificateKind::MonotonicityViolation: return "monotonicityViolation";
    }
    return "unknown";
}

std::string no_obstruction_reason_name(NoObstructionReason reason) {
    switch (reason) {
        case NoObstructionReason::DimensionSufficient: return "dimensionSufficient";
        case NoObstructionReason::InconclusiveGrid: return "inconclusiveGrid";
        case NoObstructionReason::NonObtuseAtT0: return "nonObtuseAtT0";
    }
    return "unknown";
}

bool is_parallelogram(const std::array<Vec, 4>& pts, double tol) {
    if (tol < 0.0) throw InputError("is_parallelogram: tolerance must be nonnegative");
    for (const Vec& p : pts) require_same_dim(pts[0], p, "is_parallelogram");
    const Vec mid_02 = 0.5 * (pts[0] + pts[2]);
    const Vec mid_13 = 0.5 * (pts[1] + pts[3]);
    return distance(mid_02, mid_13) <= tol;
}

ParallelogramRigidityReport parallelogram_rigidity(const std::array<Vec, 4>& u,
                                                   const std::array<Vec, 4>& v, double tol) {
    if (tol <= 0.0) throw InputError("parallelogram_rigidity: tolerance must be positive");
    double mismatch = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            mismatch = std::max(mismatch,
                                std::abs(distance(u[static_cast<std::size_t>(a)],
                                                  u[static_cast<std::size_t>(b)]) -
                                         distance(v[static_cast<std::size_t>(a)],
                                                  v[static_cast<std::size_t>(b)])));
    if (mismatch > tol)
        throw PreconditionError("parallelogram_rigidity: pairwise distances differ by " +
                                    std::to_string(mismatch),
                                PreconditionError::Which::DistanceMismatch);
    const double gap_u = distance(0.5 * (u[0] + u[2]), 0.5 * (u[1] + u[3]));
    if (gap_u > tol)
        throw PreconditionError("parallelogram_rigidity: first quadruple is not a parallelogram",
                                PreconditionError::Which::NotParallelogram);

    ParallelogramRigidityReport report;
    report.max_distance_mismatch = mismatch;
    report.midpoint_gap_u = gap_u;
    report.midpoint_gap_v = distance(0.5 * (v[0] + v[2]), 0.5 * (v[1] + v[3]));
    report.is_congruent_parallelogram = report.midpoint_gap_v <= tol;
    return report;
}

std::optional<ObtuseWitness> find_non_obtuse_pair(const std::vector<Vec>& vectors) {
    if (vectors.empty()) throw InputError("find_non_obtuse_pair: empty family");
    const int n = vectors.front().dim();
    for (const Vec& v : vectors)
        if (v.dim() != n) throw DimensionError("find_non_obtuse_pair: mixed dimensions");

    const int count = static_cast<int>(vectors.size());
    for (int a = 0; a < count; ++a)
        for (int b = a + 1; b < count; ++b) {
            const double dab = dot(vectors[static_cast<std::size_t>(a)],
                                   vectors[static_cast<std::size_t>(b)]);
            if (dab >= 0.0) return ObtuseWitness{a, b, dab};
        }
    if (count >= n + 2)
        throw ConsistencyError("find_non_obtuse_pair: " + std::to_string(count) +
                               " pairwise-obtuse vectors reported in dimension " +
                               std::to_string(n) + "; at most n+1 can exist, so this signals numerical breakdown");
    return std::nullopt;
}

namespace {

struct ScanOutcome {
    int index = -1;
    double max_ak = 0.0;
};

ScanOutcome scan_min_max_ak(const SplitField& split, const std::vector<double>& grid) {
    ScanOutcome best;
    for (std::size_t m = 0; m < grid.size(); ++m) {
        double worst = 0.0;
        for (const std::vector<double>& ak : split.ak)
            worst = std::max(worst, std::abs(ak[m]));
        if (best.index < 0 || worst < best.max_ak) {
            best.index = static_cast<int>(m);
            best.max_ak = worst;
        }
    }
    return best;
}

ComplementFamilyInfo family_at(const SplitField& split, const std::vector<double>& grid,
                               int m) {
    ComplementFamilyInfo info;
    info.t0 = grid[static_cast<std::size_t>(m)];
    const std::size_t faces = split.ak.size();
    info.ak.reserve(faces);
    info.wk.reserve(faces);
    for (std::size_t k = 0; k < faces; ++k) {
        info.ak.push_back(split.ak[k][static_cast<std::size_t>(m)]);
        info.wk.push_back(split.wk[k][static_cast<std::size_t>(m)]);
    }
    info.dots.assign(faces, std::vector<double>(faces, 0.0));
    info.pairwise_obtuse = true;
    for (std::size_t a = 0; a < faces; ++a)
        for (std::size_t b = 0; b < faces; ++b) {
            info.dots[a][b] = dot(info.wk[a], info.wk[b]);
            if (a != b && info.dots[a][b] >= 0.0) info.pairwise_obtuse = false;
        }
    return info;
}

void verify_contradiction_certificate(const ObstructionCertificate& cert, int d, int f,
                                      double tol) {
    const int family = static_cast<int>(cert.wk_vectors.size());
    if (family != d + 1)
        throw ConsistencyError("obtuse certificate: expected d+1 complement vectors");
    const int complement_dim = f - d;
    for (const Vec& w : cert.wk_vectors)
        if (w.dim() != complement_dim)
            throw ConsistencyError("obtuse certificate: complement dimension mismatch");
    if (!(complement_dim <= d - 1))
        throw ConsistencyError("obtuse certificate: complement dimension is not below d");
    if (!(family >= complement_dim + 2))
        throw ConsistencyError("obtuse certificate: family too small to contradict anything");
    for (int a = 0; a < family; ++a)
        for (int b = 0; b < family; ++b)
            if (a != b && !(cert.pairwise_dots[static_cast<std::size_t>(a)]
                                              [static_cast<std::size_t>(b)] < -tol))
                throw ConsistencyError("obtuse certificate: a pairwise dot is not strictly negative");
}

}  // namespace

PipelineResult obstruction_pipeline(const MotionSample& sample, const FlapSpec& spec,
                                    double tol) {
    if (tol <= 0.0) throw InputError("obstruction_pipeline: tolerance must be positive");
    const int d = spec.simplex.dim;
    if (sample.labels != canonical_labels(d))
        throw InputError("obstruction_pipeline: sample labels do not match the flapped pair");
    if (sample.frame_count() < 2 ||
        sample.frame_count() != static_cast<int>(sample.grid.size()))
        throw InputError("obstruction_pipeline: malformed sample grid");
    const int f = sample.ambient_dim;
    const double s = spec.depth;

    PipelineResult result;

    if (f >= 2 * d) {
        result.reason = NoObstructionReason::DimensionSufficient;
        std::ostringstream narrative;
        narrative << "ambient dimension " << f << " is at least twice the base dimension " << d
                  << "; no obstruction applies.";
        // Informational analysis; failures here are reported, not certified.
        try {
            const MonotonicityReport mono = monotonicity_report(sample, tol);
            if (mono.ok) {
                const DisplacementField field = displacement_field(sample, spec, tol);
                const SplitField split = split_displacement(field, d, tol);
                const ScanOutcome scan = scan_min_max_ak(split, sample.grid);
                if (scan.index >= 0 && scan.max_ak < s - tol) {
                    result.info = family_at(split, sample.grid, scan.index);
                    narrative << " At t=" << result.info->t0 << " the complement family of "
                              << d + 1 << " vectors in dimension " << f - d
                              << (result.info->pairwise_obtuse
                                      ? " is pairwise obtuse, the largest such family that"
                                        " dimension admits, so no contradiction arises."
                                      : " is not pairwise obtuse.");
                }
            } else {
                narrative << " Note: the sample itself is not monotone (min increment "
                          << mono.min_increment << ").";
            }
        } catch (const Error& e) {
            narrative << " Informational analysis stopped: " << e.what();
        }
        result.narrative = narrative.str();
        return result;
    }

    // Step 1: pairwise distances must be non-decreasing across the grid.
    const MonotonicityReport mono = monotonicity_report(sample, tol);
    if (!mono.ok) {
        ObstructionCertificate cert;
        cert.kind = CertificateKind::MonotonicityViolation;
        cert.t0 = sample.grid[static_cast<std::size_t>(mono.worst_interval)];
        std::ostringstream narrative;
        narrative << "pair (" << label_to_string(sample.labels[static_cast<std::size_t>(mono.worst_a)])
                  << ", " << label_to_string(sample.labels[static_cast<std::size_t>(mono.worst_b)])
                  << ") contracts by " << -mono.min_increment << " on the grid interval starting at t="
                  << cert.t0 << "; the sampled motion is not an expansion step there.";
        cert.narrative = narrative.str();
        result.certificate = cert;
        result.narrative = cert.narrative;
        return result;
    }

    // Step 2: flap offsets must be a rigid displacement field.
    DisplacementField field;
    field.spec = spec;
    try {
        field = displacement_field(sample, spec, tol);
    } catch (const RigidityError& e) {
        ObstructionCertificate cert;
        cert.kind = CertificateKind::RigidityViolation;
        cert.t0 = e.t;
        cert.narrative = std::string("displacement rigidity fails: ") + e.what();
        result.certificate = cert;
        result.narrative = cert.narrative;
        return result;
    }

    // Step 3: base parts must stay on the face normal lines.
    SplitField split;
    try {
        split = split_displacement(field, d, tol);
    } catch (const OrthogonalityError& e) {
        ObstructionCertificate cert;
        cert.kind = CertificateKind::OrthogonalityViolation;
        cert.t0 = e.t;
        cert.narrative = std::string("normal-line split fails: ") + e.what();
        result.certificate = cert;
        result.narrative = cert.narrative;
        return result;
    }

    // Step 4: find the grid time where every |a_k| is smallest.
    const ScanOutcome scan = scan_min_max_ak(split, sample.grid);
    if (!(scan.max_ak < s - tol)) {
        result.reason = NoObstructionReason::InconclusiveGrid;
        std::ostringstream narrative;
        narrative << "no grid time achieves max_k |a_k| < depth (best " << scan.max_ak
                  << " at t=" << sample.grid[static_cast<std::size_t>(scan.index)]
                  << "); the grid is too coarse to locate the crossing, result inconclusive.";
        result.narrative = narrative.str();
        result.info = family_at(split, sample.grid, scan.index);
        return result;
    }

    // Step 5: the complement family at t0 must be pairwise obtuse, which is
    // impossible in dimension f - d <= d - 1 for d+1 vectors.
    ComplementFamilyInfo info = family_at(split, sample.grid, scan.index);
    bool strictly_obtuse = true;
    for (std::size_t a = 0; a < info.wk.size() && strictly_obtuse; ++a)
        for (std::size_t b = a + 1; b < info.wk.size(); ++b)
            if (!(info.dots[a][b] < -tol)) {
                strictly_obtuse = false;
                break;
            }
    if (!strictly_obtuse) {
        result.reason = NoObstructionReason::NonObtuseAtT0;
        result.info = info;
        std::ostringstream narrative;
        narrative << "at t=" << info.t0
                  << " some complement pair fails strict obtuseness; the sample does not"
                     " reproduce the geometry a continuous expansion would force, result"
                     " inconclusive.";
        result.narrative = narrative.str();
        return result;
    }

    ObstructionCertificate cert;
    cert.kind = CertificateKind::ObtuseContradiction;
    cert.t0 = info.t0;
    cert.ak_values = info.ak;
    cert.wk_vectors = info.wk;
    cert.pairwise_dots = info.dots;
    std::ostringstream narrative;
    narrative << "at t=" << info.t0 << " all " << d + 1
              << " complement vectors are pairwise obtuse in dimension " << f - d
              << ", but a pairwise-obtuse family of that size cannot exist below dimension "
              << d << "; the sample cannot come from a continuous expansion in dimension " << f
              << ".";
    cert.narrative = narrative.str();
    verify_contradiction_certificate(cert, d, f, tol);
    result.certificate = cert;
    result.info = info;
    result.narrative = cert.narrative;
    return result;
}

}  // namespace flapex
