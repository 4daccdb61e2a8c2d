#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "flapex/flaps.hpp"
#include "flapex/linalg.hpp"

namespace flapex {

/// Family of trajectories over t in [0, 1] for a labeled point set.
struct Motion {
    enum class Kind { Alexander, Waypoint, External };

    Kind kind = Kind::External;
    int ambient_dim = 0;
    std::vector<PointLabel> labels;
    std::function<Vec(int, double)> fn;

    int size() const { return static_cast<int>(labels.size()); }

    /// Trajectory of point i at time t in [0, 1].
    Vec eval(int i, double t) const;
};

/// Motion discretized on a grid t_0 = 0 < ... < t_M = 1, with one frame of
/// shared-label points per grid time.
struct MotionSample {
    int ambient_dim = 0;
    std::vector<double> grid;
    std::vector<PointLabel> labels;
    std::vector<std::vector<Vec>> frames;  // frames[m][point]

    int frame_count() const { return static_cast<int>(frames.size()); }
    int size() const { return static_cast<int>(labels.size()); }
};

struct MonotonicityReport {
    bool ok = true;
    double min_increment = 0.0;
    int worst_a = -1;
    int worst_b = -1;
    int worst_interval = -1;  // increment from grid[m] to grid[m+1]
};

/// Common offset of face-k flap points from their face vertices, per face
/// and grid time. Produced only for samples that are rigid where the flapped
/// pair demands it.
struct DisplacementField {
    FlapSpec spec;
    std::vector<double> grid;
    std::vector<std::vector<Vec>> dk;  // dk[k][m], dimension = ambient dim
    double consistency_residual = 0.0;
    double alignment_residual = 0.0;
};

/// Base/complement split of a displacement field: dk = (ak * axis_k, wk)
/// with axis_k the inward unit normal of face k.
struct SplitField {
    std::vector<std::vector<double>> ak;  // ak[k][m]
    std::vector<std::vector<Vec>> wk;     // wk[k][m], dimension f - d
    double max_off_line = 0.0;
};

/// The half-turn realization of an expansion in twice the dimension:
/// f_i(t) = ((p_i+q_i)/2 + cos(pi t)(p_i-q_i)/2, sin(pi t)(p_i-q_i)/2).
/// Points with p_i = q_i stay fixed for all t; endpoints are exact.
Motion alexander_motion(const Configuration& p, const Configuration& q);

/// Uniform grid t_m = m/M, frames built by eval. M >= 1.
MotionSample sample_motion(const Motion& motion, int subdivisions);

/// Wraps a sample as an External-kind motion; eval is defined only at the
/// stored grid times (no interpolation), so resampling on a finer grid fails.
Motion motion_from_sample(MotionSample sample);

/// ok iff every pairwise distance increases by at least -tol across every
/// adjacent grid interval; reports the minimal increment and where it occurs.
MonotonicityReport monotonicity_report(const MotionSample& sample, double tol);

/// Extracts d_k(t) from a sample of the flapped pair's motion. Vertices must
/// be stationary at their included positions within tol; otherwise each frame
/// is first aligned by the orthogonal Procrustes fit of its vertex points.
/// Throws RigidityError when flap offsets disagree across a face, change
/// norm, or tilt into the face.
DisplacementField displacement_field(const MotionSample& sample, const FlapSpec& spec,
                                     double tol);

/// Splits each d_k at coordinate d; the base part must lie on the face-k
/// normal line within tol, else throws OrthogonalityError.
SplitField split_displacement(const DisplacementField& field, int d, double tol = 1e-9);

/// Drops trailing coordinates of every frame down to dimension f.
MotionSample truncate_sample(const MotionSample& sample, int f);

/// Frame m as a standalone Configuration.
Configuration frame_configuration(const MotionSample& sample, int m);

/// Configuration of all trajectories of a motion at time t.
Configuration motion_frame(const Motion& motion, double t);

/// Linearly interpolated zeros of a sampled scalar function.
std::vector<double> zero_crossings(const std::vector<double>& grid,
                                   const std::vector<double>& values);

}  // namespace flapex
