#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flapex/motion.hpp"

namespace flapex {

/// Piecewise-linear candidate motion: endpoints pinned at the included
/// configurations, W free interior waypoints per point on uniform knots.
struct WaypointMotion {
    int ambient_dim = 0;
    int waypoint_count = 0;
    std::vector<PointLabel> labels;
    std::vector<Vec> start;                   // included p_i
    std::vector<Vec> finish;                  // included q_i
    std::vector<std::vector<Vec>> waypoints;  // [point][w], w = 0..W-1 at knots 1..W

    int size() const { return static_cast<int>(labels.size()); }
    double knot(int k) const { return static_cast<double>(k) / (waypoint_count + 1); }

    Vec position_at_knot(int i, int k) const;
    Vec eval(int i, double t) const;
    Motion to_motion() const;

    /// Frames exactly at the knots.
    MotionSample sample_knots() const;

    /// Frames on the factor-times refined uniform grid (knots included).
    MotionSample sample_refined(int factor) const;
};

/// Straight-line interpolation between the included endpoints.
WaypointMotion straight_line_motion(const Configuration& p, const Configuration& q,
                                    int ambient_dim, int waypoint_count);

struct SearchOptions {
    int ambient_dim = 0;
    int waypoint_count = 8;
    int budget = 2000;    // gradient iterations per restart
    int restarts = 1;
    std::uint64_t seed = 0;
    int refine_factor = 4;       // penalty grid refinement for the objective
    double fd_step = 1e-6;       // central-difference step
    double perturb_scale = -1.0; // < 0: max endpoint displacement / 20
    std::optional<WaypointMotion> init;  // restart 0 starts here unperturbed
};

struct SearchResult {
    double best_residual = 0.0;     // knot-grid violation residual of the best motion
    double refined_residual = 0.0;  // minimized objective at the best motion
    long long iterations = 0;       // iterations spent by the best restart
    std::uint64_t seed = 0;
    WaypointMotion motion;
    std::vector<std::pair<int, double>> history;  // best restart: (iteration, objective)
    std::vector<double> restart_residuals;        // knot-grid residual per restart
    std::vector<double> restart_objectives;       // refined objective per restart
    int best_restart = 0;
};

/// Sum over pairs and adjacent grid intervals of max(0, -increment)^2;
/// zero iff every sampled pairwise distance is non-decreasing.
double violation_residual(const MotionSample& sample);

/// Local search for a pairwise-non-decreasing motion from p to q in the given
/// ambient dimension: finite-difference gradient descent (central differences)
/// with backtracking line search and seeded random restarts over the waypoint
/// coordinates. Deterministic for fixed inputs, seed, and budget. Evidence
/// only: a positive residual never proves nonexistence.
SearchResult optimize_expansion_path(const Configuration& p, const Configuration& q,
                                     const SearchOptions& options);

}  // namespace flapex
