#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "flapex/search.hpp"

namespace flapex::detail {

// Monotonicity penalty of a waypoint motion on the refined grid, with
// incremental re-evaluation under single-coordinate perturbations. The
// decision vector is the flattened waypoint block [point][waypoint][coord].
// Used by the optimizer's central-difference gradients; perturbed() must
// agree with a full rebuild at the perturbed point (covered by tests).
class RefinedObjective {
public:
    RefinedObjective(const WaypointMotion& shape, int factor)
        : n_(shape.size()),
          f_(shape.ambient_dim),
          wcount_(shape.waypoint_count),
          factor_(factor),
          segments_(shape.waypoint_count + 1),
          steps_(factor * (shape.waypoint_count + 1)),
          shape_(shape) {
        pos_.assign(static_cast<std::size_t>(n_) * (steps_ + 1) * f_, 0.0);
        const int pair_count = n_ * (n_ - 1) / 2;
        dist_.assign(static_cast<std::size_t>(pair_count) * (steps_ + 1), 0.0);
        pen_.assign(static_cast<std::size_t>(pair_count) * steps_, 0.0);
        pair_of_.assign(static_cast<std::size_t>(n_) * n_, -1);
        int pid = 0;
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b) {
                pair_of_[static_cast<std::size_t>(a) * n_ + b] = pid;
                pair_of_[static_cast<std::size_t>(b) * n_ + a] = pid;
                ++pid;
            }
    }

    int variable_count() const { return n_ * wcount_ * f_; }

    void set_x(const std::vector<double>& x) {
        x_ = x;
        for (int i = 0; i < n_; ++i)
            for (int m = 0; m <= steps_; ++m) {
                const int a = std::min(m / factor_, segments_ - 1);
                const double sigma = static_cast<double>(m - a * factor_) / factor_;
                for (int c = 0; c < f_; ++c)
                    pos_[pos_idx(i, m, c)] =
                        (1.0 - sigma) * knot_coord(i, a, c) + sigma * knot_coord(i, a + 1, c);
            }
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b) {
                const int pid = pair_of_[static_cast<std::size_t>(a) * n_ + b];
                for (int m = 0; m <= steps_; ++m)
                    dist_[dist_idx(pid, m)] = point_distance(a, b, m);
            }
        total_ = 0.0;
        const int pair_count = n_ * (n_ - 1) / 2;
        for (int pid = 0; pid < pair_count; ++pid)
            for (int v = 0; v < steps_; ++v) {
                const double p = penalty(dist_[dist_idx(pid, v)], dist_[dist_idx(pid, v + 1)]);
                pen_[pen_idx(pid, v)] = p;
                total_ += p;
            }
    }

    double total() const { return total_; }

    // Objective with coordinate idx moved by delta; internal state is restored.
    double perturbed(int idx, double delta) {
        const int i = idx / (wcount_ * f_);
        const int rem = idx % (wcount_ * f_);
        const int w = rem / f_;
        const int c = rem % f_;
        const int k = w + 1;  // knot index of this waypoint

        const int m_lo = std::max(0, factor_ * (k - 1) + 1);
        const int m_hi = std::min(steps_, factor_ * (k + 1) - 1);
        const int v_lo = std::max(0, m_lo - 1);
        const int v_hi = std::min(steps_ - 1, m_hi);

        saved_pos_.clear();
        saved_dist_.clear();
        saved_pen_.clear();
        double result = total_;

        for (int m = m_lo; m <= m_hi; ++m) {
            const int a = std::min(m / factor_, segments_ - 1);
            const double sigma = static_cast<double>(m - a * factor_) / factor_;
            double weight = 0.0;
            if (a == k) weight += 1.0 - sigma;
            if (a + 1 == k) weight += sigma;
            if (weight == 0.0) continue;
            const std::size_t pi = pos_idx(i, m, c);
            saved_pos_.push_back({pi, pos_[pi]});
            pos_[pi] += delta * weight;
        }
        for (int j = 0; j < n_; ++j) {
            if (j == i) continue;
            const int pid = pair_of_[static_cast<std::size_t>(i) * n_ + j];
            for (int m = m_lo; m <= m_hi; ++m) {
                const std::size_t di = dist_idx(pid, m);
                saved_dist_.push_back({di, dist_[di]});
                dist_[di] = point_distance(i, j, m);
            }
            for (int v = v_lo; v <= v_hi; ++v) {
                const std::size_t qi = pen_idx(pid, v);
                const double fresh = penalty(dist_[dist_idx(pid, v)], dist_[dist_idx(pid, v + 1)]);
                saved_pen_.push_back({qi, pen_[qi]});
                result += fresh - pen_[qi];
                pen_[qi] = fresh;
            }
        }

        for (auto it = saved_pen_.rbegin(); it != saved_pen_.rend(); ++it)
            pen_[it->first] = it->second;
        for (auto it = saved_dist_.rbegin(); it != saved_dist_.rend(); ++it)
            dist_[it->first] = it->second;
        for (auto it = saved_pos_.rbegin(); it != saved_pos_.rend(); ++it)
            pos_[it->first] = it->second;
        return result;
    }

private:
    static double penalty(double before, double after) {
        const double inc = after - before;
        return inc < 0.0 ? inc * inc : 0.0;
    }

    double knot_coord(int i, int k, int c) const {
        if (k == 0) return shape_.start[static_cast<std::size_t>(i)][c];
        if (k == segments_) return shape_.finish[static_cast<std::size_t>(i)][c];
        return x_[static_cast<std::size_t>((i * wcount_ + (k - 1)) * f_ + c)];
    }

    double point_distance(int a, int b, int m) const {
        double acc = 0.0;
        const std::size_t pa = pos_idx(a, m, 0);
        const std::size_t pb = pos_idx(b, m, 0);
        for (int c = 0; c < f_; ++c) {
            const double diff = pos_[pa + static_cast<std::size_t>(c)] -
                                pos_[pb + static_cast<std::size_t>(c)];
            acc += diff * diff;
        }
        return std::sqrt(acc);
    }

    std::size_t pos_idx(int i, int m, int c) const {
        return (static_cast<std::size_t>(i) * (steps_ + 1) + m) * f_ + c;
    }
    std::size_t dist_idx(int pid, int m) const {
        return static_cast<std::size_t>(pid) * (steps_ + 1) + m;
    }
    std::size_t pen_idx(int pid, int v) const {
        return static_cast<std::size_t>(pid) * steps_ + v;
    }

    int n_;
    int f_;
    int wcount_;
    int factor_;
    int segments_;
    int steps_;
    WaypointMotion shape_;  // endpoints and layout; waypoint coords live in x_
    std::vector<double> x_;
    std::vector<double> pos_;
    std::vector<double> dist_;
    std::vector<double> pen_;
    std::vector<int> pair_of_;
    double total_ = 0.0;
    std::vector<std::pair<std::size_t, double>> saved_pos_;
    std::vector<std::pair<std::size_t, double>> saved_dist_;
    std::vector<std::pair<std::size_t, double>> saved_pen_;
};

// Decision-vector helpers shared by the optimizer and its tests.
inline std::vector<double> flatten_waypoints(const WaypointMotion& motion) {
    std::vector<double> x;
    x.reserve(static_cast<std::size_t>(motion.size()) * motion.waypoint_count *
              motion.ambient_dim);
    for (const auto& rows : motion.waypoints)
        for (const Vec& p : rows)
            for (double v : p.c) x.push_back(v);
    return x;
}

inline void unflatten_waypoints(WaypointMotion& motion, const std::vector<double>& x) {
    std::size_t idx = 0;
    for (auto& rows : motion.waypoints)
        for (Vec& p : rows)
            for (double& v : p.c) v = x[idx++];
}

}  // namespace flapex::detail
