#include "flapex/motion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace flapex {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_time(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw InputError("motion: time " + std::to_string(t) + " outside [0, 1]");
}

// Small dense matrix as flat row-major storage; local helper for Procrustes.
struct Mat {
    int n = 0;
    std::vector<double> a;
    explicit Mat(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
    double& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
    double at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
};

Vec mat_apply(const Mat& m, const Vec& x) {
    Vec y(m.n);
    for (int r = 0; r < m.n; ++r) {
        double acc = 0.0;
        for (int c = 0; c < m.n; ++c) acc += m.at(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

// Orthogonal map (reflections allowed) minimizing sum |R(x_i - cx) + cy - y_i|^2.
// Returned as (R, cx, cy). Uses the eigendecomposition of H^T H with a
// deterministic completion of the left factor on the null space.
struct RigidFit {
    Mat rotation;
    Vec source_center;
    Vec target_center;
    RigidFit(int f) : rotation(f), source_center(f), target_center(f) {}
    Vec apply(const Vec& x) const {
        return mat_apply(rotation, x - source_center) + target_center;
    }
};

RigidFit fit_rigid(const std::vector<Vec>& sources, const std::vector<Vec>& targets) {
    const int f = sources.front().dim();
    const int n = static_cast<int>(sources.size());
    RigidFit fit(f);
    for (int i = 0; i < n; ++i) {
        fit.source_center += sources[static_cast<std::size_t>(i)];
        fit.target_center += targets[static_cast<std::size_t>(i)];
    }
    fit.source_center *= 1.0 / n;
    fit.target_center *= 1.0 / n;

    Mat h(f);
    for (int i = 0; i < n; ++i) {
        const Vec x = sources[static_cast<std::size_t>(i)] - fit.source_center;
        const Vec y = targets[static_cast<std::size_t>(i)] - fit.target_center;
        for (int r = 0; r < f; ++r)
            for (int c = 0; c < f; ++c) h.at(r, c) += y[r] * x[c];
    }

    SymMatrix hth(f);
    for (int r = 0; r < f; ++r)
        for (int c = r; c < f; ++c) {
            double acc = 0.0;
            for (int k = 0; k < f; ++k) acc += h.at(k, r) * h.at(k, c);
            hth.set(r, c, acc);
        }
    const std::vector<EigenPair> eig = sym_eigen(hth, 1e-10);

    const double sigma_max = std::sqrt(std::max(eig.front().value, 0.0));
    std::vector<Vec> left;
    std::vector<Vec> right;
    for (const EigenPair& ep : eig) {
        const double sigma = std::sqrt(std::max(ep.value, 0.0));
        // eigenvalues of H^T H resolve sigma only to sqrt(eps); anything below
        // this is noise and belongs to the completed null space
        if (sigma <= 1e-6 * std::max(sigma_max, 1e-300)) break;
        Vec u(f);
        for (int r = 0; r < f; ++r) {
            double acc = 0.0;
            for (int c = 0; c < f; ++c) acc += h.at(r, c) * ep.vector[c];
            u[r] = acc / sigma;
        }
        for (const Vec& prev : left) u -= dot(u, prev) * prev;
        const double len = norm(u);
        if (len <= 0.5) break;  // remaining directions are numerically rank-deficient
        u *= 1.0 / len;
        left.push_back(u);
        right.push_back(ep.vector);
    }
    // Deterministic completion to full orthonormal bases.
    auto complete = [f](std::vector<Vec>& basis) {
        for (int e = 0; e < f && static_cast<int>(basis.size()) < f; ++e) {
            Vec w(f);
            w[e] = 1.0;
            for (int pass = 0; pass < 2; ++pass)
                for (const Vec& b : basis) w -= dot(w, b) * b;
            const double len = norm(w);
            if (len > 1e-8) basis.push_back((1.0 / len) * w);
        }
    };
    complete(left);
    complete(right);
    if (left.size() != right.size() || static_cast<int>(left.size()) != f)
        throw ConsistencyError("fit_rigid: basis completion failed");

    for (std::size_t k = 0; k < left.size(); ++k)
        for (int r = 0; r < f; ++r)
            for (int c = 0; c < f; ++c)
                fit.rotation.at(r, c) += left[k][r] * right[k][c];
    return fit;
}

}  // namespace

Vec Motion::eval(int i, double t) const {
    if (i < 0 || i >= size()) throw InputError("Motion::eval: point index out of range");
    require_time(t);
    return fn(i, t);
}

Motion alexander_motion(const Configuration& p, const Configuration& q) {
    if (p.labels != q.labels)
        throw ConfigurationError("alexander_motion: configurations carry different labels");
    if (p.dim != q.dim)
        throw ConfigurationError("alexander_motion: configurations live in different dimensions");
    const int d = p.dim;

    Motion motion;
    motion.kind = Motion::Kind::Alexander;
    motion.ambient_dim = 2 * d;
    motion.labels = p.labels;
    motion.fn = [points_p = p.points, points_q = q.points, d](int i, double t) {
        const Vec& a = points_p[static_cast<std::size_t>(i)];
        const Vec& b = points_q[static_cast<std::size_t>(i)];
        // endpoint frames are the included configurations, exactly
        if (t == 0.0) return include_vector(a, 2 * d);
        if (t == 1.0) return include_vector(b, 2 * d);
        const double c = std::cos(kPi * t);
        const double s = std::sin(kPi * t);
        Vec out(2 * d);
        for (int k = 0; k < d; ++k) {
            const double mid = 0.5 * (a[k] + b[k]);
            const double half = 0.5 * (a[k] - b[k]);
            out[k] = mid + c * half;
            out[d + k] = s * half;
        }
        return out;
    };
    return motion;
}

MotionSample sample_motion(const Motion& motion, int subdivisions) {
    if (subdivisions < 1) throw InputError("sample_motion: need at least one subdivision");
    MotionSample sample;
    sample.ambient_dim = motion.ambient_dim;
    sample.labels = motion.labels;
    sample.grid.reserve(static_cast<std::size_t>(subdivisions) + 1);
    sample.frames.reserve(static_cast<std::size_t>(subdivisions) + 1);
    for (int m = 0; m <= subdivisions; ++m) {
        const double t = static_cast<double>(m) / subdivisions;
        sample.grid.push_back(t);
        std::vector<Vec> frame;
        frame.reserve(motion.labels.size());
        for (int i = 0; i < motion.size(); ++i) frame.push_back(motion.eval(i, t));
        sample.frames.push_back(std::move(frame));
    }
    return sample;
}

Motion motion_from_sample(MotionSample sample) {
    Motion motion;
    motion.kind = Motion::Kind::External;
    motion.ambient_dim = sample.ambient_dim;
    motion.labels = sample.labels;
    motion.fn = [sample = std::move(sample)](int i, double t) {
        for (std::size_t m = 0; m < sample.grid.size(); ++m)
            if (std::abs(sample.grid[m] - t) <= 1e-12)
                return sample.frames[m][static_cast<std::size_t>(i)];
        throw SamplingError("external motion: time " + std::to_string(t) +
                            " not on the stored grid");
    };
    return motion;
}

MonotonicityReport monotonicity_report(const MotionSample& sample, double tol) {
    if (tol < 0.0) throw InputError("monotonicity_report: tolerance must be nonnegative");
    if (sample.frame_count() != static_cast<int>(sample.grid.size()))
        throw InputError("monotonicity_report: grid and frames out of sync");
    const int n = sample.size();
    const int frames = sample.frame_count();

    MonotonicityReport report;
    bool first = true;
    std::vector<double> prev(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> cur(prev.size(), 0.0);
    for (int m = 0; m < frames; ++m) {
        const std::vector<Vec>& frame = sample.frames[static_cast<std::size_t>(m)];
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                cur[static_cast<std::size_t>(a) * n + b] =
                    distance(frame[static_cast<std::size_t>(a)],
                             frame[static_cast<std::size_t>(b)]);
        if (m > 0) {
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    const double inc = cur[static_cast<std::size_t>(a) * n + b] -
                                       prev[static_cast<std::size_t>(a) * n + b];
                    if (first || inc < report.min_increment) {
                        report.min_increment = inc;
                        report.worst_a = a;
                        report.worst_b = b;
                        report.worst_interval = m - 1;
                        first = false;
                    }
                }
            }
        }
        std::swap(prev, cur);
    }
    report.ok = first || report.min_increment >= -tol;
    return report;
}

DisplacementField displacement_field(const MotionSample& sample, const FlapSpec& spec,
                                     double tol) {
    if (tol <= 0.0) throw InputError("displacement_field: tolerance must be positive");
    const int d = spec.simplex.dim;
    if (sample.labels != canonical_labels(d))
        throw ConfigurationError("displacement_field: sample labels do not match the flapped pair");
    const int f = sample.ambient_dim;
    if (f < d) throw DimensionError("displacement_field: ambient dimension below base dimension");
    const double s = spec.depth;
    const int frames = sample.frame_count();

    std::vector<Vec> targets;  // included simplex vertices
    targets.reserve(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i)
        targets.push_back(include_vector(spec.simplex.vertices[static_cast<std::size_t>(i)], f));

    // Vertex gauge: either the vertices already sit at their included
    // positions, or every frame is aligned onto them rigidly.
    double stationary = 0.0;
    for (int m = 0; m < frames; ++m)
        for (int i = 0; i <= d; ++i)
            stationary = std::max(
                stationary, distance(sample.frames[static_cast<std::size_t>(m)]
                                                  [static_cast<std::size_t>(i)],
                                     targets[static_cast<std::size_t>(i)]));

    std::vector<std::vector<Vec>> frames_aligned;
    double alignment_residual = 0.0;
    const std::vector<std::vector<Vec>>* frames_ptr = &sample.frames;
    if (stationary > tol) {
        frames_aligned.reserve(static_cast<std::size_t>(frames));
        for (int m = 0; m < frames; ++m) {
            const std::vector<Vec>& frame = sample.frames[static_cast<std::size_t>(m)];
            std::vector<Vec> vertex_points(frame.begin(), frame.begin() + d + 1);
            const RigidFit fit = fit_rigid(vertex_points, targets);
            std::vector<Vec> aligned;
            aligned.reserve(frame.size());
            for (const Vec& x : frame) aligned.push_back(fit.apply(x));
            for (int i = 0; i <= d; ++i)
                alignment_residual = std::max(
                    alignment_residual, distance(aligned[static_cast<std::size_t>(i)],
                                                 targets[static_cast<std::size_t>(i)]));
            frames_aligned.push_back(std::move(aligned));
        }
        if (alignment_residual > tol)
            throw RigidityError(
                "displacement_field: simplex vertices are not rigid (post-alignment residual " +
                    std::to_string(alignment_residual) + ")",
                alignment_residual, 0.0, -1);
        frames_ptr = &frames_aligned;
    }
    const std::vector<std::vector<Vec>>& pts = *frames_ptr;

    DisplacementField field;
    field.spec = spec;
    field.grid = sample.grid;
    field.alignment_residual = alignment_residual;
    field.dk.assign(static_cast<std::size_t>(d) + 1, {});

    for (int k = 0; k <= d; ++k) {
        field.dk[static_cast<std::size_t>(k)].reserve(static_cast<std::size_t>(frames));
        for (int m = 0; m < frames; ++m) {
            const double t = sample.grid[static_cast<std::size_t>(m)];
            const std::vector<Vec>& frame = pts[static_cast<std::size_t>(m)];
            Vec mean(f);
            std::vector<Vec> candidates;
            candidates.reserve(static_cast<std::size_t>(d));
            for (int j = 0; j <= d; ++j) {
                if (j == k) continue;
                const int idx = canonical_index({PointLabel::Kind::Flap, k, j}, d);
                Vec cand = frame[static_cast<std::size_t>(idx)] -
                           targets[static_cast<std::size_t>(j)];
                mean += cand;
                candidates.push_back(std::move(cand));
            }
            mean *= 1.0 / static_cast<double>(candidates.size());
            for (std::size_t a = 0; a < candidates.size(); ++a)
                for (std::size_t b = a + 1; b < candidates.size(); ++b) {
                    const double mismatch = distance(candidates[a], candidates[b]);
                    field.consistency_residual = std::max(field.consistency_residual, mismatch);
                    if (mismatch > tol)
                        throw RigidityError(
                            "displacement_field: face " + std::to_string(k) +
                                " flap offsets disagree by " + std::to_string(mismatch) +
                                " at t=" + std::to_string(t),
                            mismatch, t, k);
                }

            const double norm_dev = std::abs(norm(mean) - s);
            if (norm_dev > tol)
                throw RigidityError("displacement_field: face " + std::to_string(k) +
                                        " displacement norm deviates from depth by " +
                                        std::to_string(norm_dev) + " at t=" + std::to_string(t),
                                    norm_dev, t, k);
            for (int i = 0; i <= d; ++i) {
                if (i == k) continue;
                for (int j = i + 1; j <= d; ++j) {
                    if (j == k) continue;
                    const Vec edge = targets[static_cast<std::size_t>(i)] -
                                     targets[static_cast<std::size_t>(j)];
                    const double tilt = std::abs(dot(mean, edge));
                    if (tilt > tol * (1.0 + s * norm(edge)))
                        throw RigidityError("displacement_field: face " + std::to_string(k) +
                                                " displacement tilts into the face by " +
                                                std::to_string(tilt) + " at t=" +
                                                std::to_string(t),
                                            tilt, t, k);
                }
            }
            field.dk[static_cast<std::size_t>(k)].push_back(std::move(mean));
        }
    }
    return field;
}

SplitField split_displacement(const DisplacementField& field, int d, double tol) {
    if (tol <= 0.0) throw InputError("split_displacement: tolerance must be positive");
    if (d != field.spec.simplex.dim)
        throw InputError("split_displacement: split dimension differs from the flap spec's base dimension");
    if (field.dk.empty() || field.dk.front().empty())
        throw InputError("split_displacement: empty field");
    const int f = field.dk.front().front().dim();
    if (f <= d) throw DimensionError("split_displacement: ambient dimension must exceed d");

    // Inward unit normal of each face: the axis the base part must follow.
    std::vector<Vec> axes;
    axes.reserve(field.dk.size());
    for (int k = 0; k < static_cast<int>(field.dk.size()); ++k)
        axes.push_back(-outward_normal(field.spec.simplex, k));

    SplitField split;
    split.ak.assign(field.dk.size(), {});
    split.wk.assign(field.dk.size(), {});
    for (std::size_t k = 0; k < field.dk.size(); ++k) {
        split.ak[k].reserve(field.dk[k].size());
        split.wk[k].reserve(field.dk[k].size());
        for (std::size_t m = 0; m < field.dk[k].size(); ++m) {
            auto [base, rest] = split_vector(field.dk[k][m], d);
            const double a = dot(base, axes[k]);
            const double off = norm(base - a * axes[k]);
            split.max_off_line = std::max(split.max_off_line, off);
            if (off > tol)
                throw OrthogonalityError(
                    "split_displacement: base part of face " + std::to_string(k) +
                        " leaves its normal line by " + std::to_string(off) + " at t=" +
                        std::to_string(field.grid[m]),
                    off, field.grid[m], static_cast<int>(k));
            split.ak[k].push_back(a);
            split.wk[k].push_back(std::move(rest));
        }
    }
    return split;
}

MotionSample truncate_sample(const MotionSample& sample, int f) {
    if (f < 1 || f > sample.ambient_dim)
        throw DimensionError("truncate_sample: target dimension out of range");
    MotionSample out;
    out.ambient_dim = f;
    out.grid = sample.grid;
    out.labels = sample.labels;
    out.frames.reserve(sample.frames.size());
    for (const std::vector<Vec>& frame : sample.frames) {
        std::vector<Vec> cut;
        cut.reserve(frame.size());
        for (const Vec& x : frame) {
            Vec y(f);
            for (int c = 0; c < f; ++c) y[c] = x[c];
            cut.push_back(std::move(y));
        }
        out.frames.push_back(std::move(cut));
    }
    return out;
}

Configuration frame_configuration(const MotionSample& sample, int m) {
    if (m < 0 || m >= sample.frame_count())
        throw InputError("frame_configuration: frame index out of range");
    Configuration c;
    c.dim = sample.ambient_dim;
    c.labels = sample.labels;
    c.points = sample.frames[static_cast<std::size_t>(m)];
    return c;
}

Configuration motion_frame(const Motion& motion, double t) {
    require_time(t);
    Configuration c;
    c.dim = motion.ambient_dim;
    c.labels = motion.labels;
    c.points.reserve(motion.labels.size());
    for (int i = 0; i < motion.size(); ++i) c.points.push_back(motion.eval(i, t));
    return c;
}

std::vector<double> zero_crossings(const std::vector<double>& grid,
                                   const std::vector<double>& values) {
    if (grid.size() != values.size())
        throw InputError("zero_crossings: grid and values differ in length");
    std::vector<double> zeros;
    for (std::size_t m = 0; m + 1 < values.size(); ++m) {
        const double a = values[m];
        const double b = values[m + 1];
        if (a == 0.0) zeros.push_back(grid[m]);
        if (a * b < 0.0)
            zeros.push_back(grid[m] + (grid[m + 1] - grid[m]) * (-a) / (b - a));
    }
    if (!values.empty() && values.back() == 0.0) zeros.push_back(grid.back());
    return zeros;
}

}  // namespace flapex
