#include "flapex/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "flapex/detail/refined_objective.hpp"

namespace flapex {

Vec WaypointMotion::position_at_knot(int i, int k) const {
    if (k == 0) return start[static_cast<std::size_t>(i)];
    if (k == waypoint_count + 1) return finish[static_cast<std::size_t>(i)];
    return waypoints[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - 1)];
}

Vec WaypointMotion::eval(int i, double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw InputError("WaypointMotion::eval: time outside [0, 1]");
    const int segments = waypoint_count + 1;
    int a = static_cast<int>(t * segments);
    if (a >= segments) a = segments - 1;
    const double sigma = t * segments - a;
    const Vec pa = position_at_knot(i, a);
    const Vec pb = position_at_knot(i, a + 1);
    Vec out(ambient_dim);
    for (int c = 0; c < ambient_dim; ++c) out[c] = (1.0 - sigma) * pa[c] + sigma * pb[c];
    return out;
}

Motion WaypointMotion::to_motion() const {
    Motion motion;
    motion.kind = Motion::Kind::Waypoint;
    motion.ambient_dim = ambient_dim;
    motion.labels = labels;
    motion.fn = [copy = *this](int i, double t) { return copy.eval(i, t); };
    return motion;
}

MotionSample WaypointMotion::sample_knots() const {
    MotionSample sample;
    sample.ambient_dim = ambient_dim;
    sample.labels = labels;
    const int knots = waypoint_count + 2;
    sample.grid.reserve(static_cast<std::size_t>(knots));
    sample.frames.reserve(static_cast<std::size_t>(knots));
    for (int k = 0; k < knots; ++k) {
        sample.grid.push_back(knot(k));
        std::vector<Vec> frame;
        frame.reserve(labels.size());
        for (int i = 0; i < size(); ++i) frame.push_back(position_at_knot(i, k));
        sample.frames.push_back(std::move(frame));
    }
    sample.grid.front() = 0.0;
    sample.grid.back() = 1.0;
    return sample;
}

MotionSample WaypointMotion::sample_refined(int factor) const {
    if (factor < 1) throw InputError("WaypointMotion::sample_refined: factor must be positive");
    MotionSample sample;
    sample.ambient_dim = ambient_dim;
    sample.labels = labels;
    const int segments = waypoint_count + 1;
    const int steps = factor * segments;
    sample.grid.reserve(static_cast<std::size_t>(steps) + 1);
    sample.frames.reserve(static_cast<std::size_t>(steps) + 1);
    for (int m = 0; m <= steps; ++m) {
        sample.grid.push_back(static_cast<double>(m) / steps);
        const int a = std::min(m / factor, segments - 1);
        const double sigma = static_cast<double>(m - a * factor) / factor;
        std::vector<Vec> frame;
        frame.reserve(labels.size());
        for (int i = 0; i < size(); ++i) {
            const Vec pa = position_at_knot(i, a);
            const Vec pb = position_at_knot(i, a + 1);
            Vec x(ambient_dim);
            for (int c = 0; c < ambient_dim; ++c) x[c] = (1.0 - sigma) * pa[c] + sigma * pb[c];
            frame.push_back(std::move(x));
        }
        sample.frames.push_back(std::move(frame));
    }
    return sample;
}

WaypointMotion straight_line_motion(const Configuration& p, const Configuration& q,
                                    int ambient_dim, int waypoint_count) {
    if (p.labels != q.labels)
        throw ConfigurationError("straight_line_motion: configurations carry different labels");
    if (p.dim != q.dim)
        throw ConfigurationError("straight_line_motion: configurations live in different dimensions");
    if (ambient_dim < p.dim)
        throw DimensionError("straight_line_motion: ambient dimension below the configurations");
    if (waypoint_count < 1) throw InputError("straight_line_motion: need at least one waypoint");

    WaypointMotion motion;
    motion.ambient_dim = ambient_dim;
    motion.waypoint_count = waypoint_count;
    motion.labels = p.labels;
    const int n = static_cast<int>(p.labels.size());
    motion.start.reserve(static_cast<std::size_t>(n));
    motion.finish.reserve(static_cast<std::size_t>(n));
    motion.waypoints.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < n; ++i) {
        const Vec a = include_vector(p.points[static_cast<std::size_t>(i)], ambient_dim);
        const Vec b = include_vector(q.points[static_cast<std::size_t>(i)], ambient_dim);
        motion.start.push_back(a);
        motion.finish.push_back(b);
        auto& rows = motion.waypoints[static_cast<std::size_t>(i)];
        rows.reserve(static_cast<std::size_t>(waypoint_count));
        for (int w = 1; w <= waypoint_count; ++w) {
            const double sigma = static_cast<double>(w) / (waypoint_count + 1);
            Vec x(ambient_dim);
            for (int c = 0; c < ambient_dim; ++c) x[c] = (1.0 - sigma) * a[c] + sigma * b[c];
            rows.push_back(std::move(x));
        }
    }
    return motion;
}

double violation_residual(const MotionSample& sample) {
    const int n = sample.size();
    const int frames = sample.frame_count();
    if (frames < 2) return 0.0;
    double total = 0.0;
    std::vector<double> prev(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> cur(prev.size(), 0.0);
    for (int m = 0; m < frames; ++m) {
        const std::vector<Vec>& frame = sample.frames[static_cast<std::size_t>(m)];
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                cur[static_cast<std::size_t>(a) * n + b] =
                    distance(frame[static_cast<std::size_t>(a)],
                             frame[static_cast<std::size_t>(b)]);
        if (m > 0)
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    const double inc = cur[static_cast<std::size_t>(a) * n + b] -
                                       prev[static_cast<std::size_t>(a) * n + b];
                    if (inc < 0.0) total += inc * inc;
                }
        std::swap(prev, cur);
    }
    return total;
}

namespace {

// Uniform double in [-1, 1) from the standardized engine bits only; results
// must reproduce bit for bit across standard-library implementations.
double uniform_pm1(std::mt19937_64& eng) {
    return 2.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 1.0;
}

struct RestartOutcome {
    double objective = 0.0;
    double knot_residual = 0.0;
    long long iterations = 0;
    std::vector<double> x;
    std::vector<std::pair<int, double>> history;
};

RestartOutcome run_restart(const WaypointMotion& base, const std::vector<double>& x0,
                           const SearchOptions& options) {
    detail::RefinedObjective objective(base, options.refine_factor);
    std::vector<double> x = x0;
    objective.set_x(x);
    double value = objective.total();

    RestartOutcome outcome;
    outcome.history.emplace_back(0, value);

    const int nvars = objective.variable_count();
    std::vector<double> gradient(static_cast<std::size_t>(nvars), 0.0);
    std::vector<double> trial(static_cast<std::size_t>(nvars), 0.0);
    const double h = options.fd_step;
    double step = 1.0;

    for (int it = 1; it <= options.budget; ++it) {
        outcome.iterations = it;
        if (value == 0.0) break;

        double gnorm2 = 0.0;
        for (int k = 0; k < nvars; ++k) {
            const double up = objective.perturbed(k, h);
            const double down = objective.perturbed(k, -h);
            const double g = (up - down) / (2.0 * h);
            gradient[static_cast<std::size_t>(k)] = g;
            gnorm2 += g * g;
        }
        if (gnorm2 == 0.0) break;

        bool accepted = false;
        double alpha = step;
        for (int half = 0; half < 40; ++half) {
            for (int k = 0; k < nvars; ++k)
                trial[static_cast<std::size_t>(k)] =
                    x[static_cast<std::size_t>(k)] - alpha * gradient[static_cast<std::size_t>(k)];
            objective.set_x(trial);
            const double candidate = objective.total();
            if (candidate <= value - 1e-4 * alpha * gnorm2) {
                x.swap(trial);
                value = candidate;
                step = alpha * 2.0;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            objective.set_x(x);  // restore caches after failed trials
            break;
        }
        outcome.history.emplace_back(it, value);
    }

    outcome.objective = value;
    outcome.x = std::move(x);

    WaypointMotion motion = base;
    detail::unflatten_waypoints(motion, outcome.x);
    outcome.knot_residual = violation_residual(motion.sample_knots());
    return outcome;
}

}  // namespace

SearchResult optimize_expansion_path(const Configuration& p, const Configuration& q,
                                     const SearchOptions& options) {
    if (options.budget <= 0) throw InputError("optimize_expansion_path: budget must be positive");
    if (options.restarts < 1) throw InputError("optimize_expansion_path: need at least one restart");
    if (p.labels != q.labels)
        throw ConfigurationError("optimize_expansion_path: configurations carry different labels");
    if (options.ambient_dim < p.dim)
        throw DimensionError("optimize_expansion_path: ambient dimension below the configurations");

    WaypointMotion base =
        straight_line_motion(p, q, options.ambient_dim, options.waypoint_count);
    if (options.init) {
        const WaypointMotion& init = *options.init;
        if (init.labels != base.labels || init.ambient_dim != base.ambient_dim ||
            init.waypoint_count != base.waypoint_count)
            throw ConfigurationError("optimize_expansion_path: init motion has a different layout");
        base.waypoints = init.waypoints;
    }

    double scale = options.perturb_scale;
    if (scale < 0.0) {
        double max_move = 0.0;
        for (int i = 0; i < base.size(); ++i)
            max_move = std::max(max_move, distance(base.start[static_cast<std::size_t>(i)],
                                                   base.finish[static_cast<std::size_t>(i)]));
        scale = max_move / 20.0;
    }

    const std::vector<double> x_base = detail::flatten_waypoints(base);

    SearchResult result;
    result.seed = options.seed;
    result.restart_residuals.reserve(static_cast<std::size_t>(options.restarts));
    result.restart_objectives.reserve(static_cast<std::size_t>(options.restarts));

    RestartOutcome best;
    int best_index = -1;
    for (int r = 0; r < options.restarts; ++r) {
        std::vector<double> x0 = x_base;
        const bool perturb = !(options.init && r == 0);
        if (perturb) {
            std::mt19937_64 eng(options.seed + static_cast<std::uint64_t>(r));
            for (double& v : x0) v += scale * uniform_pm1(eng);
        }
        RestartOutcome outcome = run_restart(base, x0, options);
        result.restart_residuals.push_back(outcome.knot_residual);
        result.restart_objectives.push_back(outcome.objective);
        if (best_index < 0 || outcome.objective < best.objective) {
            best = std::move(outcome);
            best_index = r;
        }
    }

    result.best_restart = best_index;
    result.refined_residual = best.objective;
    result.best_residual = best.knot_residual;
    result.iterations = best.iterations;
    result.history = std::move(best.history);
    result.motion = base;
    detail::unflatten_waypoints(result.motion, best.x);
    return result;
}

}  // namespace flapex
