#include <doctest.h>

#include <cmath>

#include "flapex/detail/refined_objective.hpp"
#include "flapex/search.hpp"
#include "oracles.hpp"

using namespace flapex;

namespace {

FlappedPair planar_pair(double s = 0.5) {
    return build_flapped_pair(make_flap_spec(regular_simplex(2), s));
}

}  // namespace

TEST_CASE("violation residual of known motions") {
    const FlappedPair pair = planar_pair();
    const Motion motion = alexander_motion(pair.p, pair.q);

    const MotionSample sample = sample_motion(motion, 200);
    CHECK(violation_residual(sample) < 1e-20);

    CHECK(violation_residual(oracles::reverse_sample(sample)) > 1e-6);

    const MotionSample constant = sample_motion(alexander_motion(pair.p, pair.p), 50);
    CHECK(violation_residual(constant) == 0.0);
}

TEST_CASE("zero residual implies a clean monotonicity report on the same grid") {
    const FlappedPair pair = planar_pair();
    const MotionSample constant = sample_motion(alexander_motion(pair.p, pair.p), 20);
    REQUIRE(violation_residual(constant) == 0.0);
    CHECK(monotonicity_report(constant, 0.0).ok);
}

TEST_CASE("waypoint motions interpolate their knots") {
    const FlappedPair pair = planar_pair();
    const WaypointMotion motion = straight_line_motion(pair.p, pair.q, 4, 3);
    CHECK(motion.size() == 9);
    for (int i = 0; i < motion.size(); ++i) {
        CHECK(motion.eval(i, 0.0) == include_vector(pair.p.points[static_cast<std::size_t>(i)], 4));
        CHECK(motion.eval(i, 1.0) == include_vector(pair.q.points[static_cast<std::size_t>(i)], 4));
        // knot positions are reproduced exactly
        for (int k = 0; k <= 4; ++k)
            CHECK(distance(motion.eval(i, motion.knot(k)), motion.position_at_knot(i, k)) <
                  1e-12);
    }
    const MotionSample knots = motion.sample_knots();
    CHECK(knots.frame_count() == 5);
    const MotionSample refined = motion.sample_refined(4);
    CHECK(refined.frame_count() == 17);
    CHECK(refined.grid.front() == 0.0);
    CHECK(refined.grid.back() == 1.0);
}

TEST_CASE("a straight-line interpolation of the flapped pair has violations") {
    const FlappedPair pair = planar_pair();
    const WaypointMotion line = straight_line_motion(pair.p, pair.q, 3, 8);
    CHECK(violation_residual(line.sample_refined(4)) > 1e-6);
}

TEST_CASE("alexander-initialized waypoints report a vanishing knot residual") {
    const FlappedPair pair = planar_pair();
    const Motion motion = alexander_motion(pair.p, pair.q);
    const WaypointMotion init = oracles::waypoints_from_motion(motion, pair.p, pair.q, 8);
    CHECK(violation_residual(init.sample_knots()) < 1e-12);
}

TEST_CASE("incremental objective evaluation matches brute-force rebuilds") {
    const FlappedPair pair = planar_pair();
    WaypointMotion shape = straight_line_motion(pair.p, pair.q, 3, 5);
    // scatter the waypoints so penalties are active in both directions
    std::mt19937_64 eng(123);
    for (auto& rows : shape.waypoints)
        for (Vec& point : rows)
            for (double& c : point.c) c += 0.2 * oracles::uniform_pm1(eng);

    detail::RefinedObjective objective(shape, 4);
    std::vector<double> x = detail::flatten_waypoints(shape);
    objective.set_x(x);

    // full-rebuild oracle for the same decision vector
    auto brute_force = [&](const std::vector<double>& coords) {
        WaypointMotion probe = shape;
        detail::unflatten_waypoints(probe, coords);
        return violation_residual(probe.sample_refined(4));
    };
    CHECK(objective.total() == doctest::Approx(brute_force(x)).epsilon(1e-13));

    for (int trial = 0; trial < 200; ++trial) {
        const int idx = static_cast<int>(eng() % static_cast<unsigned>(objective.variable_count()));
        const double delta = (trial % 2 == 0 ? 1.0 : -1.0) *
                             (trial % 3 == 0 ? 1e-6 : 0.05) *
                             (1.0 + oracles::uniform_pm1(eng));
        std::vector<double> moved = x;
        moved[static_cast<std::size_t>(idx)] += delta;
        const double expected = brute_force(moved);
        const double incremental = objective.perturbed(idx, delta);
        CHECK(incremental == doctest::Approx(expected).epsilon(1e-11));
        // the internal state must be fully restored
        CHECK(objective.total() == doctest::Approx(brute_force(x)).epsilon(1e-13));
        CHECK(objective.perturbed(idx, 0.0) == doctest::Approx(objective.total()).epsilon(1e-13));
    }
}

TEST_CASE("the optimizer is deterministic and monotone") {
    const FlappedPair pair = planar_pair();
    SearchOptions options;
    options.ambient_dim = 3;
    options.waypoint_count = 4;
    options.budget = 40;
    options.restarts = 2;
    options.seed = 11;

    const SearchResult a = optimize_expansion_path(pair.p, pair.q, options);
    const SearchResult b = optimize_expansion_path(pair.p, pair.q, options);

    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t h = 0; h < a.history.size(); ++h) {
        CHECK(a.history[h].first == b.history[h].first);
        CHECK(a.history[h].second == b.history[h].second);  // bit-identical
    }
    CHECK(a.best_residual == b.best_residual);
    CHECK(a.refined_residual == b.refined_residual);
    CHECK(a.best_restart == b.best_restart);
    REQUIRE(a.restart_residuals.size() == 2);
    for (std::size_t r = 0; r < 2; ++r)
        CHECK(a.restart_residuals[r] == b.restart_residuals[r]);

    for (std::size_t h = 1; h < a.history.size(); ++h)
        CHECK(a.history[h].second <= a.history[h - 1].second);

    CHECK(a.refined_residual ==
          doctest::Approx(violation_residual(a.motion.sample_refined(4))).epsilon(1e-12));
    CHECK(a.best_residual ==
          doctest::Approx(violation_residual(a.motion.sample_knots())).epsilon(1e-12));
}

TEST_CASE("the descent makes progress from the straight line") {
    const FlappedPair pair = planar_pair();
    SearchOptions options;
    options.ambient_dim = 3;
    options.waypoint_count = 4;
    options.budget = 60;
    options.restarts = 1;
    options.seed = 3;
    const SearchResult result = optimize_expansion_path(pair.p, pair.q, options);
    REQUIRE(result.history.size() >= 2);
    CHECK(result.history.back().second < result.history.front().second);
}

TEST_CASE("custom initialization is honored by restart zero") {
    const FlappedPair pair = planar_pair();
    const Motion motion = alexander_motion(pair.p, pair.q);
    SearchOptions options;
    options.ambient_dim = 4;
    options.waypoint_count = 6;
    options.budget = 1;
    options.restarts = 1;
    options.seed = 5;
    options.init = oracles::waypoints_from_motion(motion, pair.p, pair.q, 6);
    const SearchResult result = optimize_expansion_path(pair.p, pair.q, options);
    // restart zero starts exactly at the init point; its knot-grid residual
    // stays at rounding level whether or not a descent step is accepted
    CHECK(result.history.front().second ==
          doctest::Approx(violation_residual(options.init->sample_refined(4))).epsilon(1e-12));
}

TEST_CASE("small subconfigurations can be searched too (exploratory, no gate)") {
    // keep only the simplex vertices and the first two flap points (d+3 points)
    const FlappedPair pair = planar_pair();
    Configuration p;
    Configuration q;
    p.dim = q.dim = 2;
    for (int k = 0; k < 5; ++k) {
        p.labels.push_back(pair.p.labels[static_cast<std::size_t>(k)]);
        q.labels.push_back(pair.q.labels[static_cast<std::size_t>(k)]);
        p.points.push_back(pair.p.points[static_cast<std::size_t>(k)]);
        q.points.push_back(pair.q.points[static_cast<std::size_t>(k)]);
    }
    SearchOptions options;
    options.ambient_dim = 4;  // d + 2
    options.waypoint_count = 4;
    options.budget = 200;
    options.restarts = 2;
    options.seed = 17;
    const SearchResult result = optimize_expansion_path(p, q, options);
    // outcomes are recorded, not gated: the run must only be well-formed
    CHECK(result.best_residual >= 0.0);
    CHECK(result.refined_residual >= 0.0);
    CHECK(result.restart_residuals.size() == 2);
    MESSAGE("subconfiguration best residual: ", result.best_residual,
            " (refined ", result.refined_residual, ")");
}

TEST_CASE("option validation") {
    const FlappedPair pair = planar_pair();
    SearchOptions options;
    options.ambient_dim = 3;
    options.budget = 0;
    CHECK_THROWS_AS(optimize_expansion_path(pair.p, pair.q, options), InputError);
    options.budget = 10;
    options.ambient_dim = 1;
    CHECK_THROWS_AS(optimize_expansion_path(pair.p, pair.q, options), DimensionError);
    options.ambient_dim = 3;
    options.restarts = 0;
    CHECK_THROWS_AS(optimize_expansion_path(pair.p, pair.q, options), InputError);
}
