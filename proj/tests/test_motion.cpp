#include <doctest.h>

#include <cmath>

#include "flapex/expansion.hpp"
#include "flapex/motion.hpp"
#include "flapex/obstruction.hpp"
#include "oracles.hpp"

using namespace flapex;

namespace {

constexpr double kPi = 3.14159265358979323846;

FlappedPair planar_pair(double s = 0.5) {
    return build_flapped_pair(make_flap_spec(regular_simplex(2), s));
}

}  // namespace

TEST_CASE("alexander motion endpoints are exact") {
    const FlappedPair pair = planar_pair();
    const Motion motion = alexander_motion(pair.p, pair.q);
    CHECK(motion.ambient_dim == 4);
    for (int i = 0; i < motion.size(); ++i) {
        CHECK(motion.eval(i, 0.0) ==
              include_vector(pair.p.points[static_cast<std::size_t>(i)], 4));
        CHECK(motion.eval(i, 1.0) ==
              include_vector(pair.q.points[static_cast<std::size_t>(i)], 4));
    }
    CHECK_THROWS_AS(motion.eval(0, 1.5), InputError);
    CHECK_THROWS_AS(motion.eval(99, 0.5), InputError);
}

TEST_CASE("vertex trajectories are stationary") {
    const FlappedPair pair = planar_pair();
    const Motion motion = alexander_motion(pair.p, pair.q);
    for (int i = 0; i <= 2; ++i) {
        const Vec fixed = include_vector(pair.p.points[static_cast<std::size_t>(i)], 4);
        for (double t : {0.0, 0.1, 0.35, 0.5, 0.8, 1.0})
            CHECK(distance(motion.eval(i, t), fixed) < 1e-15);
    }
}

TEST_CASE("flap trajectories follow the closed form") {
    const double s = 0.5;
    const FlappedPair pair = planar_pair(s);
    const Motion motion = alexander_motion(pair.p, pair.q);
    const Simplex& simplex = pair.spec.simplex;
    for (int k = 0; k <= 2; ++k)
        for (int j = 0; j <= 2; ++j) {
            if (j == k) continue;
            const int idx = canonical_index({PointLabel::Kind::Flap, k, j}, 2);
            for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const Vec got = motion.eval(idx, t);
                Vec expected(4);
                const Vec& uj = simplex.vertices[static_cast<std::size_t>(j)];
                const Vec& uk = simplex.vertices[static_cast<std::size_t>(k)];
                const double c = std::cos(kPi * t);
                const double sn = t == 1.0 ? 0.0 : std::sin(kPi * t);
                for (int a = 0; a < 2; ++a) {
                    expected[a] = uj[a] + c * s * uk[a];
                    expected[2 + a] = sn * s * uk[a];
                }
                CHECK(distance(got, expected) < 1e-14);
            }
        }
}

TEST_CASE("mismatched configurations are rejected") {
    const FlappedPair pair = planar_pair();
    Configuration other = pair.q;
    std::swap(other.labels[4], other.labels[5]);
    CHECK_THROWS_AS(alexander_motion(pair.p, other), ConfigurationError);
}

TEST_CASE("sampling grids and endpoint frames") {
    const FlappedPair pair = planar_pair();
    const Motion motion = alexander_motion(pair.p, pair.q);

    const MotionSample two = sample_motion(motion, 1);
    CHECK(two.frame_count() == 2);
    CHECK(two.grid.front() == 0.0);
    CHECK(two.grid.back() == 1.0);

    const MotionSample sample = sample_motion(motion, 200);
    CHECK(sample.frame_count() == 201);
    CHECK(sample.size() == 9);
    CHECK(sample.ambient_dim == 4);
    for (int i = 0; i < sample.size(); ++i)
        CHECK(sample.frames.back()[static_cast<std::size_t>(i)] ==
              include_vector(pair.q.points[static_cast<std::size_t>(i)], 4));

    CHECK_THROWS_AS(sample_motion(motion, 0), InputError);
}

TEST_CASE("external motions evaluate only on their stored grid") {
    const FlappedPair pair = planar_pair();
    const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 4);
    const Motion external = motion_from_sample(sample);
    CHECK(external.kind == Motion::Kind::External);
    CHECK_NOTHROW(sample_motion(external, 4));
    CHECK_NOTHROW(sample_motion(external, 2));  // coarser grid hits stored times
    CHECK_THROWS_AS(sample_motion(external, 8), SamplingError);
    CHECK_THROWS_AS(external.eval(0, 0.3), SamplingError);
}

TEST_CASE("alexander samples are monotone; reversed ones are not") {
    const FlappedPair pair = planar_pair();
    const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 200);

    const MonotonicityReport report = monotonicity_report(sample, 1e-9);
    CHECK(report.ok);
    CHECK(report.min_increment >= -1e-12);

    const MonotonicityReport reversed = monotonicity_report(oracles::reverse_sample(sample), 1e-9);
    CHECK_FALSE(reversed.ok);
    CHECK(reversed.min_increment < -1e-4);
    CHECK(reversed.worst_a >= 0);
    CHECK(reversed.worst_interval >= 0);
}

TEST_CASE("a constant motion is trivially monotone") {
    const FlappedPair pair = planar_pair();
    const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.p), 50);
    const MonotonicityReport report = monotonicity_report(sample, 0.0);
    CHECK(report.ok);
    CHECK(report.min_increment == 0.0);
}

TEST_CASE("displacement field of the alexander motion") {
    const double s = 0.5;
    for (int d : {2, 3}) {
        const FlappedPair pair = build_flapped_pair(make_flap_spec(regular_simplex(d), s));
        const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 50);
        const DisplacementField field = displacement_field(sample, pair.spec, 1e-9);
        CHECK(field.consistency_residual <= 1e-12);
        CHECK(field.alignment_residual == 0.0);
        for (int k = 0; k <= d; ++k)
            for (int m = 0; m <= 50; ++m) {
                const double t = field.grid[static_cast<std::size_t>(m)];
                const Vec& dk = field.dk[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
                CHECK(std::abs(norm(dk) - s) < 1e-12);
                Vec expected(2 * d);
                const Vec& uk = pair.spec.simplex.vertices[static_cast<std::size_t>(k)];
                const double c = std::cos(kPi * t);
                const double sn = t == 1.0 ? 0.0 : std::sin(kPi * t);
                for (int a = 0; a < d; ++a) {
                    expected[a] = c * s * uk[a];
                    expected[d + a] = sn * s * uk[a];
                }
                CHECK(distance(dk, expected) < 1e-12);
            }
        // pairwise dot conservation across the whole grid
        for (int m = 0; m <= 50; ++m)
            for (int k = 0; k <= d; ++k)
                for (int j = k + 1; j <= d; ++j)
                    CHECK(std::abs(dot(field.dk[static_cast<std::size_t>(k)]
                                               [static_cast<std::size_t>(m)],
                                       field.dk[static_cast<std::size_t>(j)]
                                               [static_cast<std::size_t>(m)]) +
                                   s * s / d) < 1e-10);
    }
}

TEST_CASE("a perturbed flap point breaks rigidity") {
    const FlappedPair pair = planar_pair();
    MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 50);
    const int idx = canonical_index({PointLabel::Kind::Flap, 0, 1}, 2);
    sample.frames[25][static_cast<std::size_t>(idx)][0] += 0.1;
    CHECK_THROWS_AS(displacement_field(sample, pair.spec, 1e-9), RigidityError);
}

TEST_CASE("coordinate truncation breaks the displacement norm") {
    const FlappedPair pair = planar_pair();
    const MotionSample sample =
        truncate_sample(sample_motion(alexander_motion(pair.p, pair.q), 50), 3);
    try {
        displacement_field(sample, pair.spec, 1e-9);
        FAIL("expected RigidityError");
    } catch (const RigidityError& e) {
        CHECK(e.residual > 1e-6);
    }
}

TEST_CASE("split field reproduces the scalar profile") {
    const double s = 0.5;
    const int d = 3;
    const FlappedPair pair = build_flapped_pair(make_flap_spec(regular_simplex(d), s));
    const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 100);
    const DisplacementField field = displacement_field(sample, pair.spec, 1e-9);
    const SplitField split = split_displacement(field, d, 1e-9);
    CHECK(split.max_off_line < 1e-12);

    for (int k = 0; k <= d; ++k) {
        const auto& ak = split.ak[static_cast<std::size_t>(k)];
        CHECK(std::abs(ak.front() - s) < 1e-12);              // a_k(0) = s
        CHECK(std::abs(ak.back() + s) < 1e-12);               // a_k(1) = -s
        CHECK(std::abs(ak[50]) < 1e-9);                       // a_k(1/2) = 0
        // a_k^2 + |w_k|^2 = s^2 along the whole grid
        for (std::size_t m = 0; m < ak.size(); ++m) {
            const double wk2 = norm_squared(split.wk[static_cast<std::size_t>(k)][m]);
            CHECK(std::abs(ak[m] * ak[m] + wk2 - s * s) < 1e-12);
            CHECK(std::abs(ak[m]) <= s + 1e-12);
        }
        // the scalar changes sign, and the interpolated crossing sits at 1/2
        const auto zeros = zero_crossings(field.grid, ak);
        REQUIRE(!zeros.empty());
        CHECK(std::abs(zeros.front() - 0.5) < 1e-2);
    }
    // at the crossing the complement vectors reproduce the conserved dots
    for (int k = 0; k <= d; ++k)
        for (int j = k + 1; j <= d; ++j)
            CHECK(std::abs(dot(split.wk[static_cast<std::size_t>(k)][50],
                               split.wk[static_cast<std::size_t>(j)][50]) +
                           s * s / d) < 1e-9);
}

TEST_CASE("alexander frames form rectangles congruent to the initial ones") {
    const FlappedPair pair = planar_pair();
    const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 20);
    const int d = 2;
    for (int k = 0; k <= d; ++k)
        for (int i = 0; i <= d; ++i) {
            if (i == k) continue;
            for (int j = i + 1; j <= d; ++j) {
                if (j == k) continue;
                const int gi = canonical_index({PointLabel::Kind::Flap, k, i}, d);
                const int gj = canonical_index({PointLabel::Kind::Flap, k, j}, d);
                auto quad_at = [&](int m) {
                    return std::array<Vec, 4>{sample.frames[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)],
                                              sample.frames[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)],
                                              sample.frames[static_cast<std::size_t>(m)][static_cast<std::size_t>(gj)],
                                              sample.frames[static_cast<std::size_t>(m)][static_cast<std::size_t>(gi)]};
                };
                const std::array<Vec, 4> initial = quad_at(0);
                for (int m = 0; m <= 20; ++m) {
                    const std::array<Vec, 4> current = quad_at(m);
                    CHECK(is_parallelogram(current, 1e-10));
                    for (int a = 0; a < 4; ++a)
                        for (int b = a + 1; b < 4; ++b)
                            CHECK(std::abs(distance(current[static_cast<std::size_t>(a)],
                                                    current[static_cast<std::size_t>(b)]) -
                                           distance(initial[static_cast<std::size_t>(a)],
                                                    initial[static_cast<std::size_t>(b)])) <
                                  1e-10);
                }
            }
        }
}

TEST_CASE("frames moved by rigid motions are re-aligned before analysis") {
    const double s = 0.5;
    const FlappedPair pair = planar_pair(s);
    MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 20);
    // push every frame through its own random isometry of the ambient space
    for (int m = 0; m <= 20; ++m)
        sample.frames[static_cast<std::size_t>(m)] = oracles::apply_random_isometry(
            sample.frames[static_cast<std::size_t>(m)], 4, 1000 + static_cast<std::uint64_t>(m));

    const DisplacementField field = displacement_field(sample, pair.spec, 1e-8);
    CHECK(field.alignment_residual < 1e-8);
    CHECK(field.consistency_residual < 1e-8);
    const SplitField split = split_displacement(field, 2, 1e-8);
    for (int k = 0; k <= 2; ++k) {
        CHECK(std::abs(split.ak[static_cast<std::size_t>(k)].front() - s) < 1e-8);
        CHECK(std::abs(split.ak[static_cast<std::size_t>(k)].back() + s) < 1e-8);
    }
    // complement dots are invariant under the arbitrary complement rotation
    for (int k = 0; k <= 2; ++k)
        for (int j = k + 1; j <= 2; ++j)
            CHECK(std::abs(dot(split.wk[static_cast<std::size_t>(k)][10],
                               split.wk[static_cast<std::size_t>(j)][10]) +
                           s * s / 2) < 1e-8);
}

TEST_CASE("non-rigid vertex motion fails even after alignment") {
    const FlappedPair pair = planar_pair();
    MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 20);
    // stretch one vertex in one frame: no rigid map can restore all three
    sample.frames[10][0] *= 1.3;
    try {
        displacement_field(sample, pair.spec, 1e-9);
        FAIL("expected RigidityError");
    } catch (const RigidityError& e) {
        CHECK(e.residual > 1e-3);
    }
}

TEST_CASE("split rejects fields whose base part leaves the normal line") {
    const FlappedPair pair = planar_pair();
    const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 10);
    DisplacementField field = displacement_field(sample, pair.spec, 1e-9);
    field.dk[0][5][1] += 1e-3;  // bend d_0 inside the base plane, off the normal line
    CHECK_THROWS_AS(split_displacement(field, 2, 1e-6), OrthogonalityError);
}

TEST_CASE("truncate_sample validates its target dimension") {
    const FlappedPair pair = planar_pair();
    const MotionSample sample = sample_motion(alexander_motion(pair.p, pair.q), 4);
    CHECK(truncate_sample(sample, 3).ambient_dim == 3);
    CHECK_THROWS_AS(truncate_sample(sample, 0), DimensionError);
    CHECK_THROWS_AS(truncate_sample(sample, 5), DimensionError);
}
