#include <doctest.h>

#include <cmath>

#include "flapex/flaps.hpp"
#include "flapex/linalg.hpp"
#include "oracles.hpp"

using namespace flapex;

TEST_CASE("flap vertices of the planar regular simplex") {
    const FlapSpec spec = make_flap_spec(regular_simplex(2), 0.5);
    const Vec& u0 = spec.simplex.vertices[0];
    const Vec& u1 = spec.simplex.vertices[1];

    const Vec outward = flap_vertex(spec, 0, 1, FlapDirection::Outward);
    CHECK(distance(outward, u1 - 0.5 * u0) < 1e-15);

    const Vec inward = flap_vertex(spec, 0, 1, FlapDirection::Inward);
    CHECK(distance(inward, u1 + 0.5 * u0) < 1e-15);

    CHECK(distance(inward, outward) == doctest::Approx(1.0).epsilon(1e-14));  // 2s

    CHECK_THROWS_AS(flap_vertex(spec, 1, 1, FlapDirection::Inward), LabelError);
    CHECK_THROWS_AS(flap_vertex(spec, 0, 5, FlapDirection::Inward), LabelError);
}

TEST_CASE("canonical label order") {
    const auto labels = canonical_labels(2);
    REQUIRE(labels.size() == 9);
    CHECK(labels[0] == PointLabel{PointLabel::Kind::Vertex, 0, -1});
    CHECK(labels[2] == PointLabel{PointLabel::Kind::Vertex, 2, -1});
    CHECK(labels[3] == PointLabel{PointLabel::Kind::Flap, 0, 1});
    CHECK(labels[4] == PointLabel{PointLabel::Kind::Flap, 0, 2});
    CHECK(labels[5] == PointLabel{PointLabel::Kind::Flap, 1, 0});
    CHECK(labels[8] == PointLabel{PointLabel::Kind::Flap, 2, 1});
    for (std::size_t k = 0; k < labels.size(); ++k)
        CHECK(canonical_index(labels[k], 2) == static_cast<int>(k));

    CHECK(canonical_flapped_dimension(labels) == 2);
    auto broken = labels;
    std::swap(broken[3], broken[4]);
    CHECK_FALSE(canonical_flapped_dimension(broken).has_value());
    CHECK_FALSE(canonical_flapped_dimension({labels[0]}).has_value());
}

TEST_CASE("flapped pair point counts") {
    const FlappedPair p2 = build_flapped_pair(make_flap_spec(regular_simplex(2), 0.5));
    CHECK(p2.p.size() == 9);
    CHECK(p2.q.size() == 9);

    const FlappedPair p3 = build_flapped_pair(make_flap_spec(regular_simplex(3), 1.0));
    CHECK(p3.p.size() == 16);
    CHECK(p3.q.size() == 16);
    CHECK(p3.normals_pairwise_obtuse);

    CHECK_THROWS_AS(make_flap_spec(regular_simplex(2), 0.0), DomainError);
    CHECK_THROWS_AS(make_flap_spec(regular_simplex(2), -1.0), DomainError);
}

TEST_CASE("vertex points coincide in p and q") {
    const FlappedPair pair = build_flapped_pair(make_flap_spec(regular_simplex(3), 0.7));
    for (int i = 0; i <= 3; ++i) {
        CHECK(pair.p.points[static_cast<std::size_t>(i)] ==
              pair.q.points[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("flap midpoints sit on the face vertices") {
    for (int d : {2, 3, 4}) {
        const FlappedPair pair = build_flapped_pair(make_flap_spec(regular_simplex(d), 0.5));
        for (int k = d + 1; k < pair.p.size(); ++k) {
            const PointLabel& label = pair.p.labels[static_cast<std::size_t>(k)];
            const Vec mid = 0.5 * (pair.p.points[static_cast<std::size_t>(k)] +
                                   pair.q.points[static_cast<std::size_t>(k)]);
            const Vec& uj = pair.spec.simplex.vertices[static_cast<std::size_t>(label.j)];
            CHECK(distance(mid, uj) < 1e-12);
        }
    }
}

TEST_CASE("each flap is congruent to its face") {
    for (int d : {2, 3, 4}) {
        const FlappedPair pair = build_flapped_pair(make_flap_spec(regular_simplex(d), 0.8));
        const Simplex& s = pair.spec.simplex;
        for (int i = 0; i <= d; ++i) {
            for (int a = 0; a <= d; ++a) {
                if (a == i) continue;
                for (int b = a + 1; b <= d; ++b) {
                    if (b == i) continue;
                    const double face_dist = distance(s.vertices[static_cast<std::size_t>(a)],
                                                      s.vertices[static_cast<std::size_t>(b)]);
                    const int ia = canonical_index({PointLabel::Kind::Flap, i, a}, d);
                    const int ib = canonical_index({PointLabel::Kind::Flap, i, b}, d);
                    const double flap_dist =
                        distance(pair.p.points[static_cast<std::size_t>(ia)],
                                 pair.p.points[static_cast<std::size_t>(ib)]);
                    CHECK(std::abs(face_dist - flap_dist) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("flapped configurations stay in the base dimension") {
    for (int d : {2, 3}) {
        const FlappedPair pair = build_flapped_pair(make_flap_spec(regular_simplex(d), 0.5));
        CHECK(embedding_dimension(pair.p.points, 1e-8).numeric_rank == d);
        CHECK(embedding_dimension(pair.q.points, 1e-8).numeric_rank == d);
    }
}

TEST_CASE("general simplices build flapped pairs too") {
    const Simplex tri = make_general_simplex({Vec{0, 0}, Vec{1.2, 0}, Vec{0.1, 0.9}});
    const FlappedPair pair = build_flapped_pair(make_flap_spec(tri, 0.3));
    CHECK(pair.p.size() == 9);
    // outward flap of face i lies further from vertex i than the inward one
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 2; ++j) {
            if (i == j) continue;
            const int idx = canonical_index({PointLabel::Kind::Flap, i, j}, 2);
            const Vec& vi = tri.vertices[static_cast<std::size_t>(i)];
            CHECK(distance(pair.q.points[static_cast<std::size_t>(idx)], vi) >
                  distance(pair.p.points[static_cast<std::size_t>(idx)], vi));
        }
}
