#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "flapex/simplex.hpp"
#include "flapex/vec.hpp"

namespace flapex {

/// Label of a configuration point: either vertex i of the simplex, or the
/// copy of vertex j carried by the flap of face i (i != j).
struct PointLabel {
    enum class Kind { Vertex, Flap };
    Kind kind = Kind::Vertex;
    int i = 0;
    int j = -1;  // flap labels only

    auto operator<=>(const PointLabel&) const = default;
};

std::string label_to_string(const PointLabel& label);

/// Ordered, labeled point list with a shared ambient dimension.
struct Configuration {
    int dim = 0;
    std::vector<PointLabel> labels;
    std::vector<Vec> points;

    int size() const { return static_cast<int>(points.size()); }
};

/// Simplex plus flap depth s > 0.
struct FlapSpec {
    Simplex simplex;
    double depth = 0.0;
};

FlapSpec make_flap_spec(Simplex simplex, double depth);

enum class FlapDirection { Inward, Outward };

/// The two flapped configurations in identical canonical label order:
/// p carries the inward flaps, q the outward ones.
struct FlappedPair {
    Configuration p;
    Configuration q;
    FlapSpec spec;
    bool normals_pairwise_obtuse = false;
};

/// Canonical order: vertices by ascending i, then flap labels
/// lexicographically by (i, j). Total count (d+1)^2.
std::vector<PointLabel> canonical_labels(int d);

/// Position of a label in the canonical order.
int canonical_index(const PointLabel& label, int d);

/// If the label list is exactly the canonical flapped layout for some d,
/// returns that d.
std::optional<int> canonical_flapped_dimension(const std::vector<PointLabel>& labels);

/// Vertex j shifted along face i's outward normal: outward flaps add
/// depth * n_i, inward flaps subtract it.
Vec flap_vertex(const FlapSpec& spec, int i, int j, FlapDirection direction);

/// Builds (p, q) of the flapped pair for the given spec.
FlappedPair build_flapped_pair(const FlapSpec& spec);

}  // namespace flapex
