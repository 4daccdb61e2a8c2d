#include "flapex/flaps.hpp"

#include <string>

namespace flapex {

std::string label_to_string(const PointLabel& label) {
    if (label.kind == PointLabel::Kind::Vertex) return "v" + std::to_string(label.i);
    return "f" + std::to_string(label.i) + "_" + std::to_string(label.j);
}

FlapSpec make_flap_spec(Simplex simplex, double depth) {
    if (!(depth > 0.0)) throw DomainError("make_flap_spec: depth must be positive");
    return FlapSpec{std::move(simplex), depth};
}

std::vector<PointLabel> canonical_labels(int d) {
    if (d < 1) throw DomainError("canonical_labels: dimension must be at least 1");
    std::vector<PointLabel> labels;
    labels.reserve(static_cast<std::size_t>((d + 1) * (d + 1)));
    for (int i = 0; i <= d; ++i) labels.push_back({PointLabel::Kind::Vertex, i, -1});
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j)
            if (j != i) labels.push_back({PointLabel::Kind::Flap, i, j});
    return labels;
}

int canonical_index(const PointLabel& label, int d) {
    if (label.kind == PointLabel::Kind::Vertex) {
        if (label.i < 0 || label.i > d) throw LabelError("canonical_index: vertex index out of range");
        return label.i;
    }
    if (label.i < 0 || label.i > d || label.j < 0 || label.j > d || label.i == label.j)
        throw LabelError("canonical_index: invalid flap label");
    const int within = label.j < label.i ? label.j : label.j - 1;
    return (d + 1) + label.i * d + within;
}

std::optional<int> canonical_flapped_dimension(const std::vector<PointLabel>& labels) {
    if (labels.size() < 4) return std::nullopt;
    int d = 0;
    while ((d + 1) * (d + 1) < static_cast<int>(labels.size())) ++d;
    if ((d + 1) * (d + 1) != static_cast<int>(labels.size()) || d < 1) return std::nullopt;
    const std::vector<PointLabel> expected = canonical_labels(d);
    if (labels != expected) return std::nullopt;
    return d;
}

Vec flap_vertex(const FlapSpec& spec, int i, int j, FlapDirection direction) {
    const int d = spec.simplex.dim;
    if (i < 0 || i > d || j < 0 || j > d)
        throw LabelError("flap_vertex: indices must lie in 0.." + std::to_string(d));
    if (i == j) throw LabelError("flap_vertex: face index equals vertex index");
    const Vec n = outward_normal(spec.simplex, i);
    const Vec& vertex = spec.simplex.vertices[static_cast<std::size_t>(j)];
    const double s = direction == FlapDirection::Outward ? spec.depth : -spec.depth;
    return vertex + s * n;
}

FlappedPair build_flapped_pair(const FlapSpec& spec) {
    if (!(spec.depth > 0.0)) throw DomainError("build_flapped_pair: depth must be positive");
    const int d = spec.simplex.dim;
    const std::vector<PointLabel> labels = canonical_labels(d);

    FlappedPair pair;
    pair.spec = spec;
    pair.p.dim = d;
    pair.q.dim = d;
    pair.p.labels = labels;
    pair.q.labels = labels;
    pair.p.points.reserve(labels.size());
    pair.q.points.reserve(labels.size());
    for (const PointLabel& label : labels) {
        if (label.kind == PointLabel::Kind::Vertex) {
            const Vec& u = spec.simplex.vertices[static_cast<std::size_t>(label.i)];
            pair.p.points.push_back(u);
            pair.q.points.push_back(u);
        } else {
            pair.p.points.push_back(flap_vertex(spec, label.i, label.j, FlapDirection::Inward));
            pair.q.points.push_back(flap_vertex(spec, label.i, label.j, FlapDirection::Outward));
        }
    }
    pair.normals_pairwise_obtuse = normals_pairwise_obtuse(spec.simplex).pairwise_obtuse;
    return pair;
}

}  // namespace flapex
