#include "flapex/expansion.hpp"

#include <cmath>
#include <limits>

namespace flapex {

namespace {

PairCase classify_labels(const PointLabel& a, const PointLabel& b) {
    const bool a_vertex = a.kind == PointLabel::Kind::Vertex;
    const bool b_vertex = b.kind == PointLabel::Kind::Vertex;
    if (a_vertex && b_vertex) return PairCase::VertexVertex;
    if (a_vertex != b_vertex) {
        const PointLabel& vertex = a_vertex ? a : b;
        const PointLabel& flap = a_vertex ? b : a;
        return vertex.i == flap.i ? PairCase::VertexOwnFaceFlap : PairCase::VertexSameFlapFace;
    }
    // flap-flap
    if (a.i == b.i || a.j == b.j) return PairCase::FlapZeroCase;
    const bool all_distinct = a.i != b.i && a.i != b.j && a.j != b.i && a.j != b.j;
    if (all_distinct) return PairCase::FlapZeroCase;
    return PairCase::FlapNegativeCase;
}

}  // namespace

std::string pair_case_name(PairCase c) {
    switch (c) {
        case PairCase::VertexVertex: return "vertex-vertex";
        case PairCase::VertexSameFlapFace: return "vertex-sameFlapFace";
        case PairCase::VertexOwnFaceFlap: return "vertex-ownFaceFlap";
        case PairCase::FlapZeroCase: return "flap-zeroCase";
        case PairCase::FlapNegativeCase: return "flap-negativeCase";
        case PairCase::Other: break;
    }
    return "other";
}

std::string pair_class_name(PairClassKind c) {
    switch (c) {
        case PairClassKind::Equal: return "equal";
        case PairClassKind::Expand: return "expand";
        case PairClassKind::Contract: return "contract";
    }
    return "equal";
}

std::optional<PairClassKind> predicted_class(PairCase c) {
    switch (c) {
        case PairCase::VertexVertex:
        case PairCase::VertexSameFlapFace:
        case PairCase::FlapZeroCase:
            return PairClassKind::Equal;
        case PairCase::VertexOwnFaceFlap:
        case PairCase::FlapNegativeCase:
            return PairClassKind::Expand;
        case PairCase::Other:
            break;
    }
    return std::nullopt;
}

ExpansionReport expansion_report(const Configuration& before, const Configuration& after,
                                 double tol) {
    if (tol <= 0.0) throw InputError("expansion_report: tolerance must be positive");
    if (before.labels != after.labels)
        throw ConfigurationError("expansion_report: configurations carry different labels");
    if (before.size() != static_cast<int>(before.labels.size()) ||
        after.size() != static_cast<int>(after.labels.size()))
        throw ConfigurationError("expansion_report: labels and points out of sync");

    const bool tagged = canonical_flapped_dimension(before.labels).has_value();
    const int n = before.size();

    ExpansionReport report;
    report.tolerance = tol;
    report.min_gap = std::numeric_limits<double>::infinity();
    report.pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            PairClass pc;
            pc.a = before.labels[static_cast<std::size_t>(a)];
            pc.b = before.labels[static_cast<std::size_t>(b)];
            pc.d_before = distance(before.points[static_cast<std::size_t>(a)],
                                   before.points[static_cast<std::size_t>(b)]);
            pc.d_after = distance(after.points[static_cast<std::size_t>(a)],
                                  after.points[static_cast<std::size_t>(b)]);
            const double gap = pc.gap();
            if (gap > tol)
                pc.cls = PairClassKind::Expand;
            else if (gap < -tol)
                pc.cls = PairClassKind::Contract;
            else
                pc.cls = PairClassKind::Equal;
            pc.case_tag = tagged ? classify_labels(pc.a, pc.b) : PairCase::Other;
            report.min_gap = std::min(report.min_gap, gap);
            report.pairs.push_back(pc);
        }
    }
    if (report.pairs.empty()) report.min_gap = 0.0;
    report.is_expansion = report.min_gap >= -tol;
    return report;
}

double flap_pair_gap(const FlapSpec& spec, int i, int j, int k, int l) {
    const int d = spec.simplex.dim;
    auto check = [d](int idx, const char* name) {
        if (idx < 0 || idx > d)
            throw LabelError(std::string("flap_pair_gap: index ") + name + " out of range");
    };
    check(i, "i");
    check(j, "j");
    check(k, "k");
    check(l, "l");
    if (i == j || k == l) throw LabelError("flap_pair_gap: flap labels need i != j and k != l");

    const Vec b1 = flap_vertex(spec, i, j, FlapDirection::Inward);
    const Vec b2 = flap_vertex(spec, k, l, FlapDirection::Inward);
    const Vec c1 = flap_vertex(spec, i, j, FlapDirection::Outward);
    const Vec c2 = flap_vertex(spec, k, l, FlapDirection::Outward);
    const double direct = distance_squared(b1, b2) - distance_squared(c1, c2);

    const Vec& uj = spec.simplex.vertices[static_cast<std::size_t>(j)];
    const Vec& ul = spec.simplex.vertices[static_cast<std::size_t>(l)];
    const Vec nk = outward_normal(spec.simplex, k);
    const Vec ni = outward_normal(spec.simplex, i);
    const double identity = 4.0 * spec.depth * dot(uj - ul, nk - ni);

    if (std::abs(direct - identity) > 1e-10 * std::max(1.0, std::abs(direct)))
        throw ConsistencyError("flap_pair_gap: coordinate and identity paths disagree: " +
                               std::to_string(direct) + " vs " + std::to_string(identity));
    return direct;
}

}  // namespace flapex
