#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flapex/flaps.hpp"

namespace flapex {

/// Structural pairing case, assigned from labels alone when both
/// configurations follow the canonical flapped layout.
enum class PairCase {
    VertexVertex,       // two simplex vertices: distances coincide
    VertexSameFlapFace, // vertex lying on the flapped face: distance preserved
    VertexOwnFaceFlap,  // vertex opposite the flapped face: strictly expands
    FlapZeroCase,       // flap-flap with i=k, j=l, or all indices distinct
    FlapNegativeCase,   // flap-flap with i=l or j=k: strictly expands
    Other,
};

enum class PairClassKind { Equal, Expand, Contract };

std::string pair_case_name(PairCase c);
std::string pair_class_name(PairClassKind c);

/// Class the case tag predicts; Other predicts nothing.
std::optional<PairClassKind> predicted_class(PairCase c);

struct PairClass {
    PointLabel a;
    PointLabel b;
    double d_before = 0.0;
    double d_after = 0.0;
    PairClassKind cls = PairClassKind::Equal;
    PairCase case_tag = PairCase::Other;

    double gap() const { return d_after - d_before; }
};

struct ExpansionReport {
    bool is_expansion = false;
    std::vector<PairClass> pairs;
    double min_gap = 0.0;
    double tolerance = 0.0;
};

/// Full pairwise comparison of two identically labeled configurations.
/// Ambient dimensions may differ; only labels and distances are used.
ExpansionReport expansion_report(const Configuration& before, const Configuration& after,
                                 double tol);

/// Squared-distance difference |b_j^i - b_l^k|^2 - |c_j^i - c_l^k|^2 between
/// corresponding inward and outward flap vertices, computed from coordinates
/// and re-derived through the normal-form identity
/// 4*s*(u_j - u_l).(n_k - n_i); disagreement beyond 1e-10 throws
/// ConsistencyError. Returns the coordinate value.
double flap_pair_gap(const FlapSpec& spec, int i, int j, int k, int l);

}  // namespace flapex
