#pragma once

#include <vector>

#include "flapex/linalg.hpp"
#include "flapex/vec.hpp"

namespace flapex {

enum class SimplexKind { Regular, General };

/// d+1 affinely independent vertices in dimension d. Regular simplices are
/// centered at the origin with unit circumradius, so vertex inner products
/// are exactly -1/d off the diagonal.
struct Simplex {
    int dim = 0;
    std::vector<Vec> vertices;  // size dim + 1
    SimplexKind kind = SimplexKind::General;
};

struct ObtuseCheck {
    bool pairwise_obtuse = false;
    int worst_i = 0;
    int worst_j = 1;
    double worst_dot = 0.0;
};

/// Regular d-simplex with unit circumradius, centered at the origin.
/// Deterministic: the same coordinates on every call. Built by centering the
/// d+1 standard basis vectors of dimension d+1 and expressing them in a fixed
/// orthonormal basis of the hyperplane {sum x = 0}.
Simplex regular_simplex(int d);

/// Validates affine independence (smallest edge-Gram eigenvalue at least
/// 1e-10 times the largest) and wraps the vertices as a general simplex.
Simplex make_general_simplex(const std::vector<Vec>& vertices);

/// Outward unit normal of face i (the face omitting vertex i), oriented away
/// from vertex i. Dispatches to the exact -u_i form for regular simplices.
Vec outward_normal(const Simplex& s, int i);

/// Same normal computed without using regularity: orthonormalize the face's
/// edge vectors and remove their span from the offset of vertex i.
Vec outward_normal_generic(const Simplex& s, int i);

/// All d+1 outward unit face normals, indexed by the omitted vertex.
std::vector<Vec> face_normals(const Simplex& s);

/// True iff n_i . n_j < 0 for every pair of outward normals; reports the
/// maximal dot product and the first pair attaining it.
ObtuseCheck normals_pairwise_obtuse(const Simplex& s);

}  // namespace flapex
