#include "flapex/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace flapex {

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass. Returns a unit
// vector or a zero-norm signal via the returned norm.
double orthonormalize_against(Vec& w, const std::vector<Vec>& basis) {
    for (int pass = 0; pass < 2; ++pass)
        for (const Vec& b : basis) w -= dot(w, b) * b;
    const double len = norm(w);
    if (len > 0.0) w *= 1.0 / len;
    return len;
}

void require_vertex_index(const Simplex& s, int i, const char* who) {
    if (i < 0 || i > s.dim)
        throw LabelError(std::string(who) + ": vertex index " + std::to_string(i) +
                         " outside 0.." + std::to_string(s.dim));
}

}  // namespace

Simplex regular_simplex(int d) {
    if (d < 1) throw DomainError("regular_simplex: dimension must be at least 1");
    const int m = d + 1;

    // Fixed orthonormal basis of {x in R^{d+1} : sum x = 0} from the
    // spanning set e_k - e_{k+1}.
    std::vector<Vec> basis;
    basis.reserve(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        Vec w(m);
        w[k] = 1.0;
        w[k + 1] = -1.0;
        orthonormalize_against(w, basis);
        basis.push_back(w);
    }

    Simplex s;
    s.dim = d;
    s.kind = SimplexKind::Regular;
    s.vertices.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        Vec centered(m);
        for (int j = 0; j < m; ++j) centered[j] = (i == j ? 1.0 : 0.0) - 1.0 / m;
        Vec u(d);
        for (int k = 0; k < d; ++k) u[k] = dot(centered, basis[static_cast<std::size_t>(k)]);
        u *= 1.0 / norm(u);
        s.vertices.push_back(u);
    }
    return s;
}

Simplex make_general_simplex(const std::vector<Vec>& vertices) {
    if (vertices.empty()) throw GeometryError("make_general_simplex: no vertices");
    const int d = vertices[0].dim();
    if (d < 1) throw GeometryError("make_general_simplex: zero-dimensional vertices");
    if (static_cast<int>(vertices.size()) != d + 1)
        throw GeometryError("make_general_simplex: need d+1 vertices in dimension d, got " +
                            std::to_string(vertices.size()) + " in dimension " +
                            std::to_string(d));
    for (const Vec& v : vertices) {
        if (v.dim() != d) throw DimensionError("make_general_simplex: mixed vertex dimensions");
        if (!all_finite(v)) throw GeometryError("make_general_simplex: non-finite coordinates");
    }

    // Edge Gram spectrum decides degeneracy.
    SymMatrix gram(d);
    std::vector<Vec> edges;
    edges.reserve(static_cast<std::size_t>(d));
    for (int i = 1; i <= d; ++i) edges.push_back(vertices[static_cast<std::size_t>(i)] - vertices[0]);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            gram.set(i, j, dot(edges[static_cast<std::size_t>(i)], edges[static_cast<std::size_t>(j)]));
    const std::vector<EigenPair> eig = sym_eigen(gram, 1e-10);
    const double largest = std::max(eig.front().value, 0.0);
    const double smallest = eig.back().value;
    if (largest <= 0.0 || smallest < 1e-10 * largest)
        throw GeometryError("make_general_simplex: vertices are affinely dependent");

    Simplex s;
    s.dim = d;
    s.vertices = vertices;
    s.kind = SimplexKind::General;
    return s;
}

Vec outward_normal_generic(const Simplex& s, int i) {
    require_vertex_index(s, i, "outward_normal_generic");
    const int d = s.dim;

    // Orthonormal basis of the face's direction space.
    std::vector<Vec> face;
    face.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j <= d; ++j)
        if (j != i) face.push_back(s.vertices[static_cast<std::size_t>(j)]);
    std::vector<Vec> basis;
    basis.reserve(static_cast<std::size_t>(d - 1));
    for (int k = 1; k < d; ++k) {
        Vec w = face[static_cast<std::size_t>(k)] - face[0];
        const double scale = norm(w);
        if (orthonormalize_against(w, basis) < 1e-10 * std::max(scale, 1.0))
            throw GeometryError("outward_normal_generic: degenerate face");
        basis.push_back(w);
    }

    Vec offset = s.vertices[static_cast<std::size_t>(i)] - face[0];
    const double offset_len = norm(offset);
    for (int pass = 0; pass < 2; ++pass)
        for (const Vec& b : basis) offset -= dot(offset, b) * b;
    const double len = norm(offset);
    if (len < 1e-10 * std::max(offset_len, 1.0))
        throw GeometryError("outward_normal_generic: vertex lies in its opposite face");
    return (-1.0 / len) * offset;
}

Vec outward_normal(const Simplex& s, int i) {
    require_vertex_index(s, i, "outward_normal");
    if (s.kind == SimplexKind::Regular) return -s.vertices[static_cast<std::size_t>(i)];
    return outward_normal_generic(s, i);
}

std::vector<Vec> face_normals(const Simplex& s) {
    std::vector<Vec> normals;
    normals.reserve(s.vertices.size());
    for (int i = 0; i <= s.dim; ++i) normals.push_back(outward_normal(s, i));
    return normals;
}

ObtuseCheck normals_pairwise_obtuse(const Simplex& s) {
    const std::vector<Vec> normals = face_normals(s);
    ObtuseCheck check;
    bool first = true;
    for (int i = 0; i < static_cast<int>(normals.size()); ++i) {
        for (int j = i + 1; j < static_cast<int>(normals.size()); ++j) {
            const double dij = dot(normals[static_cast<std::size_t>(i)],
                                   normals[static_cast<std::size_t>(j)]);
            if (first || dij > check.worst_dot) {
                check.worst_i = i;
                check.worst_j = j;
                check.worst_dot = dij;
                first = false;
            }
        }
    }
    check.pairwise_obtuse = check.worst_dot < 0.0;
    return check;
}

}  // namespace flapex
