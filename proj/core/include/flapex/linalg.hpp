#pragma once

#include <utility>
#include <vector>

#include "flapex/vec.hpp"

namespace flapex {

/// Dense symmetric matrix; off-diagonal pairs are kept exactly equal.
class SymMatrix {
public:
    explicit SymMatrix(int n);

    /// Builds from row-major entries, averaging (i,j) and (j,i).
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

    int size() const { return n_; }
    double operator()(int i, int j) const { return a_[idx(i, j)]; }

    /// Sets both (i,j) and (j,i).
    void set(int i, int j, double v);

    double norm_inf() const;
    double trace() const;

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j);
    }
    int n_ = 0;
    std::vector<double> a_;
};

/// Symmetric pairwise Euclidean distances with zero diagonal.
class DistanceMatrix {
public:
    explicit DistanceMatrix(int n);
    int size() const { return n_; }
    double operator()(int i, int j) const { return d_[idx(i, j)]; }
    void set(int i, int j, double v);

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j);
    }
    int n_ = 0;
    std::vector<double> d_;
};

struct EigenPair {
    double value = 0.0;
    Vec vector;
};

/// Spectrum-based minimal-embedding analysis of a point configuration.
struct EmbeddingReport {
    std::vector<double> eigenvalues;  // descending
    int numeric_rank = 0;
    double rel_tolerance = 0.0;
    bool euclidean_consistent = false;
};

/// Splits u into its first d and remaining dim-d coordinates.
/// Requires 0 < d < u.dim().
std::pair<Vec, Vec> split_vector(const Vec& u, int d);

/// Pads u with trailing zeros up to dimension f. Requires f >= u.dim().
Vec include_vector(const Vec& u, int f);

/// All points must share one dimension; n >= 1.
DistanceMatrix distance_matrix(const std::vector<Vec>& points);

/// Double-centered Gram matrix G = -1/2 * J (D∘D) J with J = I - ones/n.
SymMatrix centered_gram(const DistanceMatrix& D);

/// Full symmetric eigendecomposition by cyclic Jacobi rotations with a
/// deterministic sweep order. Eigenpairs are sorted by descending eigenvalue
/// and eigenvector signs are normalized. Guarantees
/// ||M - V diag(λ) V^T||_inf <= tol * (1 + ||M||_inf), else throws
/// ConvergenceError carrying the achieved residual.
std::vector<EigenPair> sym_eigen(const SymMatrix& M, double tol);

/// Minimal Euclidean dimension isometrically containing the points, computed
/// as the count of eigenvalues of the centered Gram matrix exceeding
/// rel_tol * max(|λ|_max, 1e-300). The all-zero Gram has rank 0.
EmbeddingReport embedding_dimension(const std::vector<Vec>& points, double rel_tol);

}  // namespace flapex
