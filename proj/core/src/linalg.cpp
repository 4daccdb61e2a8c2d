#include "flapex/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace flapex {

SymMatrix::SymMatrix(int n) : n_(n) {
    if (n < 1) throw DimensionError("SymMatrix: size must be positive");
    a_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw DimensionError("SymMatrix::from_rows: ragged rows");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = 0.5 * (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                                    rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
            m.set(i, j, v);
        }
    return m;
}

void SymMatrix::set(int i, int j, double v) {
    a_[idx(i, j)] = v;
    a_[idx(j, i)] = v;
}

double SymMatrix::norm_inf() const {
    double best = 0.0;
    for (int i = 0; i < n_; ++i) {
        double row = 0.0;
        for (int j = 0; j < n_; ++j) row += std::abs(a_[idx(i, j)]);
        best = std::max(best, row);
    }
    return best;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += a_[idx(i, i)];
    return t;
}

DistanceMatrix::DistanceMatrix(int n) : n_(n) {
    if (n < 1) throw DimensionError("DistanceMatrix: size must be positive");
    d_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
}

void DistanceMatrix::set(int i, int j, double v) {
    d_[idx(i, j)] = v;
    d_[idx(j, i)] = v;
}

std::pair<Vec, Vec> split_vector(const Vec& u, int d) {
    if (d <= 0 || d >= u.dim())
        throw DimensionError("split_vector: split point must satisfy 0 < d < dim, got d=" +
                             std::to_string(d) + " for dim " + std::to_string(u.dim()));
    Vec head(d);
    Vec tail(u.dim() - d);
    for (int i = 0; i < d; ++i) head[i] = u[i];
    for (int i = d; i < u.dim(); ++i) tail[i - d] = u[i];
    return {head, tail};
}

Vec include_vector(const Vec& u, int f) {
    if (f < u.dim())
        throw DimensionError("include_vector: target dimension " + std::to_string(f) +
                             " below input dimension " + std::to_string(u.dim()));
    Vec out(f);
    for (int i = 0; i < u.dim(); ++i) out[i] = u[i];
    return out;
}

DistanceMatrix distance_matrix(const std::vector<Vec>& points) {
    if (points.empty()) throw DimensionError("distance_matrix: need at least one point");
    const int n = static_cast<int>(points.size());
    const int dim = points[0].dim();
    for (const Vec& p : points)
        if (p.dim() != dim) throw DimensionError("distance_matrix: mixed point dimensions");
    DistanceMatrix D(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            D.set(i, j, distance(points[static_cast<std::size_t>(i)],
                                 points[static_cast<std::size_t>(j)]));
    return D;
}

SymMatrix centered_gram(const DistanceMatrix& D) {
    const int n = D.size();
    std::vector<double> sq(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sq[static_cast<std::size_t>(i) * n + j] = D(i, j) * D(i, j);

    std::vector<double> row_mean(static_cast<std::size_t>(n), 0.0);
    double total_mean = 0.0;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += sq[static_cast<std::size_t>(i) * n + j];
        row_mean[static_cast<std::size_t>(i)] = acc / n;
        total_mean += acc;
    }
    total_mean /= static_cast<double>(n) * n;

    SymMatrix G(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double g = -0.5 * (sq[static_cast<std::size_t>(i) * n + j] -
                                     row_mean[static_cast<std::size_t>(i)] -
                                     row_mean[static_cast<std::size_t>(j)] + total_mean);
            G.set(i, j, g);
        }
    return G;
}

namespace {

double off_diagonal_max(const std::vector<double>& a, int n) {
    double best = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
            best = std::max(best, std::abs(a[static_cast<std::size_t>(p) * n + q]));
    return best;
}

void normalize_sign(Vec& v) {
    int lead = 0;
    double best = 0.0;
    for (int i = 0; i < v.dim(); ++i) {
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            lead = i;
        }
    }
    if (v[lead] < 0.0) v *= -1.0;
}

}  // namespace

std::vector<EigenPair> sym_eigen(const SymMatrix& M, double tol) {
    if (tol <= 0.0) throw InputError("sym_eigen: tolerance must be positive");
    const int n = M.size();
    std::vector<double> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = M(i, j);
    std::vector<double> v(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;

    const double scale = M.norm_inf();
    // Drive off-diagonals to rounding level; the caller-facing bound is
    // checked explicitly on the reconstruction afterwards.
    const double stop = 1e-15 * std::max(scale, 1e-300);
    const int max_sweeps = 64;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_max(a, n) <= stop) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[static_cast<std::size_t>(p) * n + q];
                if (std::abs(apq) <= stop * 1e-2) continue;
                const double app = a[static_cast<std::size_t>(p) * n + p];
                const double aqq = a[static_cast<std::size_t>(q) * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::hypot(theta, 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a[static_cast<std::size_t>(p) * n + p] = app - t * apq;
                a[static_cast<std::size_t>(q) * n + q] = aqq + t * apq;
                a[static_cast<std::size_t>(p) * n + q] = 0.0;
                a[static_cast<std::size_t>(q) * n + p] = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a[static_cast<std::size_t>(r) * n + p];
                        const double arq = a[static_cast<std::size_t>(r) * n + q];
                        const double nrp = arp - s * (arq + tau * arp);
                        const double nrq = arq + s * (arp - tau * arq);
                        a[static_cast<std::size_t>(r) * n + p] = nrp;
                        a[static_cast<std::size_t>(p) * n + r] = nrp;
                        a[static_cast<std::size_t>(r) * n + q] = nrq;
                        a[static_cast<std::size_t>(q) * n + r] = nrq;
                    }
                    const double vrp = v[static_cast<std::size_t>(r) * n + p];
                    const double vrq = v[static_cast<std::size_t>(r) * n + q];
                    v[static_cast<std::size_t>(r) * n + p] = vrp - s * (vrq + tau * vrp);
                    v[static_cast<std::size_t>(r) * n + q] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    std::vector<EigenPair> pairs(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return a[static_cast<std::size_t>(x) * n + x] > a[static_cast<std::size_t>(y) * n + y];
    });
    for (int k = 0; k < n; ++k) {
        const int col = order[static_cast<std::size_t>(k)];
        EigenPair& ep = pairs[static_cast<std::size_t>(k)];
        ep.value = a[static_cast<std::size_t>(col) * n + col];
        ep.vector = Vec(n);
        for (int r = 0; r < n; ++r) ep.vector[r] = v[static_cast<std::size_t>(r) * n + col];
        normalize_sign(ep.vector);
    }

    // Explicit reconstruction check of the advertised contract.
    double recon_err = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += pairs[static_cast<std::size_t>(k)].value *
                       pairs[static_cast<std::size_t>(k)].vector[i] *
                       pairs[static_cast<std::size_t>(k)].vector[j];
            recon_err = std::max(recon_err, std::abs(acc - M(i, j)));
        }
    }
    if (recon_err > tol * (1.0 + scale))
        throw ConvergenceError("sym_eigen: reconstruction residual " + std::to_string(recon_err) +
                                   " exceeds requested tolerance",
                               recon_err);
    return pairs;
}

EmbeddingReport embedding_dimension(const std::vector<Vec>& points, double rel_tol) {
    if (points.empty()) throw InputError("embedding_dimension: need at least one point");
    if (rel_tol <= 0.0) throw InputError("embedding_dimension: rel_tol must be positive");

    const SymMatrix G = centered_gram(distance_matrix(points));
    const std::vector<EigenPair> pairs = sym_eigen(G, 1e-12);

    EmbeddingReport report;
    report.rel_tolerance = rel_tol;
    report.eigenvalues.reserve(pairs.size());
    double max_abs = 0.0;
    for (const EigenPair& ep : pairs) {
        report.eigenvalues.push_back(ep.value);
        max_abs = std::max(max_abs, std::abs(ep.value));
    }
    const double threshold = rel_tol * std::max(max_abs, 1e-300);
    for (double lambda : report.eigenvalues)
        if (lambda > threshold) ++report.numeric_rank;
    report.euclidean_consistent = report.eigenvalues.back() >= -threshold;
    return report;
}

}  // namespace flapex
