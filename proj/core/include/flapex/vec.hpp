#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "flapex/errors.hpp"

namespace flapex {

/// Point or direction in Euclidean space of explicit runtime dimension.
struct Vec {
    std::vector<double> c;

    Vec() = default;
    explicit Vec(int dim) : c(static_cast<std::size_t>(dim), 0.0) {
        if (dim < 0) throw DimensionError("Vec: negative dimension");
    }
    Vec(std::initializer_list<double> values) : c(values) {}

    int dim() const { return static_cast<int>(c.size()); }

    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    Vec& operator+=(const Vec& o);
    Vec& operator-=(const Vec& o);
    Vec& operator*=(double s);

    bool operator==(const Vec& o) const { return c == o.c; }
};

inline void require_same_dim(const Vec& a, const Vec& b, const char* who) {
    if (a.dim() != b.dim())
        throw DimensionError(std::string(who) + ": dimension mismatch (" +
                             std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

inline Vec& Vec::operator+=(const Vec& o) {
    require_same_dim(*this, o, "Vec::operator+=");
    for (int i = 0; i < dim(); ++i) c[static_cast<std::size_t>(i)] += o[i];
    return *this;
}

inline Vec& Vec::operator-=(const Vec& o) {
    require_same_dim(*this, o, "Vec::operator-=");
    for (int i = 0; i < dim(); ++i) c[static_cast<std::size_t>(i)] -= o[i];
    return *this;
}

inline Vec& Vec::operator*=(double s) {
    for (double& x : c) x *= s;
    return *this;
}

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(Vec a, double s) { return a *= s; }
inline Vec operator*(double s, Vec a) { return a *= s; }
inline Vec operator-(Vec a) { return a *= -1.0; }

inline double dot(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "dot");
    double acc = 0.0;
    for (int i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double norm_squared(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(norm_squared(a)); }

/// Euclidean distance computed as sqrt(sum of squared coordinate differences);
/// no intermediate squared-norm subtraction, so nearby points do not cancel.
inline double distance(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "distance");
    double acc = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

inline double distance_squared(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "distance_squared");
    double acc = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

inline Vec concat(const Vec& a, const Vec& b) {
    Vec out(a.dim() + b.dim());
    for (int i = 0; i < a.dim(); ++i) out[i] = a[i];
    for (int i = 0; i < b.dim(); ++i) out[a.dim() + i] = b[i];
    return out;
}

inline bool all_finite(const Vec& a) {
    for (double x : a.c)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace flapex
