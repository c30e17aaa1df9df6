#ifndef TROPFW_TROPICAL_CORE_HPP
#define TROPFW_TROPICAL_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "tropfw/errors.hpp"

namespace tropfw {

// Componentwise equality tolerance for points in normal form.
inline constexpr double kEqTolerance = 1e-9;

/// A point of the tropical projective torus R^d / R·1, stored with its first
/// coordinate fixed to zero. Construction normalizes eagerly, so two points
/// represent the same projective class iff their stored coordinates agree.
class TropicalPoint {
public:
    TropicalPoint() = default;

    explicit TropicalPoint(std::vector<double> coords) {
        if (coords.size() < 2) {
            throw DimensionError("TropicalPoint needs dimension >= 2");
        }
        for (double c : coords) {
            if (!std::isfinite(c)) {
                throw InvalidInput("TropicalPoint entries must be finite");
            }
        }
        const double base = coords[0];
        for (double& c : coords) c -= base;
        coords_ = std::move(coords);
    }

    TropicalPoint(std::initializer_list<double> coords)
        : TropicalPoint(std::vector<double>(coords)) {}

    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t j) const { return coords_[j]; }
    const std::vector<double>& coords() const { return coords_; }

    bool near(const TropicalPoint& other, double tol = kEqTolerance) const {
        if (dim() != other.dim()) return false;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (std::abs(coords_[j] - other.coords_[j]) > tol) return false;
        }
        return true;
    }

private:
    std::vector<double> coords_;
};

inline TropicalPoint normalize(const std::vector<double>& x) {
    return TropicalPoint(x);
}

/// The n x d sample matrix V, one normalized point per row.
class SampleMatrix {
public:
    explicit SampleMatrix(std::vector<TropicalPoint> rows) : rows_(std::move(rows)) {
        if (rows_.empty()) throw InvalidInput("sample must contain at least one point");
        const std::size_t d = rows_[0].dim();
        for (const auto& r : rows_) {
            if (r.dim() != d) throw DimensionError("sample rows must share one dimension");
        }
    }

    std::size_t size() const { return rows_.size(); }
    std::size_t dim() const { return rows_[0].dim(); }
    const TropicalPoint& row(std::size_t i) const { return rows_[i]; }
    const std::vector<TropicalPoint>& rows() const { return rows_; }
    double operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }

private:
    std::vector<TropicalPoint> rows_;
};

/// Symmetric tropical metric: max_j (u_j - v_j) - min_k (u_k - v_k).
inline double trop_distance(const TropicalPoint& u, const TropicalPoint& v) {
    if (u.dim() != v.dim()) throw DimensionError("trop_distance: dimension mismatch");
    double hi = u[0] - v[0];
    double lo = hi;
    for (std::size_t j = 1; j < u.dim(); ++j) {
        const double diff = u[j] - v[j];
        hi = std::max(hi, diff);
        lo = std::min(lo, diff);
    }
    return hi - lo;
}

/// Fermat-Weber objective: sum of tropical distances from x to every row of V.
inline double fw_objective(const SampleMatrix& V, const TropicalPoint& x) {
    if (x.dim() != V.dim()) throw DimensionError("fw_objective: dimension mismatch");
    double total = 0.0;
    for (const auto& v : V.rows()) total += trop_distance(x, v);
    return total;
}

/// The d tropical vertices generating the ball B_r(u): normalize(u + r·e_j).
inline std::vector<TropicalPoint> trop_ball_generators(const TropicalPoint& u, double r) {
    if (!(r > 0.0)) throw InvalidInput("trop_ball_generators: radius must be positive");
    std::vector<TropicalPoint> gens;
    gens.reserve(u.dim());
    for (std::size_t j = 0; j < u.dim(); ++j) {
        std::vector<double> g = u.coords();
        g[j] += r;
        gens.emplace_back(std::move(g));
    }
    return gens;
}

}  // namespace tropfw

#endif  // TROPFW_TROPICAL_CORE_HPP
