#ifndef TROPFW_COVECTOR_HPP
#define TROPFW_COVECTOR_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "tropfw/tropical_core.hpp"

namespace tropfw {

inline constexpr double kDefaultTieTolerance = 1e-9;

/// Combinatorial record of which max/min sectors of each sample apex contain
/// a query point. Indices are 0-based throughout.
struct TypeData {
    // max_type[i] = argmax set of (x - v_i); min_type[i] = argmin set.
    std::vector<std::vector<std::size_t>> max_type;
    std::vector<std::vector<std::size_t>> min_type;
    // Fine-type matrices: T is n x d, T-bar is d x n.
    std::vector<std::vector<int>> fine_max;
    std::vector<std::vector<int>> fine_min;
    // Column sums of T and row sums of T-bar (length d).
    std::vector<int> coarse_max;
    std::vector<int> coarse_min;
    // Row sums of T and column sums of T-bar (length n).
    std::vector<int> dual_coarse_max;
    std::vector<int> dual_coarse_min;

    bool has_tie() const {
        for (const auto& s : max_type)
            if (s.size() > 1) return true;
        for (const auto& s : min_type)
            if (s.size() > 1) return true;
        return false;
    }

    std::size_t max_arcs() const {
        std::size_t a = 0;
        for (const auto& s : max_type) a += s.size();
        return a;
    }
    std::size_t min_arcs() const {
        std::size_t a = 0;
        for (const auto& s : min_type) a += s.size();
        return a;
    }
};

inline TypeData type_data(const SampleMatrix& V, const TropicalPoint& x,
                          double eps_tie = kDefaultTieTolerance) {
    if (x.dim() != V.dim()) throw DimensionError("type_data: dimension mismatch");
    const std::size_t n = V.size();
    const std::size_t d = V.dim();

    TypeData td;
    td.max_type.resize(n);
    td.min_type.resize(n);
    td.fine_max.assign(n, std::vector<int>(d, 0));
    td.fine_min.assign(d, std::vector<int>(n, 0));
    td.coarse_max.assign(d, 0);
    td.coarse_min.assign(d, 0);
    td.dual_coarse_max.assign(n, 0);
    td.dual_coarse_min.assign(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = x[j] - V(i, j);
            hi = std::max(hi, diff);
            lo = std::min(lo, diff);
        }
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = x[j] - V(i, j);
            if (diff >= hi - eps_tie) {
                td.max_type[i].push_back(j);
                td.fine_max[i][j] = 1;
                ++td.coarse_max[j];
                ++td.dual_coarse_max[i];
            }
            if (diff <= lo + eps_tie) {
                td.min_type[i].push_back(j);
                td.fine_min[j][i] = 1;
                ++td.coarse_min[j];
                ++td.dual_coarse_min[i];
            }
        }
    }
    return td;
}

/// Argmax/argmin index sets of x - u; x lies in the closed half-sector
/// S^{j,k}_{-u} for every j in the first set and k in the second.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> half_sector(
    const TropicalPoint& x, const TropicalPoint& u, double eps_tie = kDefaultTieTolerance) {
    if (x.dim() != u.dim()) throw DimensionError("half_sector: dimension mismatch");
    const SampleMatrix single({u});
    TypeData td = type_data(single, x, eps_tie);
    return {std::move(td.max_type[0]), std::move(td.min_type[0])};
}

/// Inequality system x_j - x_k <= bound(j,k), stored as an implicit d x d
/// bound matrix with +inf for absent pairs; only the tightest bound per
/// ordered pair is kept.
class CellDescription {
public:
    explicit CellDescription(std::size_t d)
        : d_(d), bounds_(d * d, std::numeric_limits<double>::infinity()) {}

    std::size_t dim() const { return d_; }

    double bound(std::size_t j, std::size_t k) const { return bounds_[j * d_ + k]; }

    void tighten(std::size_t j, std::size_t k, double b) {
        double& cur = bounds_[j * d_ + k];
        cur = std::min(cur, b);
    }

    struct Inequality {
        std::size_t j, k;  // x_j - x_k <= bound
        double bound;
    };

    std::vector<Inequality> inequalities() const {
        std::vector<Inequality> out;
        for (std::size_t j = 0; j < d_; ++j)
            for (std::size_t k = 0; k < d_; ++k)
                if (j != k && std::isfinite(bound(j, k))) out.push_back({j, k, bound(j, k)});
        return out;
    }

private:
    std::size_t d_;
    std::vector<double> bounds_;
};

/// Inequality description of the bi-tropical covector cell recorded by td.
/// Max arcs (i,j) contribute x_k - x_j <= v_ik - v_ij for all k != j; min
/// arcs (j,i) contribute x_j - x_k <= v_ij - v_ik.
inline CellDescription cell_inequalities(const SampleMatrix& V, const TypeData& td) {
    const std::size_t d = V.dim();
    CellDescription cd(d);
    for (std::size_t i = 0; i < V.size(); ++i) {
        for (std::size_t j : td.max_type[i]) {
            for (std::size_t k = 0; k < d; ++k) {
                if (k == j) continue;
                cd.tighten(k, j, V(i, k) - V(i, j));
            }
        }
        for (std::size_t j : td.min_type[i]) {
            for (std::size_t k = 0; k < d; ++k) {
                if (k == j) continue;
                cd.tighten(j, k, V(i, j) - V(i, k));
            }
        }
    }
    return cd;
}

inline bool cell_membership(const CellDescription& cd, const TropicalPoint& x,
                            double eps = kDefaultTieTolerance) {
    if (x.dim() != cd.dim()) throw DimensionError("cell_membership: dimension mismatch");
    for (std::size_t j = 0; j < cd.dim(); ++j) {
        for (std::size_t k = 0; k < cd.dim(); ++k) {
            if (j == k) continue;
            const double b = cd.bound(j, k);
            if (std::isfinite(b) && x[j] - x[k] > b + eps) return false;
        }
    }
    return true;
}

/// Runtime stand-in for a general-position certificate: both covector graphs
/// at x must have fewer than d + n arcs.
inline bool general_position_arc_check(const TypeData& td, std::size_t n, std::size_t d) {
    return td.max_arcs() < d + n && td.min_arcs() < d + n;
}

}  // namespace tropfw

#endif  // TROPFW_COVECTOR_HPP
