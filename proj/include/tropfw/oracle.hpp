#ifndef TROPFW_ORACLE_HPP
#define TROPFW_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "tropfw/fw_solver.hpp"
#include "tropfw/tropical_core.hpp"

namespace tropfw {

/// Lattice over the box [lo_j, hi_j] for coordinates 2..d, with coordinate 1
/// pinned to zero. A desk-scale witness, intended for d <= 4.
struct GridSpec {
    std::vector<std::pair<double, double>> box;  // length d-1
    double spacing = 0.25;

    /// Coordinatewise bounding box of the normalized sample, padded by one
    /// grid cell, with h = diameter/64 unless given.
    static GridSpec bounding(const SampleMatrix& V, double h = 0.0) {
        GridSpec spec;
        double diameter = 0.0;
        for (std::size_t j = 1; j < V.dim(); ++j) {
            double lo = V(0, j), hi = V(0, j);
            for (std::size_t i = 1; i < V.size(); ++i) {
                lo = std::min(lo, V(i, j));
                hi = std::max(hi, V(i, j));
            }
            diameter = std::max(diameter, hi - lo);
            spec.box.push_back({lo, hi});
        }
        spec.spacing = h > 0.0 ? h : std::max(diameter / 64.0, 1e-6);
        for (auto& [lo, hi] : spec.box) {
            lo -= spec.spacing;
            hi += spec.spacing;
        }
        return spec;
    }
};

struct GridResult {
    double value = 0.0;
    TropicalPoint argmin;
};

/// Brute-force minimum of the Fermat-Weber objective over the lattice.
/// Guarantee: value - f* <= n*h, since each distance term is 2-Lipschitz in
/// the sup norm and the lattice covering radius is h/2. Ties break to the
/// lexicographically smallest lattice point, so the result is independent
/// of evaluation order.
inline GridResult grid_minimize(const SampleMatrix& V, const GridSpec& spec) {
    const std::size_t free_dims = V.dim() - 1;
    if (spec.box.size() != free_dims) throw InvalidInput("grid_minimize: box/dimension mismatch");
    if (!(spec.spacing > 0.0)) throw InvalidInput("grid_minimize: spacing must be positive");
    std::vector<std::size_t> steps(free_dims);
    for (std::size_t j = 0; j < free_dims; ++j) {
        const auto [lo, hi] = spec.box[j];
        if (lo > hi) throw InvalidInput("grid_minimize: empty box interval");
        steps[j] = static_cast<std::size_t>(std::floor((hi - lo) / spec.spacing + 1e-9)) + 1;
    }

    std::vector<std::size_t> idx(free_dims, 0);
    std::vector<double> coords(V.dim(), 0.0);
    double best = std::numeric_limits<double>::infinity();
    TropicalPoint best_point;
    while (true) {
        for (std::size_t j = 0; j < free_dims; ++j)
            coords[j + 1] = spec.box[j].first + static_cast<double>(idx[j]) * spec.spacing;
        const TropicalPoint p(coords);
        const double f = fw_objective(V, p);
        if (f < best - 1e-15) {
            best = f;
            best_point = p;
        }
        std::size_t j = free_dims;
        while (j > 0) {
            --j;
            if (++idx[j] < steps[j]) break;
            idx[j] = 0;
            if (j == 0) return {best, best_point};
        }
        if (free_dims == 0) return {best, best_point};
    }
}

/// Exhaustive cross-check of a solved polytrope against the lattice:
/// (a) the grid minimum brackets opt_value within [0, n*h];
/// (b) grid points matching opt_value lie inside the cell;
/// (c) grid points inside the cell attain opt_value, and no point anywhere
///     drops below it.
inline std::vector<std::string> verify_polytrope(const SampleMatrix& V, const FWPolytrope& P,
                                                 const GridSpec& spec) {
    std::vector<std::string> violations;
    const GridResult gr = grid_minimize(V, spec);
    const double slack = static_cast<double>(V.size()) * spec.spacing;
    if (gr.value < P.opt_value - 1e-9 || gr.value > P.opt_value + slack - 1e-9) {
        violations.push_back("grid minimum " + std::to_string(gr.value) +
                             " outside [opt, opt + n*h] for opt " + std::to_string(P.opt_value));
    }

    const std::size_t free_dims = V.dim() - 1;
    std::vector<std::size_t> steps(free_dims);
    for (std::size_t j = 0; j < free_dims; ++j) {
        const auto [lo, hi] = spec.box[j];
        steps[j] = static_cast<std::size_t>(std::floor((hi - lo) / spec.spacing + 1e-9)) + 1;
    }
    std::vector<std::size_t> idx(free_dims, 0);
    std::vector<double> coords(V.dim(), 0.0);
    bool done = false;
    while (!done) {
        for (std::size_t j = 0; j < free_dims; ++j)
            coords[j + 1] = spec.box[j].first + static_cast<double>(idx[j]) * spec.spacing;
        const TropicalPoint p(coords);
        const double f = fw_objective(V, p);
        const bool inside = fw_membership(P, p, 1e-9);
        if (f <= P.opt_value + 1e-9 && !inside) {
            violations.push_back("optimal grid point outside the cell");
        }
        if (inside && f > P.opt_value + 1e-9) {
            violations.push_back("cell member with suboptimal objective");
        }
        if (f < P.opt_value - 1e-9) {
            violations.push_back("grid point strictly below opt_value");
        }
        done = true;
        std::size_t j = free_dims;
        while (j > 0) {
            --j;
            if (++idx[j] < steps[j]) {
                done = false;
                break;
            }
            idx[j] = 0;
        }
    }
    return violations;
}

}  // namespace tropfw

#endif  // TROPFW_ORACLE_HPP
