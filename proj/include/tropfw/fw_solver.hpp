#ifndef TROPFW_FW_SOLVER_HPP
#define TROPFW_FW_SOLVER_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "tropfw/covector.hpp"
#include "tropfw/flow.hpp"
#include "tropfw/tropical_core.hpp"

namespace tropfw {

/// The Fermat-Weber polytrope of a sample: Kleene star, its tropical
/// vertices, the inequality description { x_k - x_j <= C*_jk }, the optimal
/// objective value and the dual flow that produced it.
struct FWPolytrope {
    std::vector<std::vector<double>> kleene;  // d x d
    std::vector<TropicalPoint> min_vertices;  // rows of C*, deduplicated
    std::vector<TropicalPoint> max_vertices;  // rows of -C*^T, deduplicated
    CellDescription cell;
    double opt_value = 0.0;
    FlowSolution dual;
};

namespace detail {

inline std::vector<TropicalPoint> dedup_points(std::vector<TropicalPoint> pts) {
    std::vector<TropicalPoint> out;
    for (auto& p : pts) {
        bool seen = false;
        for (const auto& q : out)
            if (q.near(p, kEqTolerance)) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(std::move(p));
    }
    return out;
}

}  // namespace detail

/// Exact pipeline: min-cost flow, residual shortest paths, Kleene star.
inline FWPolytrope solve(const SampleMatrix& V) {
    const FlowNetwork net = build_network(V);
    FlowSolution sol = solve_mcf(net);
    const ResidualGraph res = residual(net, sol);
    const std::size_t d = V.dim();

    FWPolytrope P{.kleene = condensed_apsp(res),
                  .min_vertices = {},
                  .max_vertices = {},
                  .cell = CellDescription(d),
                  .opt_value = -sol.cost,
                  .dual = std::move(sol)};

    std::vector<TropicalPoint> mins, maxs;
    for (std::size_t j = 0; j < d; ++j) {
        mins.emplace_back(P.kleene[j]);
        std::vector<double> row(d);
        for (std::size_t k = 0; k < d; ++k) row[k] = -P.kleene[k][j];
        maxs.emplace_back(std::move(row));
    }
    P.min_vertices = detail::dedup_points(std::move(mins));
    P.max_vertices = detail::dedup_points(std::move(maxs));

    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
            if (j != k) P.cell.tighten(k, j, P.kleene[j][k]);
    return P;
}

inline bool fw_membership(const FWPolytrope& P, const TropicalPoint& x,
                          double eps = kDefaultTieTolerance) {
    return cell_membership(P.cell, x, eps);
}

/// Self-check of a solved polytrope: Kleene-star idempotence, vertex
/// membership, and flatness of the objective on every vertex. Returns a
/// list of violations, empty on success.
inline std::vector<std::string> tropical_vertex_check(const FWPolytrope& P,
                                                      const SampleMatrix& V,
                                                      double tol = 1e-6) {
    std::vector<std::string> bad;
    const std::size_t d = V.dim();
    for (std::size_t j = 0; j < d; ++j) {
        if (std::abs(P.kleene[j][j]) > tol)
            bad.push_back("kleene diagonal nonzero at " + std::to_string(j));
        for (std::size_t l = 0; l < d; ++l)
            for (std::size_t k = 0; k < d; ++k)
                if (P.kleene[j][k] > P.kleene[j][l] + P.kleene[l][k] + tol)
                    bad.push_back("kleene not idempotent at (" + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
    }
    for (const auto* side : {&P.min_vertices, &P.max_vertices}) {
        for (const auto& v : *side) {
            if (!fw_membership(P, v, tol)) bad.push_back("vertex outside cell");
            if (std::abs(fw_objective(V, v) - P.opt_value) > tol)
                bad.push_back("vertex objective differs from opt_value");
        }
    }
    return bad;
}

}  // namespace tropfw

#endif  // TROPFW_FW_SOLVER_HPP
