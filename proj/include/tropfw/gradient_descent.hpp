#ifndef TROPFW_GRADIENT_DESCENT_HPP
#define TROPFW_GRADIENT_DESCENT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "tropfw/covector.hpp"
#include "tropfw/flow.hpp"
#include "tropfw/tropical_core.hpp"

namespace tropfw {

enum class StepSchedule { diminishing, constant, exact_line_search };

struct DescentConfig {
    double step0 = 1.0;
    StepSchedule schedule = StepSchedule::diminishing;
    std::size_t max_iters = 10000;
    double eps_tie = kDefaultTieTolerance;
    double eps_obj = 1e-9;
};

enum class DescentStatus { converged, max_iters };

struct DescentIterate {
    TropicalPoint x;
    double f = 0.0;
    std::vector<double> direction;
    bool used_oracle = false;
};

struct DescentTrace {
    std::vector<DescentIterate> iterates;
    TropicalPoint terminal;
    DescentStatus status = DescentStatus::max_iters;
};

/// Coarse-type gradient #tau - #tau-bar, defined only when every max/min
/// type set is a singleton.
inline std::vector<int> gradient(const SampleMatrix& V, const TropicalPoint& x,
                                 double eps_tie = kDefaultTieTolerance) {
    const TypeData td = type_data(V, x, eps_tie);
    if (td.has_tie()) throw TiePresent("gradient undefined: a type set has >= 2 elements");
    std::vector<int> g(V.dim());
    for (std::size_t j = 0; j < V.dim(); ++j) g[j] = td.coarse_max[j] - td.coarse_min[j];
    return g;
}

/// Everywhere-defined subgradient: column sums of the row-normalized
/// fine-max matrix minus row sums of the column-normalized fine-min matrix.
/// Coincides with gradient() when no type set ties.
inline std::vector<double> subgradient(const SampleMatrix& V, const TropicalPoint& x,
                                       double eps_tie = kDefaultTieTolerance) {
    const TypeData td = type_data(V, x, eps_tie);
    const std::size_t n = V.size();
    const std::size_t d = V.dim();
    std::vector<double> g(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double row_w = 1.0 / static_cast<double>(td.max_type[i].size());
        for (std::size_t j : td.max_type[i]) g[j] += row_w;
        const double col_w = 1.0 / static_cast<double>(td.min_type[i].size());
        for (std::size_t j : td.min_type[i]) g[j] -= col_w;
    }
    return g;
}

/// Smallest exact minimizer of the piecewise-linear t -> f(x - t*dir), t >= 0.
inline double line_search_step(const SampleMatrix& V, const TropicalPoint& x,
                               const std::vector<double>& dir) {
    const std::size_t n = V.size();
    const std::size_t d = V.dim();
    if (dir.size() != d) throw DimensionError("line_search_step: dimension mismatch");
    double norm = 0.0;
    for (double g : dir) norm = std::max(norm, std::abs(g));
    if (norm == 0.0) throw InvalidInput("line_search_step: zero direction");

    // Breakpoints of t -> f(x - t*dir): crossings of the lines
    // (x_j - v_ij) - t*dir_j within any single row i.
    std::vector<double> ts{0.0};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = j + 1; k < d; ++k) {
                const double denom = dir[j] - dir[k];
                if (std::abs(denom) < 1e-15) continue;
                const double t = ((x[j] - V(i, j)) - (x[k] - V(i, k))) / denom;
                if (t > 0.0) ts.push_back(t);
            }
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             ts.end());

    auto eval = [&](double t) {
        std::vector<double> p(d);
        for (std::size_t j = 0; j < d; ++j) p[j] = x[j] - t * dir[j];
        return fw_objective(V, TropicalPoint(std::move(p)));
    };

    // f is convex: scan the breakpoints and return the first minimizer.
    double best_t = 0.0;
    double best_f = eval(0.0);
    for (std::size_t idx = 1; idx < ts.size(); ++idx) {
        const double f = eval(ts[idx]);
        if (f < best_f - 1e-12) {
            best_f = f;
            best_t = ts[idx];
        } else if (f > best_f + 1e-12) {
            return best_t;
        }
    }
    // Past the last breakpoint f is linear; a decreasing tail would mean f
    // is unbounded below, which cannot happen for a nonempty sample.
    const double tail = ts.back() + 1.0;
    if (eval(tail) < best_f - 1e-9) {
        throw UnboundedDirection("line_search_step: objective decreases without bound");
    }
    return best_t;
}

namespace detail {

inline TropicalPoint step_from(const TropicalPoint& x, const std::vector<double>& dir,
                               double alpha) {
    std::vector<double> next(x.dim());
    for (std::size_t j = 0; j < x.dim(); ++j) next[j] = x[j] - alpha * dir[j];
    return TropicalPoint(std::move(next));
}

// When x sits exactly on a sample point of an otherwise generic sample, the
// gradient over the remaining points is well-defined and zero iff x is the
// unique Fermat-Weber point. Returns the reduced gradient if applicable.
inline std::optional<std::vector<double>> sample_point_gradient(const SampleMatrix& V,
                                                                const TropicalPoint& x,
                                                                double eps_tie) {
    std::size_t hit = V.size();
    for (std::size_t i = 0; i < V.size(); ++i) {
        if (x.near(V.row(i), eps_tie)) {
            if (hit != V.size()) return std::nullopt;  // duplicate rows
            hit = i;
        }
    }
    if (hit == V.size()) return std::nullopt;
    std::vector<TropicalPoint> rest;
    for (std::size_t i = 0; i < V.size(); ++i)
        if (i != hit) rest.push_back(V.row(i));
    if (rest.empty()) return std::vector<double>(x.dim(), 0.0);
    const SampleMatrix reduced(std::move(rest));
    const TypeData td = type_data(reduced, x, eps_tie);
    if (td.has_tie()) return std::nullopt;
    std::vector<double> g(x.dim());
    for (std::size_t j = 0; j < x.dim(); ++j)
        g[j] = static_cast<double>(td.coarse_max[j] - td.coarse_min[j]);
    return g;
}

inline bool is_zero(const std::vector<double>& g) {
    for (double v : g)
        if (v != 0.0) return false;
    return true;
}

// Fallback for a stalled exact line search at a nondifferentiable point:
// probe the gradients of neighboring maximal cells reached by nudging x
// along +-(e_j - e_k), and take the first probe whose cell gradient yields
// a strictly decreasing line search.
inline bool escape_stall(const SampleMatrix& V, TropicalPoint& x, double f_now,
                         double eps_tie, std::vector<double>& dir_out, double& alpha_out) {
    const std::size_t d = V.dim();
    // Half the smallest nonzero slack keeps the probe inside an adjacent cell.
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < V.size(); ++i) {
        std::vector<double> diff(d);
        for (std::size_t j = 0; j < d; ++j) diff[j] = x[j] - V(i, j);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = j + 1; k < d; ++k) {
                const double gap = std::abs(diff[j] - diff[k]);
                if (gap > eps_tie) slack = std::min(slack, gap);
            }
    }
    if (!std::isfinite(slack)) return false;
    const double eta = slack / 4.0;

    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            if (j == k) continue;
            std::vector<double> probe(x.coords());
            probe[j] += eta;
            probe[k] -= eta;
            const TypeData td = type_data(V, TropicalPoint(probe), eps_tie);
            if (td.has_tie()) continue;
            std::vector<double> g(d);
            for (std::size_t l = 0; l < d; ++l)
                g[l] = static_cast<double>(td.coarse_max[l] - td.coarse_min[l]);
            if (is_zero(g)) continue;
            const double t = line_search_step(V, x, g);
            if (t <= 0.0) continue;
            const TropicalPoint cand = step_from(x, g, t);
            if (fw_objective(V, cand) < f_now - 1e-12) {
                dir_out = std::move(g);
                alpha_out = t;
                return true;
            }
        }
    }
    return false;
}

}  // namespace detail

/// Subgradient descent with the max-flow stopping oracle. The oracle fires
/// whenever a type-set tie makes the gradient undefined, and once more on
/// the final iterate so a converged status is always oracle-certified.
inline DescentTrace descend(const SampleMatrix& V, const TropicalPoint& x0,
                            const DescentConfig& cfg) {
    if (x0.dim() != V.dim()) throw DimensionError("descend: dimension mismatch");
    if (cfg.max_iters < 1) throw InvalidInput("descend: max_iters must be >= 1");

    DescentTrace trace;
    TropicalPoint x = x0;
    TropicalPoint best = x;
    double best_f = fw_objective(V, x);

    for (std::size_t k = 0; k < cfg.max_iters; ++k) {
        const double f_now = fw_objective(V, x);
        if (f_now < best_f) {
            best_f = f_now;
            best = x;
        }
        const TypeData td = type_data(V, x, cfg.eps_tie);

        std::vector<double> dir;
        bool used_oracle = false;
        if (td.has_tie()) {
            used_oracle = true;
            const OracleResult oracle = max_flow_oracle(V, x, cfg.eps_tie);
            if (oracle.optimal) {
                trace.iterates.push_back({x, f_now, {}, true});
                trace.terminal = x;
                trace.status = DescentStatus::converged;
                return trace;
            }
            if (auto reduced = detail::sample_point_gradient(V, x, cfg.eps_tie)) {
                dir = std::move(*reduced);
            }
            if (dir.empty() || detail::is_zero(dir)) dir = subgradient(V, x, cfg.eps_tie);
        } else {
            const std::vector<int> g = gradient(V, x, cfg.eps_tie);
            dir.assign(g.begin(), g.end());
        }

        if (detail::is_zero(dir)) {
            // Interior of a zero-gradient cell; certify and stop.
            const OracleResult oracle = max_flow_oracle(V, x, cfg.eps_tie);
            trace.iterates.push_back({x, f_now, dir, true});
            if (oracle.optimal) {
                trace.terminal = x;
                trace.status = DescentStatus::converged;
                return trace;
            }
            break;  // inconsistent state; fall through to max_iters handling
        }

        double alpha;
        switch (cfg.schedule) {
            case StepSchedule::constant:
                alpha = cfg.step0;
                break;
            case StepSchedule::diminishing:
                alpha = cfg.step0 / std::sqrt(static_cast<double>(k + 1));
                break;
            case StepSchedule::exact_line_search:
                alpha = line_search_step(V, x, dir);
                if (alpha <= 0.0 &&
                    !detail::escape_stall(V, x, f_now, cfg.eps_tie, dir, alpha)) {
                    // No descent direction found among neighboring cells;
                    // nudge along the subgradient with a shrinking step.
                    alpha = cfg.eps_obj / std::sqrt(static_cast<double>(k + 1));
                }
                break;
        }

        trace.iterates.push_back({x, f_now, dir, used_oracle});
        x = detail::step_from(x, dir, alpha);
    }

    // Budget exhausted: certify the best iterate once more.
    const double f_best_now = fw_objective(V, x);
    if (f_best_now < best_f) {
        best_f = f_best_now;
        best = x;
    }
    trace.terminal = best;
    const OracleResult oracle = max_flow_oracle(V, best, cfg.eps_tie);
    trace.status = oracle.optimal ? DescentStatus::converged : DescentStatus::max_iters;
    return trace;
}

}  // namespace tropfw

#endif  // TROPFW_GRADIENT_DESCENT_HPP
