#ifndef TROPFW_FLOW_HPP
#define TROPFW_FLOW_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <queue>
#include <vector>

#include "tropfw/covector.hpp"
#include "tropfw/tropical_core.hpp"

namespace tropfw {

/// The D1 transshipment network: d x-nodes with zero supply, n y-nodes with
/// supply +1, n z-nodes with supply -1. Arcs y_i -> x_j carry cost v_ij and
/// x_j -> z_i carry cost -v_ij, all with unit capacity.
struct FlowNetwork {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::vector<double>> cost;  // cost[i][j] = v_ij

    std::size_t node_count() const { return d + 2 * n; }
    std::size_t arc_count() const { return 2 * n * d; }

    // Node ids: x_j -> j, y_i -> d + i, z_i -> d + n + i.
    std::size_t x_node(std::size_t j) const { return j; }
    std::size_t y_node(std::size_t i) const { return d + i; }
    std::size_t z_node(std::size_t i) const { return d + n + i; }
};

inline FlowNetwork build_network(const SampleMatrix& V) {
    FlowNetwork net;
    net.n = V.size();
    net.d = V.dim();
    net.cost.assign(net.n, std::vector<double>(net.d, 0.0));
    for (std::size_t i = 0; i < net.n; ++i)
        for (std::size_t j = 0; j < net.d; ++j) net.cost[i][j] = V(i, j);
    return net;
}

/// Binary optimal flow of the D1 network. pi[i][j] = flow on y_i -> x_j,
/// phi[j][i] = flow on x_j -> z_i.
struct FlowSolution {
    std::vector<std::vector<int>> pi;   // n x d
    std::vector<std::vector<int>> phi;  // d x n
    double cost = 0.0;
};

namespace detail {

// Minimal successive-shortest-path min-cost max-flow. Shortest paths are
// found by Bellman-Ford over the residual arcs, which is exact for the
// negative costs the z-side arcs carry.
class MinCostFlow {
public:
    explicit MinCostFlow(std::size_t nodes) : head_(nodes, -1) {}

    void add_arc(std::size_t from, std::size_t to, int capacity, double cost) {
        arcs_.push_back({static_cast<int>(to), head_[from], capacity, cost});
        head_[from] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({static_cast<int>(from), head_[to], 0, -cost});
        head_[to] = static_cast<int>(arcs_.size()) - 1;
    }

    // Sends as much flow as possible from s to t; returns (flow, cost).
    std::pair<int, double> run(std::size_t s, std::size_t t) {
        int flow = 0;
        double total = 0.0;
        while (true) {
            const std::size_t nn = head_.size();
            std::vector<double> dist(nn, std::numeric_limits<double>::infinity());
            std::vector<int> pred(nn, -1);
            std::vector<char> queued(nn, 0);
            std::deque<std::size_t> queue;
            dist[s] = 0.0;
            queue.push_back(s);
            queued[s] = 1;
            while (!queue.empty()) {
                const std::size_t u = queue.front();
                queue.pop_front();
                queued[u] = 0;
                for (int e = head_[u]; e != -1; e = arcs_[e].next) {
                    const Arc& a = arcs_[e];
                    if (a.capacity <= 0) continue;
                    if (dist[u] + a.cost < dist[a.to] - 1e-12) {
                        dist[a.to] = dist[u] + a.cost;
                        pred[a.to] = e;
                        if (!queued[a.to]) {
                            queue.push_back(a.to);
                            queued[a.to] = 1;
                        }
                    }
                }
            }
            if (pred[t] == -1) break;
            // Unit capacities throughout, so each augmentation moves one unit.
            int push = std::numeric_limits<int>::max();
            for (int v = static_cast<int>(t); v != static_cast<int>(s);) {
                const Arc& a = arcs_[pred[v]];
                push = std::min(push, a.capacity);
                v = arcs_[pred[v] ^ 1].to;
            }
            for (int v = static_cast<int>(t); v != static_cast<int>(s);) {
                arcs_[pred[v]].capacity -= push;
                arcs_[pred[v] ^ 1].capacity += push;
                v = arcs_[pred[v] ^ 1].to;
            }
            flow += push;
            total += push * dist[t];
        }
        return {flow, total};
    }

    // Flow pushed through the arc added by the k-th add_arc call.
    int flow_on(std::size_t arc_index) const { return arcs_[2 * arc_index + 1].capacity; }

private:
    struct Arc {
        int to;
        int next;
        int capacity;
        double cost;
    };
    std::vector<int> head_;
    std::vector<Arc> arcs_;
};

}  // namespace detail

inline FlowSolution solve_mcf(const FlowNetwork& net) {
    const std::size_t n = net.n;
    const std::size_t d = net.d;
    const std::size_t source = net.node_count();
    const std::size_t sink = source + 1;
    detail::MinCostFlow mcf(net.node_count() + 2);

    // Arc indices 0..nd-1 are the pi arcs, nd..2nd-1 the phi arcs.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            mcf.add_arc(net.y_node(i), net.x_node(j), 1, net.cost[i][j]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            mcf.add_arc(net.x_node(j), net.z_node(i), 1, -net.cost[i][j]);
    for (std::size_t i = 0; i < n; ++i) {
        mcf.add_arc(source, net.y_node(i), 1, 0.0);
        mcf.add_arc(net.z_node(i), sink, 1, 0.0);
    }

    const auto [flow, cost] = mcf.run(source, sink);
    if (flow != static_cast<int>(n)) {
        throw InternalError("solve_mcf: could not balance supplies");
    }

    FlowSolution sol;
    sol.pi.assign(n, std::vector<int>(d, 0));
    sol.phi.assign(d, std::vector<int>(n, 0));
    sol.cost = cost;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) sol.pi[i][j] = mcf.flow_on(i * d + j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) sol.phi[j][i] = mcf.flow_on(n * d + i * d + j);
    return sol;
}

/// Residual graph of the D1 network under a given flow: forward arcs where
/// flow is zero, reversed arcs with negated cost where flow is one.
struct ResidualGraph {
    struct Arc {
        std::size_t from, to;
        double weight;
        bool reversed;
    };
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<Arc> arcs;
};

inline ResidualGraph residual(const FlowNetwork& net, const FlowSolution& sol) {
    ResidualGraph res;
    res.n = net.n;
    res.d = net.d;
    for (std::size_t i = 0; i < net.n; ++i) {
        for (std::size_t j = 0; j < net.d; ++j) {
            if (sol.pi[i][j]) {
                res.arcs.push_back({net.x_node(j), net.y_node(i), -net.cost[i][j], true});
            } else {
                res.arcs.push_back({net.y_node(i), net.x_node(j), net.cost[i][j], false});
            }
            if (sol.phi[j][i]) {
                res.arcs.push_back({net.z_node(i), net.x_node(j), net.cost[i][j], true});
            } else {
                res.arcs.push_back({net.x_node(j), net.z_node(i), -net.cost[i][j], false});
            }
        }
    }
    return res;
}

/// All-pairs shortest paths between the x-nodes of a residual graph, i.e.
/// the Kleene star of the optimal cell. Every x_j -> x_k route passes
/// through exactly one y- or z-node, so the graph is first condensed to d
/// nodes and closed with Floyd-Warshall.
inline std::vector<std::vector<double>> condensed_apsp(const ResidualGraph& res) {
    const std::size_t d = res.d;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> dist(d, std::vector<double>(d, inf));
    for (std::size_t j = 0; j < d; ++j) dist[j][j] = 0.0;

    // Group arcs by their middle (y or z) node.
    const std::size_t mids = res.n * 2;
    std::vector<std::vector<std::pair<std::size_t, double>>> into(mids), outof(mids);
    for (const auto& a : res.arcs) {
        if (a.from >= d) {
            outof[a.from - d].push_back({a.to, a.weight});
        } else {
            into[a.to - d].push_back({a.from, a.weight});
        }
    }
    for (std::size_t m = 0; m < mids; ++m) {
        for (const auto& [j, w_in] : into[m]) {
            for (const auto& [k, w_out] : outof[m]) {
                if (j == k) continue;
                dist[j][k] = std::min(dist[j][k], w_in + w_out);
            }
        }
    }

    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (dist[j][l] + dist[l][k] < dist[j][k])
                    dist[j][k] = dist[j][l] + dist[l][k];

    for (std::size_t j = 0; j < d; ++j) {
        if (dist[j][j] < -1e-9) {
            throw NegativeCycle("condensed_apsp: input flow is not optimal");
        }
        dist[j][j] = 0.0;
    }
    return dist;
}

namespace detail {

// Dinic blocking-flow max flow on a unit-capacity graph.
class Dinic {
public:
    explicit Dinic(std::size_t nodes) : adj_(nodes) {}

    void add_arc(std::size_t from, std::size_t to, int capacity) {
        adj_[from].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({static_cast<int>(to), capacity});
        adj_[to].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({static_cast<int>(from), 0});
    }

    int run(std::size_t s, std::size_t t) {
        int flow = 0;
        while (bfs(s, t)) {
            iter_.assign(adj_.size(), 0);
            while (int pushed = dfs(s, t, std::numeric_limits<int>::max())) flow += pushed;
        }
        return flow;
    }

private:
    struct Arc {
        int to;
        int capacity;
    };

    bool bfs(std::size_t s, std::size_t t) {
        level_.assign(adj_.size(), -1);
        std::queue<std::size_t> queue;
        level_[s] = 0;
        queue.push(s);
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop();
            for (int e : adj_[u]) {
                const Arc& a = arcs_[e];
                if (a.capacity > 0 && level_[a.to] == -1) {
                    level_[a.to] = level_[u] + 1;
                    queue.push(static_cast<std::size_t>(a.to));
                }
            }
        }
        return level_[t] != -1;
    }

    int dfs(std::size_t u, std::size_t t, int limit) {
        if (u == t) return limit;
        for (int& e = iter_[u]; e < static_cast<int>(adj_[u].size()); ++e) {
            const Arc& a = arcs_[adj_[u][e]];
            if (a.capacity <= 0 || level_[a.to] != level_[u] + 1) continue;
            const int pushed =
                dfs(static_cast<std::size_t>(a.to), t, std::min(limit, a.capacity));
            if (pushed > 0) {
                arcs_[adj_[u][e]].capacity -= pushed;
                arcs_[adj_[u][e] ^ 1].capacity += pushed;
                return pushed;
            }
        }
        return 0;
    }

    std::vector<std::vector<int>> adj_;
    std::vector<Arc> arcs_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

}  // namespace detail

struct OracleResult {
    int max_flow = 0;
    bool optimal = false;
};

/// Optimality oracle: keep only the D1 arcs selected by the type sets of x,
/// route unit supplies from the y-side to the z-side, and accept iff all n
/// units get through.
inline OracleResult max_flow_oracle(const SampleMatrix& V, const TropicalPoint& x,
                                    double eps_tie = kDefaultTieTolerance) {
    if (x.dim() != V.dim()) throw DimensionError("max_flow_oracle: dimension mismatch");
    const TypeData td = type_data(V, x, eps_tie);
    const std::size_t n = V.size();
    const std::size_t d = V.dim();

    // Node ids: source 0, y 1..n, x n+1..n+d, z n+d+1..n+d+n, sink last.
    const std::size_t source = 0;
    const std::size_t sink = 1 + 2 * n + d;
    detail::Dinic dinic(sink + 1);
    for (std::size_t i = 0; i < n; ++i) {
        dinic.add_arc(source, 1 + i, 1);
        dinic.add_arc(1 + n + d + i, sink, 1);
        for (std::size_t j : td.max_type[i]) dinic.add_arc(1 + i, 1 + n + j, 1);
        for (std::size_t j : td.min_type[i]) dinic.add_arc(1 + n + j, 1 + n + d + i, 1);
    }
    OracleResult out;
    out.max_flow = dinic.run(source, sink);
    out.optimal = out.max_flow == static_cast<int>(n);
    return out;
}

}  // namespace tropfw

#endif  // TROPFW_FLOW_HPP
