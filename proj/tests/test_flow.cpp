#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "test_util.hpp"
#include "tropfw/flow.hpp"
#include "tropfw/oracle.hpp"

using namespace tropfw;
using tropfw_test::golden_sample;

TEST_CASE("network topology") {
    const auto V = golden_sample();
    const FlowNetwork net = build_network(V);
    CHECK(net.node_count() == 11);
    CHECK(net.arc_count() == 24);
    CHECK(net.cost[0][2] == 5.0);
    CHECK(net.cost[3][1] == 3.0);

    const FlowNetwork tiny = build_network(SampleMatrix({TropicalPoint{0, 2}}));
    CHECK(tiny.node_count() == 4);
    CHECK(tiny.arc_count() == 4);
}

TEST_CASE("min cost flow on the worked instance") {
    const auto V = golden_sample();
    const FlowSolution sol = solve_mcf(build_network(V));
    CHECK(sol.cost == Catch::Approx(-12.0));

    // Binary with exactly one pi and one phi arc per sample point.
    for (std::size_t i = 0; i < 4; ++i) {
        int pis = 0, phis = 0;
        for (std::size_t j = 0; j < 3; ++j) {
            REQUIRE((sol.pi[i][j] == 0 || sol.pi[i][j] == 1));
            REQUIRE((sol.phi[j][i] == 0 || sol.phi[j][i] == 1));
            pis += sol.pi[i][j];
            phis += sol.phi[j][i];
        }
        CHECK(pis == 1);
        CHECK(phis == 1);
    }
    // Flow balance at every x node.
    for (std::size_t j = 0; j < 3; ++j) {
        int in = 0, out = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            in += sol.pi[i][j];
            out += sol.phi[j][i];
        }
        CHECK(in == out);
    }
}

TEST_CASE("dual covectors of the worked instance") {
    const auto V = golden_sample();
    const FlowSolution sol = solve_mcf(build_network(V));
    // tau(pi*) = (4, 1, 23), tau-bar(phi*) = (2, 3, 14) in 1-based labels.
    std::vector<std::set<std::size_t>> tau(3), tau_bar(3);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 4; ++i) {
            if (sol.pi[i][j]) tau[j].insert(i + 1);
            if (sol.phi[j][i]) tau_bar[j].insert(i + 1);
        }
    CHECK(tau == std::vector<std::set<std::size_t>>{{4}, {1}, {2, 3}});
    CHECK(tau_bar == std::vector<std::set<std::size_t>>{{2}, {3}, {1, 4}});
}

TEST_CASE("single point flow costs nothing") {
    const SampleMatrix V({TropicalPoint{0, 7, -3}});
    const FlowSolution sol = solve_mcf(build_network(V));
    CHECK(sol.cost == Catch::Approx(0.0));
}

TEST_CASE("mcf value matches the grid oracle") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto V = tropfw_test::random_integer_sample(rng, 2 + trial % 5, 3, 0, 10);
        const FlowSolution sol = solve_mcf(build_network(V));
        const GridSpec spec = GridSpec::bounding(V, 0.25);
        const GridResult gr = grid_minimize(V, spec);
        CHECK(-sol.cost <= gr.value + 1e-9);
        CHECK(gr.value <= -sol.cost + static_cast<double>(V.size()) * spec.spacing);
    }
}

TEST_CASE("residual graph of the worked instance") {
    const auto V = golden_sample();
    const FlowNetwork net = build_network(V);
    const FlowSolution sol = solve_mcf(net);
    const ResidualGraph res = residual(net, sol);
    CHECK(res.arcs.size() == net.arc_count());

    // Reversed arcs: x2->y1, x3->y2, x3->y3, x1->y4 and z2->x1, z3->x2,
    // z1->x3, z4->x3 (1-based labels).
    std::set<std::pair<std::size_t, std::size_t>> reversed;
    for (const auto& a : res.arcs)
        if (a.reversed) reversed.insert({a.from, a.to});
    const std::set<std::pair<std::size_t, std::size_t>> expected{
        {net.x_node(1), net.y_node(0)}, {net.x_node(2), net.y_node(1)},
        {net.x_node(2), net.y_node(2)}, {net.x_node(0), net.y_node(3)},
        {net.z_node(1), net.x_node(0)}, {net.z_node(2), net.x_node(1)},
        {net.z_node(0), net.x_node(2)}, {net.z_node(3), net.x_node(2)}};
    CHECK(reversed == expected);
}

TEST_CASE("zero flow leaves the network unchanged") {
    const auto V = golden_sample();
    const FlowNetwork net = build_network(V);
    FlowSolution zero;
    zero.pi.assign(4, std::vector<int>(3, 0));
    zero.phi.assign(3, std::vector<int>(4, 0));
    const ResidualGraph res = residual(net, zero);
    for (const auto& a : res.arcs) CHECK_FALSE(a.reversed);
    CHECK(res.arcs.size() == net.arc_count());
}

TEST_CASE("kleene star of the worked instance") {
    const auto V = golden_sample();
    const FlowNetwork net = build_network(V);
    const FlowSolution sol = solve_mcf(net);
    const auto C = condensed_apsp(residual(net, sol));
    const double expected[3][3] = {{0, 3, 5}, {-1, 0, 3}, {-2, -1, 0}};
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(C[j][k] == Catch::Approx(expected[j][k]).margin(1e-9));
}

TEST_CASE("kleene star of a single point") {
    const double a = 2.0, b = -5.0;
    const SampleMatrix V({TropicalPoint{0, a, b}});
    const FlowNetwork net = build_network(V);
    const auto C = condensed_apsp(residual(net, solve_mcf(net)));
    const double expected[3][3] = {{0, a, b}, {-a, 0, b - a}, {-b, a - b, 0}};
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(C[j][k] == Catch::Approx(expected[j][k]).margin(1e-9));
}

TEST_CASE("kleene star idempotence on random instances") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        const auto V = tropfw_test::random_integer_sample(rng, 2 + trial % 7, 2 + trial % 3);
        const FlowNetwork net = build_network(V);
        const auto C = condensed_apsp(residual(net, solve_mcf(net)));
        const std::size_t d = V.dim();
        for (std::size_t j = 0; j < d; ++j) {
            CHECK(C[j][j] == 0.0);
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t k = 0; k < d; ++k)
                    CHECK(C[j][k] <= C[j][l] + C[l][k] + 1e-9);
        }
    }
}

TEST_CASE("non-optimal flow triggers the negative cycle check") {
    // Swap the two pi assignments of an optimal two-point solution so the
    // flow stays feasible but stops being optimal.
    const SampleMatrix V({TropicalPoint{0, 0, 9}, TropicalPoint{0, 9, 0}});
    const FlowNetwork net = build_network(V);
    FlowSolution bad;
    bad.pi = {{0, 0, 1}, {0, 1, 0}};   // y1 buys its most expensive arc
    bad.phi = {{0, 0}, {0, 1}, {1, 0}};
    CHECK_THROWS_AS(condensed_apsp(residual(net, bad)), NegativeCycle);
}

TEST_CASE("max flow oracle on the worked instance") {
    const auto V = golden_sample();
    const OracleResult in = max_flow_oracle(V, TropicalPoint{0, 2, 3.5});
    CHECK(in.max_flow == 4);
    CHECK(in.optimal);

    const OracleResult out = max_flow_oracle(V, TropicalPoint{0, 2.5, 2.6});
    CHECK(out.max_flow == 3);
    CHECK_FALSE(out.optimal);
}

TEST_CASE("single point oracle") {
    const SampleMatrix V({TropicalPoint{0, 1, 2}});
    const OracleResult r = max_flow_oracle(V, TropicalPoint{0, 1, 2});
    CHECK(r.max_flow == 1);
    CHECK(r.optimal);
}

TEST_CASE("arc bound under general position") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + trial % 6, d = 2 + trial % 3;
        std::vector<TropicalPoint> rows;
        for (std::size_t i = 0; i < n; ++i) rows.push_back(tropfw_test::random_point(rng, d));
        const SampleMatrix V(std::move(rows));
        const auto x = tropfw_test::random_point(rng, d);
        const TypeData td = type_data(V, x);
        if (!general_position_arc_check(td, n, d)) continue;
        CHECK(td.max_arcs() + td.min_arcs() < 2 * (d + n));
        ++checked;
    }
    CHECK(checked > 400);
}
