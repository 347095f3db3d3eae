#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "gaplab/gap_solver.hpp"
#include "gaplab/graph.hpp"
#include "gaplab/predict.hpp"
#include "gaplab/rng.hpp"

using namespace gaplab;

namespace {

Graph clique_with_tail(Vertex clique, Vertex tail) {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < clique; ++i)
        for (Vertex j = i + 1; j < clique; ++j) edges.emplace_back(i, j);
    for (Vertex k = 0; k < tail; ++k)
        edges.emplace_back(k == 0 ? 0 : clique + k - 1, clique + k);
    return build_graph(clique + tail, edges);
}

double residual_of(const Graph& g, double lambda, const std::vector<double>& v) {
    std::vector<double> lv(g.n);
    laplacian_apply(g, v, lv);
    double r = 0.0;
    for (Vertex i = 0; i < g.n; ++i) r += (lv[i] - lambda * v[i]) * (lv[i] - lambda * v[i]);
    return std::sqrt(r);
}

} // namespace

TEST_CASE("dense spectrum of small named graphs") {
    Graph tri = build_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    auto s = dense_spectrum(tri);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(s[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s[2] == doctest::Approx(3.0).epsilon(1e-12));

    std::vector<Edge> k4;
    for (Vertex i = 0; i < 4; ++i)
        for (Vertex j = i + 1; j < 4; ++j) k4.emplace_back(i, j);
    auto sk = dense_spectrum(build_graph(4, k4));
    for (int i = 1; i < 4; ++i) CHECK(sk[i] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("lambda2 of textbook graphs via both methods") {
    struct Case {
        Graph g;
        double want;
    };
    std::vector<Edge> c6;
    for (Vertex i = 0; i < 6; ++i)
        c6.emplace_back(std::min(i, (i + 1) % 6u), std::max(i, (i + 1) % 6u));
    Case cases[] = {
        {build_graph(4, {{0, 1}, {1, 2}, {2, 3}}), 2.0 - std::sqrt(2.0)}, // P4
        {build_graph(6, c6), 1.0},                                       // C6
        {build_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}), 1.0}, // star
    };
    for (const auto& c : cases) {
        CHECK(lambda2(c.g, 1e-10, SolveMethod::dense).lambda2 ==
              doctest::Approx(c.want).epsilon(1e-9));
        CHECK(lambda2(c.g, 1e-10, SolveMethod::iterative).lambda2 ==
              doctest::Approx(c.want).epsilon(1e-7));
    }
}

TEST_CASE("clique with a pendant 2-path, frozen reference value") {
    Graph g = clique_with_tail(20, 2);
    auto dense = lambda2(g, 1e-12, SolveMethod::dense);
    CHECK(dense.lambda2 == doctest::Approx(0.40389456189244421).epsilon(1e-9));
    CHECK(dense.method == "dense");
    CHECK(dense.kernel_dim == 1);

    auto iter = lambda2(g, 1e-10, SolveMethod::iterative);
    CHECK(iter.method == "iterative");
    CHECK(iter.lambda2 == doctest::Approx(dense.lambda2).epsilon(1e-8));
    CHECK(iter.iterations > 0);
    CHECK(iter.residual <= 1e-10 * (1.0 + iter.lambda2));
}

TEST_CASE("kernel dimension equals the component count") {
    Graph two_triangles = build_graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
    for (auto method : {SolveMethod::dense, SolveMethod::iterative}) {
        auto r = lambda2(two_triangles, 1e-10, method);
        CHECK(r.kernel_dim == 2);
        CHECK(r.lambda2 == doctest::Approx(3.0).epsilon(1e-8));
    }

    Graph sprinkled = generate_er(400, 1.5, RngSeed{12, 0}); // many components
    auto rd = lambda2(sprinkled, 1e-10, SolveMethod::dense);
    auto ri = lambda2(sprinkled, 1e-10, SolveMethod::iterative);
    CHECK(rd.kernel_dim == sprinkled.component_count());
    CHECK(ri.kernel_dim == sprinkled.component_count());
    CHECK(rd.lambda2 == doctest::Approx(ri.lambda2).epsilon(1e-8));
}

TEST_CASE("iterative solver tracks the dense oracle on random graphs") {
    Xoshiro256PlusPlus rng(RngSeed{2718, 0});
    for (int rep = 0; rep < 20; ++rep) {
        const Vertex n = 10 + (Vertex)rng.next_below(290);
        const double d = 0.5 + 4.0 * rng.next_double();
        Graph g = generate_er(n, std::min<double>(d, n), RngSeed{31415, (std::uint64_t)rep});
        if (g.edge_count() == 0) continue;
        auto dense = lambda2(g, 1e-10, SolveMethod::dense);
        auto iter = lambda2(g, 1e-10, SolveMethod::iterative);
        CHECK(std::abs(dense.lambda2 - iter.lambda2) <= 1e-8);
        CHECK(dense.kernel_dim == iter.kernel_dim);
    }
}

TEST_CASE("returned eigenvector reproduces the reported residual") {
    Graph g = clique_with_tail(20, 2);
    std::vector<double> v;
    auto dense = lambda2(g, 1e-12, SolveMethod::dense, 0, &v);
    REQUIRE(v.size() == g.n);
    CHECK(residual_of(g, dense.lambda2, v) <= std::max(1e-11, 2.0 * dense.residual));

    std::vector<double> w;
    auto iter = lambda2(g, 1e-10, SolveMethod::iterative, 0, &w);
    CHECK(residual_of(g, iter.lambda2, w) <= std::max(1e-12, 2.0 * iter.residual));
    double norm = 0.0;
    for (double x : w) norm += x * x;
    CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("solver input validation and stalls") {
    Graph empty = build_graph(5, {});
    CHECK_THROWS_AS(lambda2(empty), std::invalid_argument);

    Graph big = generate_er(2100, 3.0, RngSeed{5, 5});
    CHECK_THROWS_AS(lambda2(big, 1e-8, SolveMethod::dense), std::invalid_argument);

    // a two-vertex graph is fine iteratively
    Graph k2 = build_graph(2, {{0, 1}});
    CHECK(lambda2(k2, 1e-12, SolveMethod::iterative).lambda2 == doctest::Approx(2.0).epsilon(1e-10));

    // starving the iteration budget must surface the partial result
    Graph g = generate_er(1500, 4.0, RngSeed{777, 0});
    bool stalled = false;
    try {
        lambda2(g, 1e-13, SolveMethod::iterative, 8);
    } catch (const SolverStall& s) {
        stalled = true;
        CHECK(s.best.method == "iterative");
        CHECK(s.best.lambda2 > 0.0);
        CHECK(std::string(s.what()).find("budget") != std::string::npos);
    }
    CHECK(stalled);
}

TEST_CASE("merging two components cannot raise the gap above the old one") {
    // adding a bridge is a rank-one PSD update; with the kernel shrinking by
    // one, the new lambda2 interlaces below the previous smallest positive
    Xoshiro256PlusPlus rng(RngSeed{1618, 0});
    for (int rep = 0; rep < 15; ++rep) {
        const Vertex half = 20 + (Vertex)rng.next_below(60);
        Graph a = generate_er(half, 2.5, RngSeed{808, (std::uint64_t)(2 * rep)});
        Graph b = generate_er(half, 2.5, RngSeed{808, (std::uint64_t)(2 * rep + 1)});
        std::vector<Edge> edges;
        for (Vertex u = 0; u < half; ++u)
            for (Vertex w : a.adj(u))
                if (u < w) edges.emplace_back(u, w);
        for (Vertex u = 0; u < half; ++u)
            for (Vertex w : b.adj(u))
                if (u < w) edges.emplace_back(half + u, half + w);
        if (edges.empty()) continue;
        Graph before = build_graph(2 * half, edges);
        const double lam_before = lambda2(before, 1e-11, SolveMethod::dense).lambda2;
        edges.emplace_back(0, half); // bridge the two halves
        Graph after = build_graph(2 * half, edges);
        const double lam_after = lambda2(after, 1e-11, SolveMethod::dense).lambda2;
        CHECK(lam_after > 0.0);
        CHECK(lam_after <= lam_before + 1e-9);
    }
}

TEST_CASE("gap_report wires solve and prediction together") {
    Graph g = clique_with_tail(20, 2);
    GapReport rep = gap_report(g, 2, 1e-10);
    CHECK(rep.t_star == 2);
    CHECK(rep.prediction == doctest::Approx(predict_first_order(2)).epsilon(1e-15));
    CHECK(rep.deviation == doctest::Approx(std::abs(rep.solve.lambda2 - rep.prediction)));
    CHECK(rep.mean_degree ==
          doctest::Approx(2.0 * (double)g.edge_count() / g.n).epsilon(1e-15));
}

TEST_CASE("json serialization round-trips through a parser") {
    Graph g = clique_with_tail(10, 1);
    GapReport rep = gap_report(g, 1, 1e-10);
    auto parsed = nlohmann::json::parse(to_json(rep));
    CHECK(parsed["t_star"] == 1);
    CHECK(parsed["solve"]["method"] == "dense");
    CHECK(parsed["solve"]["kernel_dim"] == 1);
    CHECK(std::abs(parsed["solve"]["lambda2"].get<double>() - rep.solve.lambda2) == 0.0);
    CHECK(std::abs(parsed["prediction"].get<double>() - rep.prediction) == 0.0);

    auto solo = nlohmann::json::parse(to_json(rep.solve));
    CHECK(solo["iterations"] == 0);
}
