#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <random>

#include "core/graph.hpp"

using namespace dlsr;

namespace {

Graph triangle() {
    return Graph(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 0.5}});
}

Graph path4() {
    return Graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
}

}  // namespace

TEST_CASE("graph construction and accessors") {
    Graph g = triangle();
    CHECK(g.size() == 3);
    CHECK(g.edges().size() == 3);
    CHECK(g.adjacency()(0, 1) == 1.0);
    CHECK(g.adjacency()(1, 0) == 1.0);
    CHECK(g.adjacency()(2, 2) == 0.0);
    CHECK(g.degrees()(0) == doctest::Approx(1.5));
    CHECK(g.neighbors()[1] == std::vector<int>{0, 2});
    CHECK(g.connected());
}

TEST_CASE("graph rejects bad input") {
    CHECK_THROWS(Graph(2, {{0, 1, -1.0}}));          // nonpositive weight
    CHECK_THROWS(Graph(2, {{0, 0, 1.0}}));           // self loop
    CHECK_THROWS(Graph(2, {{0, 2, 1.0}}));           // vertex out of range
    CHECK_THROWS(Graph(3, {{0, 1, 1.0}, {1, 0, 1.0}}));  // duplicate edge
    CHECK_THROWS(Graph(0, {}));
}

TEST_CASE("disconnected graph detected") {
    Graph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    CHECK_FALSE(g.connected());
}

TEST_CASE("laplacian row sums and PSD") {
    Graph g = triangle();
    for (auto kind : {LaplacianKind::unnormalized, LaplacianKind::normalized}) {
        Eigen::MatrixXd l = laplacian(g, kind);
        CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
        if (kind == LaplacianKind::unnormalized) {
            // rows sum to zero
            CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() == doctest::Approx(0.0).epsilon(1e-12));
        }
        // x^T L x >= -eps for random x
        std::mt19937_64 rng(7);
        std::normal_distribution<double> normal;
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::VectorXd x(g.size());
            for (int i = 0; i < x.size(); ++i) x(i) = normal(rng);
            CHECK(x.dot(l * x) >= -1e-9 * x.squaredNorm());
        }
    }
}

TEST_CASE("unnormalized laplacian hand oracle") {
    // L = D - A for the triangle
    Graph g = triangle();
    Eigen::MatrixXd l = laplacian(g, LaplacianKind::unnormalized);
    CHECK(l(0, 0) == doctest::Approx(1.5));
    CHECK(l(1, 1) == doctest::Approx(3.0));
    CHECK(l(2, 2) == doctest::Approx(2.5));
    CHECK(l(0, 1) == doctest::Approx(-1.0));
    CHECK(l(0, 2) == doctest::Approx(-0.5));
}

TEST_CASE("normalized laplacian has unit diagonal and rejects isolated vertices") {
    Graph g = path4();
    Eigen::MatrixXd l = laplacian(g, LaplacianKind::normalized);
    for (int i = 0; i < 4; ++i) CHECK(l(i, i) == doctest::Approx(1.0));
    Graph iso(3, {{0, 1, 1.0}});
    CHECK_THROWS(laplacian(iso, LaplacianKind::normalized));
}

TEST_CASE("knn graph basic shape and weights") {
    // four collinear points, 1-NN: 0-1, 1-0 or 1-2 (tie broken to lower index 0), etc.
    std::vector<std::array<double, 2>> pts = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    Graph g = knn_geometric_graph(pts, 1);
    // ties at distance 1 break toward the lower index: 1 picks 0, 2 picks 1;
    // the union adds 2-3 because 3 picks 2, but 0-2 never appears
    CHECK(g.size() == 4);
    CHECK(g.adjacency()(0, 1) == doctest::Approx(1.0));  // 1/dist^2 = 1
    CHECK(g.adjacency()(1, 2) == doctest::Approx(1.0));
    CHECK(g.adjacency()(2, 3) == doctest::Approx(1.0));
    CHECK(g.adjacency()(0, 2) == 0.0);
    CHECK(g.adjacency()(0, 3) == 0.0);
    std::vector<std::array<double, 2>> close = {{0, 0}, {0.5, 0}, {2, 0}};
    Graph h = knn_geometric_graph(close, 1);
    CHECK(h.adjacency()(0, 1) == doctest::Approx(4.0));  // 1/0.25
}

TEST_CASE("knn symmetric union") {
    // point 2 is far: nobody picks it, but it picks 1 -> edge exists anyway
    std::vector<std::array<double, 2>> pts = {{0, 0}, {1, 0}, {10, 0}};
    Graph g = knn_geometric_graph(pts, 1);
    CHECK(g.adjacency()(1, 2) > 0.0);
}

TEST_CASE("knn independent of point ordering up to relabeling") {
    auto pts = random_points(30, 99);
    Graph g = knn_geometric_graph(pts, 3);
    // permute the points, then map edges back through the permutation
    std::vector<int> perm(30);
    for (int i = 0; i < 30; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), std::mt19937_64(5));
    std::vector<std::array<double, 2>> shuffled(30);
    for (int i = 0; i < 30; ++i) shuffled[perm[i]] = pts[i];
    Graph h = knn_geometric_graph(shuffled, 3);
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j)
            CHECK(g.adjacency()(i, j) == doctest::Approx(h.adjacency()(perm[i], perm[j])));
}

TEST_CASE("knn rejects duplicates and bad k") {
    std::vector<std::array<double, 2>> dup = {{0, 0}, {0, 0}, {1, 1}};
    CHECK_THROWS(knn_geometric_graph(dup, 1));
    std::vector<std::array<double, 2>> pts = {{0, 0}, {1, 1}};
    CHECK_THROWS(knn_geometric_graph(pts, 2));  // k >= n
    CHECK_THROWS(knn_geometric_graph(pts, 0));
}

TEST_CASE("random points deterministic per seed, in unit square") {
    auto a = random_points(50, 42);
    auto b = random_points(50, 42);
    auto c = random_points(50, 43);
    CHECK(a == b);
    CHECK(a != c);
    for (auto& p : a) {
        CHECK(p[0] >= 0.0);
        CHECK(p[0] < 1.0);
        CHECK(p[1] >= 0.0);
        CHECK(p[1] < 1.0);
    }
}

TEST_CASE("hop distances hand oracle and triangle inequality") {
    Graph g = path4();
    DelayMatrix d = hop_distances(g);
    CHECK(d.tau(0, 3) == 3);
    CHECK(d.tau(3, 0) == 3);
    CHECK(d.tau(1, 2) == 1);
    CHECK(d.tau(2, 2) == 0);
    CHECK(d.tau_max == 3);
    CHECK(d.max_from({1}) == 2);
    CHECK(d.max_from({0, 3}) == 3);

    auto pts = random_points(25, 3);
    Graph r = knn_geometric_graph(pts, 3);
    if (r.connected()) {
        DelayMatrix dr = hop_distances(r);
        for (int u = 0; u < 25; ++u)
            for (int v = 0; v < 25; ++v)
                for (int w = 0; w < 25; ++w)
                    CHECK(dr.tau(u, w) <= dr.tau(u, v) + dr.tau(v, w));
    }
}

TEST_CASE("hop distances rejects disconnected graphs") {
    Graph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    CHECK_THROWS(hop_distances(g));
}

TEST_CASE("edge list round trip") {
    Graph g = triangle();
    const char* path = "graph_roundtrip.txt";
    save_edge_list(g, path);
    Graph h = load_edge_list(path);
    CHECK(h.size() == g.size());
    CHECK(h.edges().size() == g.edges().size());
    CHECK((h.adjacency() - g.adjacency()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    std::remove(path);
    CHECK_THROWS(load_edge_list("no_such_file.txt"));
}
