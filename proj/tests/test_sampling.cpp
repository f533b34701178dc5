#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

#include "core/sampling.hpp"

using namespace dlsr;

namespace {

Graph random_graph(int n, std::uint64_t seed, int k = 3) {
    for (std::uint64_t s = seed;; ++s) {
        Graph g = knn_geometric_graph(random_points(n, s), k);
        if (g.connected()) return g;
    }
}

}  // namespace

TEST_CASE("cutoff bound with empty complement returns the largest eigenvalue") {
    Graph g = random_graph(10, 1);
    Eigen::MatrixXd l = laplacian(g, LaplacianKind::normalized);
    std::vector<int> all(10);
    for (int i = 0; i < 10; ++i) all[i] = i;
    SpectralBasis b = eigendecompose(l);
    CHECK(cutoff_bound(l, all) == doctest::Approx(b.eigenvalues(9)));
}

TEST_CASE("cutoff bound certifies uniqueness") {
    // any omega <= the bound must make S a uniqueness set
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Graph g = random_graph(16, seed * 31);
        Eigen::MatrixXd l = laplacian(g, LaplacianKind::normalized);
        SpectralBasis b = eigendecompose(l);
        std::vector<int> s = random_sample_set(16, 6, seed);
        double bound = cutoff_bound(l, s);
        BandSpec band = make_band(b, bound);
        if (band.dim == 0) continue;
        Uniqueness u = verify_uniqueness(s, band, b);
        CHECK(u.unique);
        CHECK(u.witness_a > 1e-10);
    }
}

TEST_CASE("cutoff bound is monotone in the sample set") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = random_graph(14, 200 + trial);
        Eigen::MatrixXd l = laplacian(g, LaplacianKind::normalized);
        std::vector<int> small = random_sample_set(14, 4, rng());
        std::vector<int> big = small;
        for (int v = 0; v < 14; ++v)
            if (std::find(big.begin(), big.end(), v) == big.end() && rng() % 2) big.push_back(v);
        std::sort(big.begin(), big.end());
        CHECK(cutoff_bound(l, big) >= cutoff_bound(l, small) - 1e-9);
    }
}

TEST_CASE("uniqueness means in-band signals vanishing on S vanish everywhere") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = random_graph(15, 500 + trial);
        SamplingPlan plan = make_plan(g, LaplacianKind::normalized,
                                      random_sample_set(15, 6, trial), -1.0, DelayModel::hops);
        if (!plan.unique() || plan.band.dim == 0) continue;
        // least-squares in-band fit to zero samples must be zero
        Eigen::MatrixXd us(plan.sample_count(), plan.band.dim);
        for (int i = 0; i < plan.sample_count(); ++i)
            us.row(i) = plan.basis.eigenvectors.row(plan.sample_set[i]).head(plan.band.dim);
        Eigen::VectorXd zero = Eigen::VectorXd::Zero(plan.sample_count());
        Eigen::VectorXd coeffs = us.colPivHouseholderQr().solve(zero);
        CHECK(coeffs.norm() < 1e-8);
        // and the fit to any in-band signal's samples recovers it exactly
        Eigen::VectorXd truth(plan.band.dim);
        for (int i = 0; i < truth.size(); ++i) truth(i) = normal(rng);
        Eigen::VectorXd fit = us.colPivHouseholderQr().solve(us * truth);
        CHECK((fit - truth).norm() < 1e-8 * (1 + truth.norm()));
    }
}

TEST_CASE("random sample set is sorted, unique, in range, deterministic") {
    auto s = random_sample_set(100, 20, 7);
    CHECK(s.size() == 20);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    CHECK(s.front() >= 0);
    CHECK(s.back() < 100);
    CHECK(s == random_sample_set(100, 20, 7));
    CHECK(s != random_sample_set(100, 20, 8));
    CHECK_THROWS(random_sample_set(5, 6, 1));
    CHECK_THROWS(random_sample_set(5, 0, 1));
}

TEST_CASE("make_plan assembles consistent pieces") {
    Graph g = random_graph(20, 3);
    std::vector<int> s = {1, 4, 7, 9, 12, 15, 18};
    SamplingPlan plan = make_plan(g, LaplacianKind::normalized, s, -1.0, DelayModel::hops);
    CHECK(plan.n() == 20);
    CHECK(plan.sample_count() == 7);
    CHECK(plan.sample_set == s);
    CHECK(plan.frame.rows() == 20);
    CHECK(plan.frame.cols() == 7);
    CHECK(plan.tau.rows() == 7);
    CHECK(plan.tau.cols() == 20);
    CHECK(plan.bound_b <= 1.0 + 1e-9);
    // tau rows match BFS hop counts from each sampled vertex
    DelayMatrix d = hop_distances(g);
    int tau_max = 0;
    for (int i = 0; i < 7; ++i)
        for (int v = 0; v < 20; ++v) {
            CHECK(plan.tau(i, v) == d.tau(s[i], v));
            tau_max = std::max(tau_max, plan.tau(i, v));
        }
    CHECK(plan.tau_max == tau_max);
    // omega policy: band matches the cutoff bound
    Eigen::MatrixXd l = laplacian(g, LaplacianKind::normalized);
    CHECK(plan.band.omega == doctest::Approx(cutoff_bound(l, s)));
}

TEST_CASE("make_plan zero delay model") {
    Graph g = random_graph(12, 9);
    SamplingPlan plan = make_plan(g, LaplacianKind::normalized, {0, 3, 6, 9}, -1.0,
                                  DelayModel::zero);
    CHECK(plan.tau.cwiseAbs().maxCoeff() == 0);
    CHECK(plan.tau_max == 0);
}

TEST_CASE("make_plan explicit omega and input validation") {
    Graph g = random_graph(12, 13);
    SamplingPlan plan = make_plan(g, LaplacianKind::normalized, {0, 2, 4, 6, 8, 10}, 0.5,
                                  DelayModel::hops);
    CHECK(plan.band.omega == 0.5);
    CHECK_THROWS(make_plan(g, LaplacianKind::normalized, {0, 0, 2}, -1.0, DelayModel::hops));
    CHECK_THROWS(make_plan(g, LaplacianKind::normalized, {0, 12}, -1.0, DelayModel::hops));
    CHECK_THROWS(make_plan(g, LaplacianKind::normalized, {-1, 3}, -1.0, DelayModel::hops));
    CHECK_THROWS(make_plan(g, LaplacianKind::normalized, {}, -1.0, DelayModel::hops));
    Graph split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
    CHECK_THROWS(make_plan(split, LaplacianKind::normalized, {0, 2}, -1.0, DelayModel::hops));
}

TEST_CASE("plan JSON sidecar") {
    Graph g = random_graph(10, 19);
    SamplingPlan plan =
        make_plan(g, LaplacianKind::normalized, {1, 3, 5, 7}, -1.0, DelayModel::hops);
    const char* path = "plan_test.json";
    save_plan_json(plan, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("sample_set") != std::string::npos);
    CHECK(text.find("omega") != std::string::npos);
    CHECK(text.find("tau_max") != std::string::npos);
    std::remove(path);
}
