#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include "core/graph.hpp"
#include "core/spectral.hpp"

using namespace dlsr;

namespace {

SpectralBasis basis_of(const Graph& g, LaplacianKind kind = LaplacianKind::normalized) {
    return eigendecompose(laplacian(g, kind));
}

Signal random_inband(const BandSpec& band, const SpectralBasis& basis, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Signal coeffs = Signal::Zero(basis.size());
    for (int i = 0; i < band.dim; ++i) coeffs(i) = normal(rng);
    return igft(coeffs, basis);
}

}  // namespace

TEST_CASE("two-vertex laplacian eigendecomposition hand oracle") {
    // L = [[1,-1],[-1,1]]: eigenvalues 0 and 2, eigenvectors (1,1)/sqrt2 and (1,-1)/sqrt2
    Graph g(2, {{0, 1, 1.0}});
    SpectralBasis b = eigendecompose(laplacian(g, LaplacianKind::unnormalized));
    CHECK(b.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(b.eigenvalues(1) == doctest::Approx(2.0));
    double s = 1.0 / std::sqrt(2.0);
    CHECK(b.eigenvectors(0, 0) == doctest::Approx(s));
    CHECK(b.eigenvectors(1, 0) == doctest::Approx(s));
    // sign convention: first entry positive
    CHECK(b.eigenvectors(0, 1) == doctest::Approx(s));
    CHECK(b.eigenvectors(1, 1) == doctest::Approx(-s));
}

TEST_CASE("eigendecomposition reconstructs the matrix, values ascending") {
    auto pts = random_points(20, 11);
    Graph g = knn_geometric_graph(pts, 3);
    Eigen::MatrixXd l = laplacian(g, LaplacianKind::normalized);
    SpectralBasis b = eigendecompose(l);
    Eigen::MatrixXd rebuilt =
        b.eigenvectors * b.eigenvalues.asDiagonal() * b.eigenvectors.transpose();
    CHECK((rebuilt - l).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 1; i < b.size(); ++i) CHECK(b.eigenvalues(i) >= b.eigenvalues(i - 1));
    // orthonormal
    Eigen::MatrixXd gram = b.eigenvectors.transpose() * b.eigenvectors;
    CHECK((gram - Eigen::MatrixXd::Identity(b.size(), b.size())).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("eigendecompose rejects asymmetric input") {
    Eigen::MatrixXd m(2, 2);
    m << 1, 2, 3, 4;
    CHECK_THROWS(eigendecompose(m));
}

TEST_CASE("band membership is inclusive at the cutoff") {
    Graph g(2, {{0, 1, 1.0}});
    SpectralBasis b = eigendecompose(laplacian(g, LaplacianKind::unnormalized));
    CHECK(make_band(b, 2.0).dim == 2);   // lambda = 2 stays in band
    CHECK(make_band(b, 1.999).dim == 1);
    CHECK(make_band(b, -0.5).dim == 0);
    CHECK(make_band(b, 0.0).dim == 1);
}

TEST_CASE("gft/igft round trip and Parseval") {
    auto pts = random_points(15, 4);
    Graph g = knn_geometric_graph(pts, 3);
    SpectralBasis b = basis_of(g);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> normal;
    Signal f(15);
    for (int i = 0; i < 15; ++i) f(i) = normal(rng);
    Signal coeffs = gft(f, b);
    CHECK((igft(coeffs, b) - f).norm() < 1e-10);
    CHECK(coeffs.norm() == doctest::Approx(f.norm()));
}

TEST_CASE("projections are orthogonal, idempotent, and sum to the input") {
    auto pts = random_points(18, 21);
    Graph g = knn_geometric_graph(pts, 3);
    SpectralBasis b = basis_of(g);
    BandSpec band = make_band(b, b.eigenvalues(6));
    std::mt19937_64 rng(9);
    std::normal_distribution<double> normal;
    Signal f(18);
    for (int i = 0; i < 18; ++i) f(i) = normal(rng);
    Signal low = project(f, band, b, Side::low);
    Signal high = project(f, band, b, Side::high);
    CHECK((low + high - f).norm() == doctest::Approx(0.0));  // exact complement
    CHECK(std::abs(low.dot(high)) < 1e-9);
    CHECK((project(low, band, b, Side::low) - low).norm() < 1e-10);
    CHECK(project(low, band, b, Side::high).norm() < 1e-10);
    // low-pass kills out-of-band coefficients
    Signal coeffs = gft(low, b);
    for (int i = band.dim; i < b.size(); ++i) CHECK(std::abs(coeffs(i)) < 1e-10);
}

TEST_CASE("projector depends only on the span under eigenvalue multiplicity") {
    // complete graph K4: unnormalized eigenvalues {0, 4, 4, 4}
    Graph g(4, {{0, 1, 1.}, {0, 2, 1.}, {0, 3, 1.}, {1, 2, 1.}, {1, 3, 1.}, {2, 3, 1.}});
    SpectralBasis b = eigendecompose(laplacian(g, LaplacianKind::unnormalized));
    BandSpec band = make_band(b, 1.0);  // just the constant eigenvector
    Eigen::MatrixXd p(4, 4);
    for (int j = 0; j < 4; ++j) {
        Signal delta = Signal::Zero(4);
        delta(j) = 1.0;
        p.col(j) = project(delta, band, b, Side::low);
    }
    // projector onto constants = (1/4) * ones
    CHECK((p - Eigen::MatrixXd::Constant(4, 4, 0.25)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("frame elements are lowpass impulses") {
    auto pts = random_points(16, 13);
    Graph g = knn_geometric_graph(pts, 3);
    SpectralBasis b = basis_of(g);
    BandSpec band = make_band(b, b.eigenvalues(5));
    std::vector<int> s = {2, 7, 11};
    Eigen::MatrixXd elems = frame_elements(s, band, b);
    CHECK(elems.rows() == 16);
    CHECK(elems.cols() == 3);
    for (int i = 0; i < 3; ++i) {
        Signal delta = Signal::Zero(16);
        delta(s[i]) = 1.0;
        CHECK((elems.col(i) - project(delta, band, b, Side::low)).norm() < 1e-12);
    }
}

TEST_CASE("frame operator self-adjoint and frame inequality on the band") {
    auto pts = random_points(20, 17);
    Graph g = knn_geometric_graph(pts, 3);
    SpectralBasis b = basis_of(g);
    BandSpec band = make_band(b, b.eigenvalues(7));
    std::vector<int> s = {0, 3, 4, 8, 9, 12, 15, 17, 18, 19};
    Eigen::MatrixXd elems = frame_elements(s, band, b);
    auto [a, bb] = frame_bounds(s, band, b);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        Signal f = random_inband(band, b, rng);
        Signal g2 = random_inband(band, b, rng);
        Signal tf = frame_operator_apply(f, elems, s);
        Signal tg = frame_operator_apply(g2, elems, s);
        CHECK(std::abs(tf.dot(g2) - f.dot(tg)) < 1e-9 * (1 + f.norm() * g2.norm()));
        double quad = f.dot(tf);
        CHECK(quad >= a * f.squaredNorm() - 1e-9);
        CHECK(quad <= bb * f.squaredNorm() + 1e-9);
        // the inner-product form of T agrees on the band
        Signal alt = Signal::Zero(20);
        for (std::size_t i = 0; i < s.size(); ++i) alt += f.dot(elems.col(i)) * elems.col(i);
        CHECK((alt - tf).norm() < 1e-9 * (1 + f.norm()));
    }
}

TEST_CASE("full sampling gives a tight frame with A = B = 1") {
    auto pts = random_points(12, 23);
    Graph g = knn_geometric_graph(pts, 3);
    SpectralBasis b = basis_of(g);
    BandSpec band = make_band(b, b.eigenvalues(4));
    std::vector<int> all(12);
    for (int i = 0; i < 12; ++i) all[i] = i;
    auto [a, bb] = frame_bounds(all, band, b);
    CHECK(a == doctest::Approx(1.0));
    CHECK(bb == doctest::Approx(1.0));
    CHECK(frame_operator_norm(all, band, b) == doctest::Approx(1.0));
}

TEST_CASE("upper frame bound and operator norm never exceed 1") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 15; ++trial) {
        auto pts = random_points(14, 100 + trial);
        Graph g = knn_geometric_graph(pts, 3);
        SpectralBasis b = basis_of(g);
        BandSpec band = make_band(b, b.eigenvalues(static_cast<int>(rng() % 10) + 1));
        std::vector<int> s;
        for (int v = 0; v < 14; ++v)
            if (rng() % 2) s.push_back(v);
        if (s.empty()) s.push_back(0);
        auto [a, bb] = frame_bounds(s, band, b);
        CHECK(bb <= 1.0 + 1e-9);
        CHECK(a >= -1e-12);
        CHECK(frame_operator_norm(s, band, b) <= 1.0 + 1e-9);
    }
}

TEST_CASE("spectrum CSV export") {
    Graph g(2, {{0, 1, 1.0}});
    SpectralBasis b = eigendecompose(laplacian(g, LaplacianKind::unnormalized));
    const char* path = "spectrum_test.csv";
    save_spectrum_csv(b, path);
    std::FILE* f = std::fopen(path, "r");
    REQUIRE(f != nullptr);
    char line[256];
    CHECK(std::fgets(line, sizeof line, f) != nullptr);  // header
    CHECK(std::fgets(line, sizeof line, f) != nullptr);  // eigenvalue row
    std::fclose(f);
    std::remove(path);
}
