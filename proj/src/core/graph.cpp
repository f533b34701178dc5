#include "core/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dlsr {

Graph::Graph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
    if (n <= 0) throw std::invalid_argument("graph: vertex count must be positive");
    adjacency_ = Eigen::MatrixXd::Zero(n, n);
    neighbors_.resize(n);
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (e.u == e.v)
            throw std::invalid_argument("graph: self loops are not allowed");
        if (!(e.w > 0.0))
            throw std::invalid_argument("graph: edge weight must be positive");
        if (adjacency_(e.u, e.v) != 0.0)
            throw std::invalid_argument("graph: duplicate edge");
        adjacency_(e.u, e.v) = e.w;
        adjacency_(e.v, e.u) = e.w;
        neighbors_[e.u].push_back(e.v);
        neighbors_[e.v].push_back(e.u);
    }
    for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

Eigen::VectorXd Graph::degrees() const {
    return adjacency_.rowwise().sum();
}

bool Graph::connected() const {
    std::vector<char> seen(n_, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int count = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : neighbors_[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                queue.push_back(w);
            }
        }
    }
    return count == n_;
}

Eigen::MatrixXd laplacian(const Graph& g, LaplacianKind kind) {
    const Eigen::MatrixXd& a = g.adjacency();
    Eigen::VectorXd d = g.degrees();
    Eigen::MatrixXd l = Eigen::MatrixXd(d.asDiagonal()) - a;
    if (kind == LaplacianKind::unnormalized) return l;
    for (int i = 0; i < d.size(); ++i) {
        if (d(i) <= 0.0)
            throw std::invalid_argument(
                "laplacian: normalized kind undefined for isolated vertex " + std::to_string(i));
    }
    Eigen::VectorXd dinv = d.array().rsqrt();
    return dinv.asDiagonal() * l * dinv.asDiagonal();
}

Graph knn_geometric_graph(const std::vector<std::array<double, 2>>& points, int k) {
    const int n = static_cast<int>(points.size());
    if (k <= 0 || k >= n)
        throw std::invalid_argument("knn_geometric_graph: need 0 < k < number of points");

    auto dist2 = [&](int i, int j) {
        double dx = points[i][0] - points[j][0];
        double dy = points[i][1] - points[j][1];
        return dx * dx + dy * dy;
    };

    // Symmetric union of each point's k nearest neighbors.
    std::vector<std::vector<char>> selected(n, std::vector<char>(n, 0));
    std::vector<std::pair<double, int>> cand;
    for (int i = 0; i < n; ++i) {
        cand.clear();
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double d2 = dist2(i, j);
            if (d2 == 0.0)
                throw std::invalid_argument("knn_geometric_graph: duplicate points " +
                                            std::to_string(i) + " and " + std::to_string(j));
            cand.emplace_back(d2, j);
        }
        std::sort(cand.begin(), cand.end());
        for (int t = 0; t < k; ++t) selected[i][cand[t].second] = 1;
    }

    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (selected[i][j] || selected[j][i])
                edges.push_back({i, j, 1.0 / dist2(i, j)});
    return Graph(n, std::move(edges));
}

std::vector<std::array<double, 2>> random_points(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::array<double, 2>> pts(n);
    for (auto& p : pts) {
        p[0] = unif(rng);
        p[1] = unif(rng);
    }
    return pts;
}

int DelayMatrix::max_from(const std::vector<int>& sources) const {
    int m = 0;
    for (int u : sources)
        for (int v = 0; v < tau.cols(); ++v) m = std::max(m, tau(u, v));
    return m;
}

DelayMatrix hop_distances(const Graph& g) {
    const int n = g.size();
    DelayMatrix dm;
    dm.tau = Eigen::MatrixXi::Constant(n, n, -1);
    for (int s = 0; s < n; ++s) {
        dm.tau(s, s) = 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : g.neighbors()[v]) {
                if (dm.tau(s, w) < 0) {
                    dm.tau(s, w) = dm.tau(s, v) + 1;
                    queue.push_back(w);
                }
            }
        }
        for (int v = 0; v < n; ++v) {
            if (dm.tau(s, v) < 0)
                throw std::runtime_error("hop_distances: graph disconnected, no path " +
                                         std::to_string(s) + " -> " + std::to_string(v));
            dm.tau_max = std::max(dm.tau_max, dm.tau(s, v));
        }
    }
    return dm;
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_edge_list: cannot open " + path);
    out << "n " << g.size() << "\n";
    out.precision(17);
    for (const Edge& e : g.edges()) out << e.u << " " << e.v << " " << e.w << "\n";
    if (!out) throw std::runtime_error("save_edge_list: write failed for " + path);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_edge_list: cannot open " + path);
    std::string tag;
    int n = 0;
    if (!(in >> tag >> n) || tag != "n")
        throw std::runtime_error("load_edge_list: missing 'n <count>' header in " + path);
    std::vector<Edge> edges;
    Edge e;
    while (in >> e.u >> e.v >> e.w) edges.push_back(e);
    return Graph(n, std::move(edges));
}

}  // namespace dlsr
