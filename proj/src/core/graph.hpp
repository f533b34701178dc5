#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dlsr {

struct Edge {
    int u;
    int v;
    double w;
};

/// Weighted undirected graph with dense vertex ids 0..n-1.
/// Immutable after construction; the adjacency matrix is symmetric with
/// zero diagonal and strictly positive stored weights.
class Graph {
public:
    Graph(int n, std::vector<Edge> edges);

    int size() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Eigen::MatrixXd& adjacency() const { return adjacency_; }
    Eigen::VectorXd degrees() const;
    const std::vector<std::vector<int>>& neighbors() const { return neighbors_; }
    bool connected() const;

private:
    int n_;
    std::vector<Edge> edges_;
    Eigen::MatrixXd adjacency_;
    std::vector<std::vector<int>> neighbors_;
};

enum class LaplacianKind { unnormalized, normalized };

/// L = D - A, or the degree-normalized D^{-1/2} L D^{-1/2}.
/// The normalized kind rejects graphs with isolated vertices.
Eigen::MatrixXd laplacian(const Graph& g, LaplacianKind kind);

/// Symmetric union k-nearest-neighbor graph over 2-D points with
/// weights 1/dist^2. Distance ties break toward the lower point index.
/// Rejects duplicate points.
Graph knn_geometric_graph(const std::vector<std::array<double, 2>>& points, int k);

/// n points drawn uniformly from the unit square, deterministic per seed.
std::vector<std::array<double, 2>> random_points(int n, std::uint64_t seed);

/// Unweighted shortest-path hop counts between every vertex pair.
struct DelayMatrix {
    Eigen::MatrixXi tau;
    int tau_max = 0;

    /// Largest delay from any vertex in `sources` to any vertex.
    int max_from(const std::vector<int>& sources) const;
};

/// BFS hop distances; throws naming an unreachable pair if disconnected.
DelayMatrix hop_distances(const Graph& g);

/// Edge-list text format: header "n <count>", then one "u v w" per line.
void save_edge_list(const Graph& g, const std::string& path);
Graph load_edge_list(const std::string& path);

}  // namespace dlsr
