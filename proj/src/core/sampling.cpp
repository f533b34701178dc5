#include "core/sampling.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace dlsr {

double cutoff_bound(const Eigen::MatrixXd& laplacian_matrix, const std::vector<int>& sample_set) {
    const int n = static_cast<int>(laplacian_matrix.rows());
    if (sample_set.empty())
        throw std::invalid_argument("cutoff_bound: empty sample set");
    std::vector<char> sampled(n, 0);
    for (int u : sample_set) {
        if (u < 0 || u >= n) throw std::invalid_argument("cutoff_bound: vertex out of range");
        sampled[u] = 1;
    }
    std::vector<int> complement;
    for (int v = 0; v < n; ++v)
        if (!sampled[v]) complement.push_back(v);

    if (complement.empty()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian_matrix);
        return solver.eigenvalues().maxCoeff();
    }

    Eigen::MatrixXd squared = laplacian_matrix * laplacian_matrix;
    Eigen::MatrixXd sub(complement.size(), complement.size());
    for (std::size_t i = 0; i < complement.size(); ++i)
        for (std::size_t j = 0; j < complement.size(); ++j)
            sub(i, j) = squared(complement[i], complement[j]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
    double sigma_sq = svd.singularValues().minCoeff();
    return std::sqrt(std::max(sigma_sq, 0.0));
}

Uniqueness verify_uniqueness(const std::vector<int>& sample_set, const BandSpec& band,
                             const SpectralBasis& basis) {
    if (sample_set.empty() || band.dim == 0) return {false, 0.0};
    auto [a, b] = frame_bounds(sample_set, band, basis);
    (void)b;
    return {a > 1e-10, a};
}

std::vector<int> random_sample_set(int n, int m, std::uint64_t seed) {
    if (m < 1 || m > n)
        throw std::invalid_argument("random_sample_set: need 1 <= m <= n");
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < m; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    std::vector<int> sample(pool.begin(), pool.begin() + m);
    std::sort(sample.begin(), sample.end());
    return sample;
}

SamplingPlan make_plan(const Graph& g, LaplacianKind kind, std::vector<int> sample_set,
                       double omega, DelayModel delays) {
    if (sample_set.empty())
        throw std::invalid_argument("make_plan: empty sample set");
    if (!g.connected())
        throw std::runtime_error("make_plan: graph is disconnected");

    Eigen::MatrixXd l = laplacian(g, kind);
    std::sort(sample_set.begin(), sample_set.end());
    if (std::adjacent_find(sample_set.begin(), sample_set.end()) != sample_set.end())
        throw std::invalid_argument("make_plan: duplicate vertex in sample set");
    if (sample_set.front() < 0 || sample_set.back() >= g.size())
        throw std::invalid_argument("make_plan: sample vertex out of range");
    if (omega < 0.0) omega = cutoff_bound(l, sample_set);

    SamplingPlan plan;
    plan.sample_set = std::move(sample_set);
    plan.basis = eigendecompose(l);
    plan.band = make_band(plan.basis, omega);
    plan.frame = frame_elements(plan.sample_set, plan.band, plan.basis);
    std::tie(plan.bound_a, plan.bound_b) = frame_bounds(plan.sample_set, plan.band, plan.basis);

    plan.tau = Eigen::MatrixXi::Zero(plan.sample_count(), g.size());
    if (delays == DelayModel::hops) {
        DelayMatrix dm = hop_distances(g);
        for (int i = 0; i < plan.sample_count(); ++i)
            for (int v = 0; v < g.size(); ++v) {
                plan.tau(i, v) = dm.tau(plan.sample_set[i], v);
                plan.tau_max = std::max(plan.tau_max, plan.tau(i, v));
            }
    }
    return plan;
}

void save_plan_json(const SamplingPlan& plan, const std::string& path) {
    nlohmann::json doc{
        {"sample_set", plan.sample_set},
        {"omega", plan.band.omega},
        {"band_dim", plan.band.dim},
        {"frame_bound_a", plan.bound_a},
        {"frame_bound_b", plan.bound_b},
        {"tau_max", plan.tau_max},
        {"unique", plan.unique()},
    };
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_plan_json: cannot open " + path);
    out << doc.dump(2) << "\n";
}

}  // namespace dlsr
