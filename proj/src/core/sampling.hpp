#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/spectral.hpp"

namespace dlsr {

/// Admissible cutoff for a sample set: sqrt of the smallest singular value
/// of the submatrix of L^2 restricted to the complement of S. Any omega at
/// or below the returned value makes S a uniqueness set. With an empty
/// complement the formula is undefined; the full spectrum is determined,
/// so the largest eigenvalue of L is returned.
double cutoff_bound(const Eigen::MatrixXd& laplacian_matrix, const std::vector<int>& sample_set);

struct Uniqueness {
    bool unique;
    double witness_a;  // lower frame bound used as evidence
};

Uniqueness verify_uniqueness(const std::vector<int>& sample_set, const BandSpec& band,
                             const SpectralBasis& basis);

/// m vertices drawn uniformly without replacement, returned ascending;
/// deterministic per seed.
std::vector<int> random_sample_set(int n, int m, std::uint64_t seed);

enum class DelayModel { hops, zero };

/// Everything a run needs about the sampling side: the set S, the cutoff,
/// precomputed frame elements, hop delays restricted to S, and the frame
/// bounds certifying uniqueness.
struct SamplingPlan {
    std::vector<int> sample_set;
    BandSpec band;
    SpectralBasis basis;
    Eigen::MatrixXd frame;  // n x |S|, column i = P_omega delta_{S[i]}
    Eigen::MatrixXi tau;    // |S| x n hop delays (zeroed under DelayModel::zero)
    int tau_max = 0;
    double bound_a = 0.0;
    double bound_b = 0.0;

    int n() const { return basis.size(); }
    int sample_count() const { return static_cast<int>(sample_set.size()); }
    bool unique() const { return bound_a > 1e-10; }
};

/// Assembles a plan for an explicit sample set. omega < 0 selects the
/// cutoff_bound policy. Rejects disconnected graphs.
SamplingPlan make_plan(const Graph& g, LaplacianKind kind, std::vector<int> sample_set,
                       double omega, DelayModel delays);

/// JSON sidecar with sample ids, omega, frame bounds and tau_max.
void save_plan_json(const SamplingPlan& plan, const std::string& path);

}  // namespace dlsr
