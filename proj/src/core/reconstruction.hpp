#pragma once

#include <stdexcept>
#include <vector>

#include "core/sampling.hpp"
#include "core/spectral.hpp"

namespace dlsr {

/// Step size and decay factor, indexed from k = 1.
struct Schedule {
    enum class Kind { constant, diminishing };
    Kind kind = Kind::constant;
    double mu1 = 0.1;
    double beta1 = 0.0;

    double mu(int k) const {
        return kind == Kind::constant ? mu1 : mu1 / std::sqrt(static_cast<double>(k));
    }
    double beta(int k) const {
        return kind == Kind::constant ? beta1
                                      : beta1 / std::pow(static_cast<double>(k), 0.25);
    }
};

/// Per-sample-node history of estimates and measurements for the last
/// tau_max + 1 iterations, the state the delayed iteration reads from.
/// Indices below 0 report value 0 (pre-history convention); indices that
/// fell out of the ring are a contract violation.
class SampleHistory {
public:
    SampleHistory(int sample_count, int depth);

    /// Record estimate and truth at the sampled nodes for iteration k.
    /// Iterations must be pushed consecutively starting at 0.
    void push(int k, const Eigen::VectorXd& estimates, const Eigen::VectorXd& truths);

    double error(int sample_index, int k) const;  // truth - estimate, 0 for k < 0
    double estimate(int sample_index, int k) const;
    int latest() const { return latest_; }
    int depth() const { return depth_; }

private:
    int depth_;
    int latest_ = -1;
    Eigen::MatrixXd estimates_;  // depth x |S| ring
    Eigen::MatrixXd truths_;
    void check(int k) const;
};

/// Centralized iterative least-square reconstruction step:
/// f <- f + sum_u (f*(u) - f(u)) P_omega delta_u.
Signal ilsr_step(const Signal& f, const Signal& truth, const SamplingPlan& plan);

/// Delayed vector-form distributed step with step index k (0-based): each
/// vertex combines the per-sensor errors as of k - tau(u, v) with weights
/// from the precomputed frame elements, shrunk by 1 - mu_{k+1} beta_{k+1}.
Signal dlsr_closed_form_step(const Signal& f, const SampleHistory& history,
                             const SamplingPlan& plan, const Schedule& schedule, int k);

/// Fixed point of the decayed iteration: solves (beta I + T) f~ = T f* in
/// the in-band coefficient basis. f* must be bandlimited.
Signal biased_target(const Signal& f_star, const SamplingPlan& plan, double beta);

}  // namespace dlsr
